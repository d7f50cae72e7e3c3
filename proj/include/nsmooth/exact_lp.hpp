#ifndef NSMOOTH_EXACT_LP_HPP
#define NSMOOTH_EXACT_LP_HPP

#include "nsmooth/rational.hpp"

#include <vector>

namespace nsmooth {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Rank over Q by fraction-exact Gaussian elimination.
std::size_t exact_rank(RationalMatrix rows);

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational objective;
    std::vector<Rational> x;
};

// minimize c.x subject to A x = b, x >= 0. Two-phase tableau simplex with
// Bland's rule, so it terminates on degenerate problems. Dense; intended for
// the few-dozen-variable problems of Newton polyhedron membership.
LpResult solve_lp(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c);

}  // namespace nsmooth

#endif
