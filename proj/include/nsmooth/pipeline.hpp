#ifndef NSMOOTH_PIPELINE_HPP
#define NSMOOTH_PIPELINE_HPP

#include "nsmooth/newton.hpp"

#include <stdexcept>
#include <vector>

namespace nsmooth {

// sigma[i] is the variable sitting at position i of the ordering region
// t_sigma[0] < t_sigma[1] < ... (so u_{i+1} = t_{sigma[i]+1}). 0-based.
using Permutation = std::vector<std::size_t>;

class NonIntegrableError : public std::domain_error {
    using std::domain_error::domain_error;
};

// For one ordering region: the substitution trail from S* down to the
// Lebesgue sublevel problem for S***, and the growth exponents it yields.
struct PermutationRecord {
    Permutation sigma;
    std::vector<std::size_t> block_maxima;  // 0-based u positions
    std::vector<Rational> beta;
    std::vector<ExponentVector> W;  // y-coordinates
    std::vector<ExponentVector> X;  // z-coordinates
    StarFunction s_triple_star;     // minimal vertex set of the X exponents
    Rational d_l;                   // Newton distance of S***
    Rational a_l;                   // 1 / d_l
    int log_dim = 0;                // dim of the minimal face at the diagonal point
    int d_l_log = 0;                // n - 1 - log_dim
    bool diagonal_face_compact = true;

    bool operator==(const PermutationRecord&) const = default;
};

struct ExponentResult {
    Rational a0;
    int d0 = 0;
    std::vector<PermutationRecord> per_permutation;
    bool noncompact_flag = false;
};

// Position (in u-order) of the largest variable of each block.
std::vector<std::size_t> block_maxima(const Permutation& sigma, const BlockStructure& b);

// beta_j = sum_{k : b_k <= j} alpha_k - j (0-based j): the Jacobian
// prod y_j^j of u_k = prod_{i>=k} y_i combined with the pulled-back weight.
// Throws NonIntegrableError if some beta_j >= 1.
std::vector<Rational> beta_exponents(const Permutation& sigma, const BlockStructure& b);

struct SubstitutedStar {
    std::vector<ExponentVector> W;
    std::vector<ExponentVector> X;
    StarFunction star;
};

SubstitutedStar substituted_star(const StarFunction& star, const Permutation& sigma, const std::vector<Rational>& beta);

PermutationRecord analyze_permutation(const StarFunction& star, const BlockStructure& b, const Permutation& sigma);

ExponentResult aggregate_exponents(std::vector<PermutationRecord> records);

// All n! orderings in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

// Full pipeline; permutation records are computed in parallel and gathered in
// lexicographic permutation order.
ExponentResult compute_exponents(const StarFunction& star, const BlockStructure& b);

// One ordering after another on the calling thread.
ExponentResult compute_exponents_serial(const StarFunction& star, const BlockStructure& b);

}  // namespace nsmooth

#endif
