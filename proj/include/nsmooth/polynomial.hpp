#ifndef NSMOOTH_POLYNOMIAL_HPP
#define NSMOOTH_POLYNOMIAL_HPP

#include "nsmooth/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsmooth {

// Exponents are nonnegative rationals; rational entries appear after the
// y -> z substitutions of the growth-exponent pipeline.
using ExponentVector = std::vector<Rational>;

struct Term {
    Rational coefficient;
    ExponentVector exponent;

    bool operator==(const Term&) const = default;
};

// Sparse polynomial with exact coefficients. Terms are kept sorted
// lexicographically by exponent, merged, and free of zero coefficients, so
// operator== is structural equality.
class Polynomial {
public:
    explicit Polynomial(std::size_t dimension);
    Polynomial(std::size_t dimension, std::vector<Term> terms);

    std::size_t dimension() const { return dimension_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::vector<ExponentVector> exponents() const;

    bool operator==(const Polynomial&) const = default;

private:
    std::size_t dimension_;
    std::vector<Term> terms_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class DomainError : public std::domain_error {
    using std::domain_error::domain_error;
};

// Grammar: terms separated by '+'/'-'; a term is an optional coefficient
// (integer or p/q) followed by factors t<i>[^e], joined by '*' or spaces.
Polynomial parse_polynomial(std::string_view text, std::size_t n);

// Inverse of parse_polynomial on canonical polynomials.
std::string to_string(const Polynomial& p);

// 0^0 = 1. A negative coordinate may only carry integer exponents.
double evaluate_polynomial(const Polynomial& p, std::span<const double> point);

// Sum of |t^v| over the vertices of a Newton polyhedron.
struct StarFunction {
    std::size_t dimension = 0;
    std::vector<ExponentVector> vertex_exponents;

    bool operator==(const StarFunction&) const = default;
};

double evaluate_star(const StarFunction& s, std::span<const double> point);

// Partition of {0..n-1} into m blocks with kernel singularity exponents.
// The constructor enforces the partition; the bounds 0 <= alpha_k < l_k are
// reported by validate_input so that bad exponents surface as a report.
class BlockStructure {
public:
    BlockStructure(std::size_t n, std::vector<std::vector<std::size_t>> blocks, std::vector<Rational> alphas);

    // One block per variable, all alphas zero.
    static BlockStructure singletons(std::size_t n);

    std::size_t dimension() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    const std::vector<Rational>& alphas() const { return alphas_; }
    std::size_t block_size(std::size_t k) const { return blocks_[k].size(); }
    // Block index of variable i.
    std::size_t block_of(std::size_t i) const { return owner_[i]; }

private:
    std::size_t n_;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<Rational> alphas_;
    std::vector<std::size_t> owner_;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

ValidationReport validate_input(const Polynomial& p, const BlockStructure& b);

}  // namespace nsmooth

#endif
