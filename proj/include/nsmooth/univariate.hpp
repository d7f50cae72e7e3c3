#ifndef NSMOOTH_UNIVARIATE_HPP
#define NSMOOTH_UNIVARIATE_HPP

#include "nsmooth/rational.hpp"

#include <utility>
#include <vector>

namespace nsmooth {

// Dense univariate polynomial over Q, coefficients from degree 0 upwards.
// The zero polynomial has no coefficients.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coefficients);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;

    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly&, const UPoly&) = default;

private:
    void trim();
    std::vector<Rational> c_;
};

// Quotient and remainder; divisor must be nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

// Monic gcd.
UPoly gcd(UPoly a, UPoly b);

// Yun's algorithm: factors[i] is the product of the irreducible factors of
// multiplicity i+1 (monic, possibly constant 1).
std::vector<UPoly> square_free_decomposition(const UPoly& f);

// Sturm chain g, g', -rem(...), ... of the square-free part g of f.
std::vector<UPoly> sturm_sequence(const UPoly& f);

// Number of distinct real roots in (lo, hi], lo < hi, via sign variations.
int count_roots(const std::vector<UPoly>& sturm, const Rational& lo, const Rational& hi);

// Number of distinct roots in (0, +inf).
int count_positive_roots(const UPoly& f);

// Approximate locations of the distinct positive roots, ascending.
std::vector<double> positive_roots(const UPoly& f, double tolerance = 1e-12);

}  // namespace nsmooth

#endif
