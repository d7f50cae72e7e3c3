#ifndef NSMOOTH_TEST_HELPERS_HPP
#define NSMOOTH_TEST_HELPERS_HPP

#include "nsmooth/newton.hpp"
#include "nsmooth/polynomial.hpp"
#include "nsmooth/univariate.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline nsmooth::Polynomial P(const std::string& text, std::size_t n)
{
    return nsmooth::parse_polynomial(text, n);
}

inline nsmooth::Rational Q(const std::string& text)
{
    return nsmooth::parse_rational(text);
}

inline nsmooth::ExponentVector E(std::initializer_list<const char*> entries)
{
    nsmooth::ExponentVector v;
    for (auto e : entries)
        v.push_back(nsmooth::parse_rational(e));
    return v;
}

inline nsmooth::ExponentVector Ei(std::initializer_list<long> entries)
{
    nsmooth::ExponentVector v;
    for (auto e : entries)
        v.push_back(nsmooth::Rational(e));
    return v;
}

// Polynomial from integer exponent rows, all coefficients one.
inline nsmooth::Polynomial from_exponents(std::size_t n, const std::vector<std::vector<long>>& rows)
{
    std::vector<nsmooth::Term> terms;
    for (const auto& r : rows) {
        nsmooth::ExponentVector e;
        for (auto x : r)
            e.push_back(nsmooth::Rational(x));
        terms.push_back({nsmooth::Rational(1), e});
    }
    return nsmooth::Polynomial(n, terms);
}

// Random polynomial with integer exponents in [0, max_exp], no constant or
// linear terms.
inline nsmooth::Polynomial random_phase(std::mt19937_64& rng, std::size_t n, int terms, int max_exp)
{
    std::uniform_int_distribution<int> e(0, max_exp), c(-5, 5);
    std::vector<nsmooth::Term> out;
    while (static_cast<int>(out.size()) < terms) {
        nsmooth::ExponentVector v(n);
        long deg = 0;
        for (auto& x : v) {
            x = e(rng);
            deg += x.get_num().get_si();
        }
        int coef = c(rng);
        bool dup = false;
        for (const auto& t : out)
            dup = dup || t.exponent == v;
        if (deg < 2 || coef == 0 || dup)
            continue;
        out.push_back({nsmooth::Rational(coef), v});
    }
    return nsmooth::Polynomial(n, out);
}

// Homogenize u(w) of degree k into sum c_i t1^(k-i) t2^i, times t1^p t2^q.
inline nsmooth::Polynomial homogenize(const nsmooth::UPoly& u, long p, long q)
{
    std::vector<nsmooth::Term> terms;
    long k = u.degree();
    for (long i = 0; i <= k; ++i)
        terms.push_back({u.coefficients()[static_cast<std::size_t>(i)], Ei({k - i + p, i + q})});
    return nsmooth::Polynomial(2, terms);
}

// a - b w, which homogenizes to a t1 - b t2.
inline nsmooth::UPoly linear_form(const nsmooth::Rational& a, const nsmooth::Rational& b)
{
    return nsmooth::UPoly({a, -b});
}

inline nsmooth::UPoly power(const nsmooth::UPoly& u, int k)
{
    nsmooth::UPoly out({nsmooth::Rational(1)});
    for (int i = 0; i < k; ++i)
        out = out * u;
    return out;
}

struct CatalogEntry {
    const char* text;
    std::size_t n;
};

// Phases with all alphas zero used by several identity checks.
inline std::vector<CatalogEntry> catalog()
{
    return {
        {"t1^2 + t2^2", 2},
        {"t1^2*t2^2", 2},
        {"t1^4 + t1*t2 + t2^4", 2},
        {"t1^2 - 2*t1*t2 + t2^2 + t1^5", 2},
        {"t1^2*t2^4", 2},
        {"t1^4 + t2^4", 2},
        {"t1^2*t2 + t1^6 + t2^6", 2},
        {"t1^3 - 3*t1^2*t2 + 3*t1*t2^2 - t2^3 + t1^7", 2},
        {"t1^2 + t2^2 + t3^2", 3},
        {"t1*t2*t3 + t1^4 + t2^4 + t3^4", 3},
        {"t1^2*t2^2 + t3^2", 3},
        {"t1^2 + t2^3 + t3^5", 3},
    };
}

}  // namespace testing

#endif
