#include "nsmooth/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsmooth {

UPoly::UPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients))
{
    trim();
}

void UPoly::trim()
{
    while (!c_.empty() && sgn(c_.back()) == 0)
        c_.pop_back();
}

Rational UPoly::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

double UPoly::operator()(double x) const
{
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + to_double(*it);
    return acc;
}

UPoly UPoly::derivative() const
{
    if (c_.size() <= 1)
        return UPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<long>(i);
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const
{
    if (is_zero())
        return *this;
    std::vector<Rational> m = c_;
    Rational lead = c_.back();
    for (auto& x : m)
        x /= lead;
    return UPoly(std::move(m));
}

UPoly operator-(const UPoly& a, const UPoly& b)
{
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        out[i] -= b.c_[i];
    return UPoly(std::move(out));
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return UPoly();
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            out[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
{
    if (b.is_zero())
        throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> rem = a.coefficients();
    const auto& d = b.coefficients();
    if (a.degree() < b.degree())
        return {UPoly(), a};
    std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rational factor = rem[static_cast<std::size_t>(k + b.degree())] / d.back();
        quot[static_cast<std::size_t>(k)] = factor;
        for (std::size_t j = 0; j < d.size(); ++j)
            rem[static_cast<std::size_t>(k) + j] -= factor * d[j];
    }
    return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<UPoly> square_free_decomposition(const UPoly& f)
{
    if (f.degree() < 1)
        return {};
    UPoly df = f.derivative();
    UPoly a = gcd(f, df);
    UPoly b = divmod(f, a).first;
    UPoly c = divmod(df, a).first;
    UPoly d = c - b.derivative();
    std::vector<UPoly> factors;
    while (b.degree() >= 1) {
        UPoly ai = gcd(b, d);
        factors.push_back(ai);
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = c - b.derivative();
    }
    return factors;
}

std::vector<UPoly> sturm_sequence(const UPoly& f)
{
    // chain of the square-free part, so a repeated root at an endpoint
    // does not zero out every member
    UPoly g = f;
    if (f.degree() > 0)
        g = divmod(f, gcd(f, f.derivative())).first;
    std::vector<UPoly> seq{g, g.derivative()};
    while (!seq.back().is_zero()) {
        UPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero())
            break;
        seq.push_back(UPoly() - r);
    }
    if (seq.back().is_zero())
        seq.pop_back();
    return seq;
}

namespace {

int variations(const std::vector<int>& signs)
{
    int count = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

int variations_at(const std::vector<UPoly>& sturm, const Rational& x)
{
    std::vector<int> signs;
    for (const auto& p : sturm)
        signs.push_back(sgn(p(x)));
    return variations(signs);
}

int variations_at_infinity(const std::vector<UPoly>& sturm)
{
    std::vector<int> signs;
    for (const auto& p : sturm)
        signs.push_back(p.is_zero() ? 0 : sgn(p.leading()));
    return variations(signs);
}

// All roots lie in (-bound, bound).
Rational cauchy_bound(const UPoly& f)
{
    Rational m = 0;
    for (std::size_t i = 0; i + 1 < f.coefficients().size(); ++i)
        m = std::max(m, Rational(abs(f.coefficients()[i] / f.leading())));
    return m + 1;
}

}  // namespace

int count_roots(const std::vector<UPoly>& sturm, const Rational& lo, const Rational& hi)
{
    return variations_at(sturm, lo) - variations_at(sturm, hi);
}

int count_positive_roots(const UPoly& f)
{
    if (f.degree() < 1)
        return 0;
    auto sturm = sturm_sequence(f);
    int at_zero = variations_at(sturm, Rational(0));
    int roots = at_zero - variations_at_infinity(sturm);
    // A root at 0 itself is excluded: (0, inf) is open.
    return roots;
}

std::vector<double> positive_roots(const UPoly& f, double tolerance)
{
    std::vector<double> out;
    if (count_positive_roots(f) == 0)
        return out;
    auto sturm = sturm_sequence(f);
    Rational tol(tolerance);

    struct Interval {
        Rational lo, hi;
        int count;
    };
    Rational upper = cauchy_bound(f);
    std::vector<Interval> work{{Rational(0), upper, count_roots(sturm, Rational(0), upper)}};
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        if (iv.count == 0)
            continue;
        if (iv.count == 1 && iv.hi - iv.lo < tol) {
            Rational mid = (iv.lo + iv.hi) / 2;
            out.push_back(to_double(mid));
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        int left = count_roots(sturm, iv.lo, mid);
        work.push_back({mid, iv.hi, iv.count - left});
        work.push_back({iv.lo, mid, left});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nsmooth
