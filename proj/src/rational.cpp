#include "nsmooth/rational.hpp"

#include <algorithm>
#include <cctype>

namespace nsmooth {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
        trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
        trimmed.remove_suffix(1);

    bool negative = false;
    if (!trimmed.empty() && (trimmed.front() == '-' || trimmed.front() == '+')) {
        negative = trimmed.front() == '-';
        trimmed.remove_prefix(1);
    }

    // finite decimals are exact: 0.25 -> 25/100
    if (auto dot = trimmed.find('.'); dot != std::string_view::npos) {
        auto whole = trimmed.substr(0, dot);
        auto frac = trimmed.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        mpz_class n(std::string(whole) + std::string(frac), 10);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        Rational q(n, d);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }

    auto slash = trimmed.find('/');
    auto num = trimmed.substr(0, slash);
    auto den = slash == std::string_view::npos ? std::string_view("1") : trimmed.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");

    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

std::string to_string(const std::vector<Rational>& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ",";
        out += to_string(v[i]);
    }
    return out + ")";
}

long floor_to_long(const Rational& q)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

Rational min_of(const std::vector<Rational>& v)
{
    if (v.empty())
        throw std::invalid_argument("min_of: empty list");
    return *std::min_element(v.begin(), v.end());
}

Rational max_of(const std::vector<Rational>& v)
{
    if (v.empty())
        throw std::invalid_argument("max_of: empty list");
    return *std::max_element(v.begin(), v.end());
}

void make_primitive(std::vector<Rational>& v)
{
    mpz_class lcm = 1;
    for (const auto& x : v)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    mpz_class g = 0;
    for (const auto& x : v) {
        mpz_class scaled = x.get_num() * (lcm / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    }
    if (g == 0)
        return;
    for (auto& x : v) {
        mpz_class scaled = x.get_num() * (lcm / x.get_den());
        x = Rational(scaled / g);
    }
}

}  // namespace nsmooth
