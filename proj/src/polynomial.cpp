#include "nsmooth/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace nsmooth {

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension)
{
    if (dimension == 0)
        throw std::invalid_argument("polynomial dimension must be at least 1");
}

Polynomial::Polynomial(std::size_t dimension, std::vector<Term> terms) : Polynomial(dimension)
{
    std::map<ExponentVector, Rational> merged;
    for (auto& t : terms) {
        if (t.exponent.size() != dimension_)
            throw std::invalid_argument("term exponent length does not match dimension");
        // mpq values built from num/den pairs are not reduced automatically
        t.coefficient.canonicalize();
        for (auto& e : t.exponent) {
            e.canonicalize();
            if (sgn(e) < 0)
                throw std::invalid_argument("negative exponent " + to_string(e));
        }
        merged[t.exponent] += t.coefficient;
    }
    for (auto& [exp, coef] : merged)
        if (sgn(coef) != 0)
            terms_.push_back({coef, exp});
}

std::vector<ExponentVector> Polynomial::exponents() const
{
    std::vector<ExponentVector> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
        out.push_back(t.exponent);
    return out;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

    Polynomial run()
    {
        std::vector<Term> terms;
        skip_ws();
        bool first = true;
        while (true) {
            skip_ws();
            if (at_end()) {
                if (first)
                    fail("empty polynomial");
                break;
            }
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            skip_ws();
            Term t = parse_term();
            if (sign < 0)
                t.coefficient = -t.coefficient;
            terms.push_back(std::move(t));
            first = false;
        }
        return Polynomial(n_, std::move(terms));
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    mpz_class parse_natural()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        if (start == pos_)
            fail("expected digits");
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    Rational parse_unsigned_rational()
    {
        mpz_class num = parse_natural();
        mpz_class den = 1;
        if (peek() == '/') {
            ++pos_;
            den = parse_natural();
            if (den == 0)
                fail("zero denominator");
        }
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    Term parse_term()
    {
        Term t{Rational(1), ExponentVector(n_, Rational(0))};
        bool have_factor = false;
        bool expect_factor = false;
        while (true) {
            skip_ws();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                t.coefficient *= parse_unsigned_rational();
            } else if (c == 't') {
                parse_variable(t.exponent);
            } else {
                if (expect_factor || !have_factor)
                    fail("expected coefficient or variable");
                break;
            }
            have_factor = true;
            skip_ws();
            expect_factor = false;
            if (peek() == '*') {
                ++pos_;
                expect_factor = true;
            }
        }
        return t;
    }

    void parse_variable(ExponentVector& exponent)
    {
        ++pos_;  // 't'
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected variable index after 't'");
        std::size_t at = pos_;
        mpz_class index = parse_natural();
        if (index < 1 || index > static_cast<long>(n_))
            throw ParseError("variable t" + index.get_str() + " outside dimension " + std::to_string(n_), at);
        Rational e(1);
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (peek() == '-')
                fail("negative exponent");
            if (peek() == '+')
                ++pos_;
            e = parse_unsigned_rational();
        }
        exponent[index.get_ui() - 1] += e;
    }

    std::string_view text_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("dimension must be at least 1");
    return Parser(text, n).run();
}

std::string to_string(const Polynomial& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& term : p.terms()) {
        bool negative = sgn(term.coefficient) < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;

        Rational magnitude = abs(term.coefficient);
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < term.exponent.size(); ++i) {
            const auto& e = term.exponent[i];
            if (sgn(e) == 0)
                continue;
            std::string f = "t" + std::to_string(i + 1);
            if (e != 1)
                f += "^" + to_string(e);
            factors.push_back(std::move(f));
        }
        if (factors.empty() || magnitude != 1) {
            out += to_string(magnitude);
            if (!factors.empty())
                out += "*";
        }
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k)
                out += "*";
            out += factors[k];
        }
    }
    return out;
}

double evaluate_polynomial(const Polynomial& p, std::span<const double> point)
{
    if (point.size() != p.dimension())
        throw std::invalid_argument("evaluation point has wrong length");
    double sum = 0.0;
    for (const auto& term : p.terms()) {
        double value = to_double(term.coefficient);
        for (std::size_t i = 0; i < point.size(); ++i) {
            const auto& e = term.exponent[i];
            if (sgn(e) == 0)
                continue;
            if (is_integer(e)) {
                value *= std::pow(point[i], static_cast<int>(e.get_num().get_si()));
            } else {
                if (point[i] < 0.0)
                    throw DomainError("negative coordinate t" + std::to_string(i + 1) + " raised to non-integer exponent " +
                                      to_string(e));
                value *= std::pow(point[i], to_double(e));
            }
        }
        sum += value;
    }
    return sum;
}

double evaluate_star(const StarFunction& s, std::span<const double> point)
{
    if (point.size() != s.dimension)
        throw std::invalid_argument("evaluation point has wrong length");
    double sum = 0.0;
    for (const auto& v : s.vertex_exponents) {
        double value = 1.0;
        for (std::size_t i = 0; i < point.size(); ++i)
            if (sgn(v[i]) != 0)
                value *= std::pow(std::fabs(point[i]), to_double(v[i]));
        sum += value;
    }
    return sum;
}

BlockStructure::BlockStructure(std::size_t n, std::vector<std::vector<std::size_t>> blocks, std::vector<Rational> alphas)
    : n_(n), blocks_(std::move(blocks)), alphas_(std::move(alphas)), owner_(n, n)
{
    if (n == 0)
        throw std::invalid_argument("block structure needs n >= 1");
    if (blocks_.size() != alphas_.size())
        throw std::invalid_argument("blocks and alphas have different lengths");
    for (auto& a : alphas_)
        a.canonicalize();
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (blocks_[k].empty())
            throw std::invalid_argument("block " + std::to_string(k + 1) + " is empty");
        std::sort(blocks_[k].begin(), blocks_[k].end());
        for (auto i : blocks_[k]) {
            if (i >= n)
                throw std::invalid_argument("block variable t" + std::to_string(i + 1) + " outside dimension");
            if (owner_[i] != n)
                throw std::invalid_argument("variable t" + std::to_string(i + 1) + " appears in two blocks");
            owner_[i] = k;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (owner_[i] == n)
            throw std::invalid_argument("variable t" + std::to_string(i + 1) + " belongs to no block");
}

BlockStructure BlockStructure::singletons(std::size_t n)
{
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < n; ++i)
        blocks.push_back({i});
    return BlockStructure(n, std::move(blocks), std::vector<Rational>(n, Rational(0)));
}

ValidationReport validate_input(const Polynomial& p, const BlockStructure& b)
{
    ValidationReport report;
    auto violate = [&](std::string msg) {
        report.ok = false;
        report.violations.push_back(std::move(msg));
    };

    if (p.dimension() != b.dimension())
        violate("dimension mismatch: phase has n=" + std::to_string(p.dimension()) + ", blocks cover n=" +
                std::to_string(b.dimension()));
    if (p.is_zero())
        violate("phase is identically zero");

    for (const auto& term : p.terms()) {
        Rational degree = 0;
        for (const auto& e : term.exponent)
            degree += e;
        if (sgn(degree) == 0)
            violate("constant term violates S(0)=0");
        else if (degree < 1)
            violate("term of total degree " + to_string(degree) + " < 1: S is not differentiable at 0");
        else if (degree == 1)
            violate("degree-1 term violates grad S(0)=0");
    }

    for (std::size_t k = 0; k < b.block_count(); ++k) {
        const auto& a = b.alphas()[k];
        auto l = b.block_size(k);
        if (sgn(a) < 0)
            violate("alpha_" + std::to_string(k + 1) + " = " + to_string(a) + " is negative");
        if (a >= static_cast<long>(l))
            violate("alpha_" + std::to_string(k + 1) + " = " + to_string(a) + " >= l_" + std::to_string(k + 1) + " = " +
                    std::to_string(l));
    }
    return report;
}

}  // namespace nsmooth
