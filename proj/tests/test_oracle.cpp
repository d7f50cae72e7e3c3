#include "helpers.hpp"

#include "nsmooth/oracle.hpp"

#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

using namespace nsmooth;
using testing::P;
using testing::Q;

namespace {

constexpr double pi = std::numbers::pi;

BlockStructure singles(std::vector<Rational> alphas)
{
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        blocks.push_back({i});
    return BlockStructure(alphas.size(), blocks, alphas);
}

double phi2(double s2) { return s2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s2)) : 0.0; }

// Composite Simpson on [a,b] with an even number of panels.
std::complex<double> simpson(const std::function<std::complex<double>(double)>& f, double a, double b, int panels)
{
    double h = (b - a) / panels;
    std::complex<double> s = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

struct ClosedForm {
    const char* name;
    const char* phase;
    std::size_t n;
    std::function<BlockStructure()> blocks;
    std::function<double(double eps, double r)> measure;
};

// Weighted sublevel measures over (0,r)^n, derived by hand for small eps.
std::vector<ClosedForm> closed_forms()
{
    double g8 = std::tgamma(1.0 + 1.0 / 8), g4 = std::tgamma(1.0 + 1.0 / 4);
    return {
        {"quarter disk", "t1^2+t2^2", 2, [] { return BlockStructure::singletons(2); },
         [](double e, double) { return pi * e / 4; }},
        {"hyperbola", "t1^2*t2^2", 2, [] { return BlockStructure::singletons(2); },
         [](double e, double r) {
             double d = std::sqrt(e);
             return d * (1.0 + std::log(r * r / d));
         }},
        {"t1^2 t2^4", "t1^2*t2^4", 2, [] { return BlockStructure::singletons(2); },
         [](double e, double r) {
             double d = std::sqrt(e);
             return 2 * std::sqrt(r * d) - d / r;
         }},
        {"1D weight", "t1^2", 1, [] { return singles({Q("1/2")}); },
         [](double e, double) { return 2 * std::pow(e, 0.25); }},
        {"weighted disk", "t1^2+t2^2", 2, [] { return singles({Q("1/2"), Q("1/2")}); },
         [g4](double e, double) { return 4 * std::sqrt(e) * g4 * g4 / std::tgamma(1.5); }},
        {"weighted quartic", "t1^4+t2^4", 2, [] { return singles({Q("1/2"), Q("1/2")}); },
         [g8](double e, double) { return 4 * std::pow(e, 0.25) * g8 * g8 / std::tgamma(1.25); }},
        {"radial block", "t1^2+t2^2", 2, [] { return BlockStructure(2, {{0, 1}}, {Q("1")}); },
         [](double e, double) { return pi / 2 * std::sqrt(e); }},
        {"ball octant", "t1^2+t2^2+t3^2", 3, [] { return BlockStructure::singletons(3); },
         [](double e, double) { return pi / 6 * std::pow(e, 1.5); }},
    };
}

}  // namespace

TEST_CASE("bump")
{
    CHECK(bump(0.0) == doctest::Approx(1.0));
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(2.0) == 0.0);
    CHECK(bump(0.25) == doctest::Approx(std::exp(1.0 - 1.0 / 0.75)));
}

TEST_CASE("sublevel measure: examples")
{
    auto disk = estimate_sublevel_measure(star_function(P("t1^2+t2^2", 2)), BlockStructure::singletons(2),
                                          std::ldexp(1.0, -8), 0.5, 200000, 1);
    CHECK(disk.value == doctest::Approx(pi * std::ldexp(1.0, -8) / 4).epsilon(0.05));
    CHECK(disk.lower <= disk.value);
    CHECK(disk.value <= disk.upper);

    double e = std::ldexp(1.0, -20), d = std::sqrt(e);
    auto hyp = estimate_sublevel_measure(star_function(P("t1^2*t2^2", 2)), BlockStructure::singletons(2), e, 0.5,
                                         200000, 1);
    CHECK(hyp.value == doctest::Approx(d * (1 + std::log(0.25 / d))).epsilon(0.05));

    // exponent 1/4 in eps for t1^2 with weight t^-1/2
    auto s = star_function(P("t1^2", 1));
    auto b = singles({Q("1/2")});
    auto m1 = estimate_sublevel_measure(s, b, std::ldexp(1.0, -8), 0.5, 100000, 1);
    auto m2 = estimate_sublevel_measure(s, b, std::ldexp(1.0, -16), 0.5, 100000, 1);
    CHECK(std::log2(m1.value / m2.value) / 8 == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("sublevel measure: closed forms across scales")
{
    for (const auto& cf : closed_forms()) {
        auto star = star_function(P(cf.phase, cf.n));
        auto b = cf.blocks();
        for (int j : {8, 16, 24}) {
            double eps = std::ldexp(1.0, -j);
            double exact = cf.measure(eps, 0.5);
            auto m = estimate_sublevel_measure(star, b, eps, 0.5, 400000, 3);
            CHECK_MESSAGE(m.value == doctest::Approx(exact).epsilon(0.05), cf.name << " j=" << j);
            CHECK_MESSAGE(m.rel_err < 0.1, cf.name << " j=" << j);
        }
    }
}

TEST_CASE("sublevel measure: monotone in eps and r, stable under more budget")
{
    auto star = star_function(P("t1^2*t2^4", 2));
    auto b = BlockStructure::singletons(2);
    double prev = 0.0;
    for (int j = 24; j >= 6; j -= 3) {
        auto m = estimate_sublevel_measure(star, b, std::ldexp(1.0, -j), 0.5, 100000, 5);
        CHECK(m.value >= prev);
        prev = m.value;
    }
    auto small_r = estimate_sublevel_measure(star, b, 1e-4, 0.25, 100000, 5);
    auto large_r = estimate_sublevel_measure(star, b, 1e-4, 0.75, 100000, 5);
    CHECK(small_r.upper <= large_r.lower);

    auto m1 = estimate_sublevel_measure(star, b, 1e-5, 0.5, 100000, 9);
    auto m2 = estimate_sublevel_measure(star, b, 1e-5, 0.5, 200000, 9);
    CHECK(std::abs(m2.value - m1.value) <= m1.upper - m1.lower);
}

TEST_CASE("sublevel measure: determinism and serial/parallel agreement")
{
    auto star = star_function(P("t1^4 + t1*t2 + t2^4", 2));
    auto b = singles({Q("1/3"), Q("0")});
    int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    auto a = estimate_sublevel_measure(star, b, 1e-6, 0.875, 300000, 17);
    auto c = estimate_sublevel_measure(star, b, 1e-6, 0.875, 300000, 17);
    auto s = estimate_sublevel_measure_serial(star, b, 1e-6, 0.875, 300000, 17);
    omp_set_num_threads(saved);
    CHECK(a.value == c.value);
    CHECK(a.value == s.value);
    CHECK(a.lower == s.lower);
    CHECK(a.upper == s.upper);
    CHECK(a.rel_err == s.rel_err);
    CHECK(a.evaluations == s.evaluations);
    CHECK(a.evaluations <= 300000);
    auto other = estimate_sublevel_measure(star, b, 1e-6, 0.875, 300000, 18);
    CHECK(other.value != a.value);
}

TEST_CASE("sublevel measure: errors")
{
    auto star = star_function(P("t1^2+t2^2", 2));
    auto b = BlockStructure::singletons(2);
    CHECK_THROWS_AS(estimate_sublevel_measure(star, b, 1e-4, 0.5, 10, 1), BudgetError);
    CHECK_THROWS_AS(estimate_sublevel_measure(star, b, 0.0, 0.5, 100000, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_sublevel_measure(star, b, 1e-4, 1.5, 100000, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_sublevel_measure(star, BlockStructure::singletons(3), 1e-4, 0.5, 100000, 1),
                    std::invalid_argument);
}

TEST_CASE("fit_growth_exponents: recovers (a0, d0) on small cases")
{
    auto f1 = fit_growth_exponents(star_function(P("t1^2+t2^2", 2)), BlockStructure::singletons(2), 0.875, 6, 24,
                                   2000000, 1);
    CHECK(f1.fitted_a == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::lround(f1.fitted_d) == 0);
    CHECK(f1.monotone);
    CHECK(f1.js.size() == 19);
    CHECK_FALSE(f1.used[0]);

    auto f2 = fit_growth_exponents(star_function(P("t1^2*t2^2", 2)), BlockStructure::singletons(2), 0.875, 6, 24,
                                   2000000, 1);
    CHECK(std::abs(f2.fitted_a - 0.5) <= 0.05);
    CHECK(std::lround(f2.fitted_d) == 1);

    auto f3 = fit_growth_exponents(star_function(P("t1^2+t2^2", 2)), singles({Q("1/2"), Q("1/2")}), 0.875, 6, 24,
                                   2000000, 1);
    CHECK(std::abs(f3.fitted_a - 0.5) <= 0.05);
    CHECK(std::lround(f3.fitted_d) == 0);

    CHECK_THROWS_AS(fit_growth_exponents(star_function(P("t1^2", 1)), BlockStructure::singletons(1), 0.5, 6, 12,
                                         100000, 1),
                    std::invalid_argument);

    std::ostringstream csv;
    write_csv(csv, f1);
    CHECK(csv.str().rfind("j,epsilon,measure,rel_err\n6,", 0) == 0);
}

TEST_CASE("least_squares recovers an exact linear model")
{
    std::vector<std::vector<double>> design;
    std::vector<double> y;
    for (int j = 0; j < 12; ++j) {
        design.push_back({1.0, static_cast<double>(j), std::log2(j + 2.0)});
        y.push_back(3.0 - 0.75 * j + 1.5 * std::log2(j + 2.0));
    }
    auto c = least_squares(design, y);
    CHECK(c[0] == doctest::Approx(3.0));
    CHECK(c[1] == doctest::Approx(-0.75));
    CHECK(c[2] == doctest::Approx(1.5));
    CHECK_THROWS(least_squares({{1.0, 2.0}}, {1.0}));
}

TEST_CASE("Fourier transform: lambda = 0 gives the kernel mass")
{
    double r = 0.875;
    std::vector<double> zero2{0, 0, 0};
    auto m2 = estimate_fourier_transform(P("t1^2+t2^2", 2), BlockStructure::singletons(2), zero2, r, 10000000);
    auto mass2 = simpson([&](double u) { return std::complex<double>(phi2(u / (r * r))); }, 0, r * r, 20000) * pi;
    CHECK(m2.reliable);
    CHECK(m2.value.real() == doctest::Approx(mass2.real()).epsilon(1e-8));
    CHECK(std::abs(m2.value.imag()) < 1e-12);

    std::vector<double> zero1{0, 0};
    auto m1 = estimate_fourier_transform(P("t1^2", 1), singles({Q("1/2")}), zero1, r, 10000000);
    auto mass1 =
        4.0 * simpson([&](double v) { return std::complex<double>(phi2(std::pow(v, 4) / (r * r))); }, 0, std::sqrt(r),
                      20000);
    CHECK(m1.value.real() == doctest::Approx(mass1.real()).epsilon(1e-8));
}

TEST_CASE("Fourier transform: radial and 1D references")
{
    double r = 0.875;
    for (double lam : {64.0, 512.0}) {
        std::vector<double> l{0, 0, lam};
        auto est = estimate_fourier_transform(P("t1^2+t2^2", 2), BlockStructure::singletons(2), l, r, 100000000);
        auto ref = pi * simpson(
                            [&](double u) {
                                return std::exp(std::complex<double>(0, lam * u)) * phi2(u / (r * r));
                            },
                            0, r * r, 400000);
        CHECK(est.reliable);
        CHECK(std::abs(est.value - ref) <= 1e-7 * std::abs(ref));
    }

    std::vector<double> lw{0, 256};
    auto w = estimate_fourier_transform(P("t1^2", 1), singles({Q("1/2")}), lw, r, 100000000);
    auto wref = 4.0 * simpson(
                          [&](double v) {
                              double t = v * v * v * v;
                              return std::exp(std::complex<double>(0, 256 * t)) * phi2(t / (r * r));
                          },
                          0, std::sqrt(r), 400000);
    CHECK(std::abs(w.value - wref) <= 1e-7 * std::abs(wref));

    // linear frequency only: a cosine transform of the bump
    std::vector<double> ll{20, 0};
    auto c = estimate_fourier_transform(P("t1^2", 1), BlockStructure::singletons(1), ll, r, 100000000);
    auto cref = 2.0 * simpson([&](double t) { return std::complex<double>(std::cos(20 * t) * phi2(t * t / (r * r))); },
                              0, r, 200000);
    CHECK(std::abs(c.value - cref) <= 1e-8);
}

TEST_CASE("Fourier transform: determinism, serial agreement, errors")
{
    auto s = P("t1^2*t2^2 + t1^4", 2);
    auto b = BlockStructure::singletons(2);
    std::vector<double> l{3, -5, 300};
    int saved = omp_get_max_threads();
    omp_set_num_threads(4);
    auto a = estimate_fourier_transform(s, b, l, 0.875, 100000000);
    auto c = estimate_fourier_transform(s, b, l, 0.875, 100000000);
    auto ser = estimate_fourier_transform_serial(s, b, l, 0.875, 100000000);
    omp_set_num_threads(saved);
    CHECK(a.value == c.value);
    CHECK(a.value == ser.value);
    CHECK(a.error == ser.error);
    CHECK(a.evaluations == ser.evaluations);

    std::vector<double> l3{0, 0, 0, 10};
    CHECK_THROWS_AS(estimate_fourier_transform(P("t1^2+t2^2+t3^2", 3), BlockStructure::singletons(3), l3, 0.5, 1000000),
                    ScaleError);
    std::vector<double> l1{0, 10};
    CHECK_THROWS_AS(estimate_fourier_transform(P("t1^5/2", 1), BlockStructure::singletons(1), l1, 0.5, 1000000),
                    DomainError);
    CHECK_THROWS_AS(estimate_fourier_transform(P("t1^2", 1), BlockStructure::singletons(1), l3, 0.5, 1000000),
                    std::invalid_argument);
}

TEST_CASE("fit_decay_exponent: stationary phase rates")
{
    auto one = fit_decay_exponent(P("t1^2", 1), BlockStructure::singletons(1), 2, 32, 4096, 8, 0.875, 100000000);
    CHECK(one.fitted_slope == doctest::Approx(-0.5).epsilon(0.05));
    CHECK(one.direction == 2);
    CHECK(one.lambdas.size() == 8);
    CHECK(one.lambdas[1] == 64.0);
    CHECK(one.usable == 8);

    auto two = fit_decay_exponent(P("t1^2+t2^2", 2), BlockStructure::singletons(2), 3, 32, 512, 5, 0.5, 400000000);
    CHECK(two.fitted_slope == doctest::Approx(-1.0).epsilon(0.1));

    std::ostringstream csv;
    write_csv(csv, one);
    CHECK(csv.str().rfind("lambda,magnitude,rel_err\n32,", 0) == 0);
    CHECK_THROWS(fit_decay_exponent(P("t1^2", 1), BlockStructure::singletons(1), 3, 32, 4096, 8, 0.875, 1000));
}
