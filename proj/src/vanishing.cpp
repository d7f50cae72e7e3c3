#include "nsmooth/vanishing.hpp"

#include "nsmooth/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace nsmooth {

std::string to_string(OrderMode mode)
{
    switch (mode) {
    case OrderMode::exact_2d:
        return "exact_2d";
    case OrderMode::sampled_lower_bound:
        return "sampled_lower_bound";
    case OrderMode::user_override:
        return "user_override";
    }
    return "unknown";
}

namespace {

Rational dot(const std::vector<Rational>& a, const ExponentVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

std::vector<ExponentVector> face_vertex_list(const NewtonPolyhedron& np, const Face& f)
{
    std::vector<ExponentVector> out;
    for (auto i : f.generating_vertices)
        out.push_back(np.vertices()[i]);
    return out;
}

bool all_integer_exponents(const Polynomial& p)
{
    for (const auto& t : p.terms())
        for (const auto& e : t.exponent)
            if (!is_integer(e))
                return false;
    return true;
}

}  // namespace

Polynomial face_polynomial(const Polynomial& p, const NewtonPolyhedron& np, const Face& face)
{
    auto points = p.exponents();
    std::sort(points.begin(), points.end());
    if (points != np.candidate_points())
        throw FaceError("Newton polyhedron was not built from this polynomial");
    for (auto idx : face.active_facets)
        if (idx >= np.facets().size())
            throw FaceError("face refers to a facet outside the polyhedron");
    if (face.active_facets.empty() || face_from_active_set(np, face.active_facets) != face)
        throw FaceError("not a face of N(p)");
    if (!face.is_compact)
        throw FaceError("face polynomial requires a compact face");

    const auto& w = face.normal_witness;
    Rational level = dot(w, np.vertices()[face.generating_vertices.front()]);
    std::vector<Term> on_face;
    for (const auto& t : p.terms())
        if (dot(w, t.exponent) == level)
            on_face.push_back(t);
    return Polynomial(p.dimension(), std::move(on_face));
}

VanishingOrderResult vanishing_order_exact_2d(const Polynomial& p)
{
    if (p.dimension() != 2)
        throw std::invalid_argument("exact vanishing order is only defined for n = 2");
    if (!all_integer_exponents(p))
        throw std::invalid_argument("exact vanishing order needs integer exponents; use sampled mode");

    VanishingOrderResult result;
    result.mode = OrderMode::exact_2d;
    auto np = build_newton_polyhedron(p);

    for (const auto& face : enumerate_compact_faces(np)) {
        if (face.dim != 1)
            continue;  // vertex monomials have no torus zeros
        Polynomial fF = face_polynomial(p, np, face);
        auto verts = face_vertex_list(np, face);
        // Start at the vertex with the larger t2 exponent so the edge runs
        // in direction (+dx, -dy).
        std::sort(verts.begin(), verts.end());
        const ExponentVector& start = verts.front();
        const ExponentVector& end = verts.back();
        long dx_total = Rational(end[0] - start[0]).get_num().get_si();
        long dy_total = Rational(start[1] - end[1]).get_num().get_si();
        long steps = std::gcd(dx_total, dy_total);
        long dx = dx_total / steps;
        long dy = dy_total / steps;

        // f_F = t^start * g(x) with x = t1^dx t2^-dy; in a sign chart
        // t = (s1 * s1', s2 * s2') with s' > 0 each term picks up the sign
        // s1^e1 s2^e2 and x ranges over (0, inf).
        for (int s1 : {1, -1}) {
            for (int s2 : {1, -1}) {
                std::vector<Rational> coeffs(static_cast<std::size_t>(steps + 1), Rational(0));
                for (const auto& t : fF.terms()) {
                    long k = Rational(t.exponent[0] - start[0]).get_num().get_si() / dx;
                    long e1 = t.exponent[0].get_num().get_si();
                    long e2 = t.exponent[1].get_num().get_si();
                    int sign = ((s1 < 0 && (e1 & 1)) ? -1 : 1) * ((s2 < 0 && (e2 & 1)) ? -1 : 1);
                    coeffs[static_cast<std::size_t>(k)] += t.coefficient * sign;
                }
                UPoly g(std::move(coeffs));
                auto factors = square_free_decomposition(g);
                for (std::size_t i = 0; i < factors.size(); ++i) {
                    int multiplicity = static_cast<int>(i + 1);
                    if (multiplicity < result.value || count_positive_roots(factors[i]) == 0)
                        continue;
                    if (multiplicity > result.value) {
                        result.value = multiplicity;
                        result.witnesses.clear();
                    }
                    for (double x : positive_roots(factors[i])) {
                        // Take |t2| = 1, |t1| = x^(1/dx).
                        std::vector<double> point{s1 * std::pow(x, 1.0 / static_cast<double>(dx)), static_cast<double>(s2)};
                        std::ostringstream loc;
                        loc.precision(12);
                        loc << "edge parameter t1^" << dx << "*t2^-" << dy << " = " << x << " in chart (" << (s1 > 0 ? '+' : '-')
                            << "," << (s2 > 0 ? '+' : '-') << ")";
                        result.witnesses.push_back({verts, point, loc.str(), multiplicity});
                    }
                }
            }
        }
    }
    return result;
}

namespace {

double term_scale(const Polynomial& f, const std::vector<double>& x)
{
    double s = 0.0;
    for (const auto& t : f.terms()) {
        Polynomial mono(f.dimension(), {{abs(t.coefficient), t.exponent}});
        s += std::fabs(evaluate_polynomial(mono, x));
    }
    return s;
}

struct SlopeFit {
    double slope;
    double residual;
};

SlopeFit fit_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (my + slope * (x[i] - mx));
        rss += r * r;
    }
    return {slope, std::sqrt(rss / n)};
}

}  // namespace

VanishingOrderResult vanishing_order_sampled(const Polynomial& p, const SamplingOptions& options)
{
    VanishingOrderResult result;
    result.mode = OrderMode::sampled_lower_bound;
    const std::size_t n = p.dimension();
    const bool positive_only = !all_integer_exponents(p);
    auto np = build_newton_polyhedron(p);

    std::mt19937_64 rng(options.seed);
    auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto random_direction = [&]() {
        std::vector<double> u(n);
        double norm = 0;
        for (auto& x : u) {
            // Box-Muller from our own uniforms keeps the stream portable.
            double a = uniform(), b = uniform();
            x = std::sqrt(-2.0 * std::log(1.0 - a)) * std::cos(2.0 * M_PI * b);
            norm += x * x;
        }
        for (auto& x : u)
            x /= std::sqrt(norm);
        return u;
    };

    int best_low = 0, best_high = 0;
    for (const auto& face : enumerate_compact_faces(np)) {
        if (face.dim < 1)
            continue;
        Polynomial fF = face_polynomial(p, np, face);
        auto eval = [&](const std::vector<double>& x) { return evaluate_polynomial(fF, x); };
        auto admissible = [&](const std::vector<double>& x) {
            for (double c : x) {
                if (std::fabs(c) < 1e-3 || std::fabs(c) > 1.0)
                    return false;
                if (positive_only && c <= 0.0)
                    return false;
            }
            return true;
        };

        for (std::size_t line = 0; line < options.lines_per_face; ++line) {
            std::vector<double> base(n);
            for (auto& b : base)
                b = positive_only ? uniform() : 2.0 * uniform() - 1.0;
            auto dir = random_direction();
            auto at = [&](double s) {
                std::vector<double> x(n);
                for (std::size_t i = 0; i < n; ++i)
                    x[i] = base[i] + s * dir[i];
                return x;
            };

            const std::size_t m = options.samples_per_line;
            std::vector<double> s_grid(m), vals(m);
            std::vector<bool> ok(m);
            for (std::size_t i = 0; i < m; ++i) {
                s_grid[i] = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(m - 1);
                auto x = at(s_grid[i]);
                ok[i] = admissible(x);
                vals[i] = ok[i] ? eval(x) : 0.0;
            }

            std::vector<double> candidates;
            for (std::size_t i = 1; i + 1 < m; ++i) {
                if (!ok[i - 1] || !ok[i] || !ok[i + 1])
                    continue;
                if (vals[i] == 0.0) {
                    candidates.push_back(s_grid[i]);
                } else if ((vals[i] > 0) != (vals[i + 1] > 0) && vals[i + 1] != 0.0) {
                    double lo = s_grid[i], hi = s_grid[i + 1];
                    double flo = vals[i];
                    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                        double mid = 0.5 * (lo + hi);
                        double fm = eval(at(mid));
                        if ((fm > 0) == (flo > 0)) {
                            lo = mid;
                            flo = fm;
                        } else {
                            hi = mid;
                        }
                    }
                    candidates.push_back(0.5 * (lo + hi));
                } else if (std::fabs(vals[i]) <= std::fabs(vals[i - 1]) && std::fabs(vals[i]) <= std::fabs(vals[i + 1])) {
                    // Golden-section search on |f| for even-order zeros.
                    double a = s_grid[i - 1], b = s_grid[i + 1];
                    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
                    double c = b - phi * (b - a), d = a + phi * (b - a);
                    double fc = std::fabs(eval(at(c))), fd = std::fabs(eval(at(d)));
                    for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
                        if (fc < fd) {
                            b = d;
                            d = c;
                            fd = fc;
                            c = b - phi * (b - a);
                            fc = std::fabs(eval(at(c)));
                        } else {
                            a = c;
                            c = d;
                            fc = fd;
                            d = a + phi * (b - a);
                            fd = std::fabs(eval(at(d)));
                        }
                    }
                    candidates.push_back(0.5 * (a + b));
                }
            }

            for (double s0 : candidates) {
                auto x0 = at(s0);
                if (!admissible(x0))
                    continue;
                double scale = term_scale(fF, x0);
                if (std::fabs(eval(x0)) > 1e-9 * scale)
                    continue;  // a positive local minimum, not a zero

                double min_coord = 1.0;
                for (double c : x0)
                    min_coord = std::min(min_coord, std::fabs(c));
                double h_max = std::min(0.1, 0.5 * min_coord);
                double h_min = h_max * 1e-3;

                double min_slope = 1e300;
                double min_resid = 0.0;
                for (std::size_t k = 0; k < options.directions; ++k) {
                    auto u = random_direction();
                    std::vector<double> lx, ly;
                    for (int j = 0; j <= 12; ++j) {
                        double h = h_min * std::pow(h_max / h_min, j / 12.0);
                        std::vector<double> x(n);
                        for (std::size_t i = 0; i < n; ++i)
                            x[i] = x0[i] + h * u[i];
                        double v = std::fabs(eval(x));
                        if (v == 0.0)
                            continue;
                        lx.push_back(std::log10(h));
                        ly.push_back(std::log10(v));
                    }
                    if (lx.size() < 6)
                        continue;
                    auto fit = fit_slope(lx, ly);
                    if (fit.slope < min_slope) {
                        min_slope = fit.slope;
                        min_resid = fit.residual;
                    }
                }
                if (min_slope > 1e299 || min_slope < 0.5)
                    continue;

                int low, high;
                double nearest = std::round(min_slope);
                if (std::fabs(min_slope - nearest) <= 0.25 && min_resid < 0.1) {
                    low = high = static_cast<int>(nearest);
                } else {
                    low = static_cast<int>(std::floor(min_slope));
                    high = low + 1;
                }
                if (low < 1)
                    low = 1;

                if (low > result.value) {
                    result.value = low;
                    result.witnesses.clear();
                    best_low = low;
                    best_high = high;
                }
                if (low == result.value && result.witnesses.size() < 8) {
                    std::ostringstream loc;
                    loc.precision(6);
                    loc << "sampled zero, log-log slope " << min_slope;
                    result.witnesses.push_back({face_vertex_list(np, face), x0, loc.str(), low});
                    best_high = std::max(best_high, high);
                }
            }
        }
    }
    if (result.value > 0 && best_high != best_low)
        result.interval = std::make_pair(best_low, best_high);
    return result;
}

VanishingOrderResult order_of_S(const Polynomial& p, std::optional<int> override_value)
{
    if (override_value) {
        if (*override_value < 0)
            throw std::invalid_argument("vanishing order override must be nonnegative");
        VanishingOrderResult r;
        r.value = *override_value;
        r.mode = OrderMode::user_override;
        return r;
    }
    if (p.dimension() == 2 && all_integer_exponents(p))
        return vanishing_order_exact_2d(p);
    return vanishing_order_sampled(p);
}

}  // namespace nsmooth
