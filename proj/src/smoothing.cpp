#include "nsmooth/smoothing.hpp"

#include <stdexcept>

namespace nsmooth {

std::string to_string(RegionKind kind)
{
    return kind == RegionKind::triangle ? "triangle" : "trapezoid";
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::bounded:
        return "bounded";
    case Verdict::unbounded:
        return "unbounded";
    case Verdict::unknown:
        return "unknown";
    }
    return "unknown";
}

bool Region::contains_strictly(const PlanePoint& p) const
{
    const std::size_t m = vertices.size();
    if (m < 3)
        return false;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % m];
        Rational cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (sgn(cross) <= 0)
            return false;
    }
    return true;
}

Rational smoothing_exponent_g(const Rational& a0, const BlockStructure& b)
{
    if (sgn(a0) <= 0)
        throw std::invalid_argument("a0 must be positive");
    Rational g = a0;
    for (std::size_t k = 0; k < b.block_count(); ++k) {
        Rational gap = Rational(static_cast<long>(b.block_size(k))) - b.alphas()[k];
        if (gap < g)
            g = gap;
    }
    return g;
}

Region boundedness_region(const Rational& g, int o_clamped)
{
    if (sgn(g) <= 0 || o_clamped < 2)
        throw std::invalid_argument("boundedness region needs g > 0 and max(o,2) >= 2");
    Rational apex_height(1, o_clamped);
    if (g >= apex_height)
        return {RegionKind::triangle, {{0, 0}, {1, 0}, {Rational(1, 2), apex_height}}};
    Rational left = g * o_clamped / 2;
    return {RegionKind::trapezoid, {{0, 0}, {1, 0}, {1 - left, g}, {left, g}}};
}

Region stated_region(const Rational& g, int o_clamped)
{
    if (sgn(g) <= 0 || o_clamped < 2)
        throw std::invalid_argument("boundedness region needs g > 0 and max(o,2) >= 2");
    Rational apex_height(1, o_clamped);
    if (g >= apex_height)
        return {RegionKind::triangle, {{0, 0}, {1, 0}, {Rational(1, 2), apex_height}}};
    // The left edge of A is y = 2x/o and the right edge y = 2(1-x)/o; cut both at y = g.
    Rational x_left = g * o_clamped / 2;
    Rational x_right = 1 - g * o_clamped / 2;
    return {RegionKind::trapezoid, {{0, 0}, {1, 0}, {x_right, g}, {x_left, g}}};
}

std::optional<std::pair<Rational, Rational>> sharpness_report(const Rational& g, int o_clamped)
{
    Rational apex_height(1, o_clamped);
    if (g < apex_height) {
        Rational lo = g * o_clamped / 2;
        return std::make_pair(lo, Rational(1 - lo));
    }
    if (g == apex_height)
        return std::make_pair(Rational(1, 2), Rational(1, 2));
    return std::nullopt;
}

SmoothingReport assemble_report(const ExponentResult& exponents, const VanishingOrderResult& order, const BlockStructure& b)
{
    SmoothingReport r;
    r.a0 = exponents.a0;
    r.d0 = exponents.d0;
    r.noncompact_flag = exponents.noncompact_flag;
    r.o_value = order.value;
    r.o_mode = order.mode;
    r.o_clamped = order.clamped();
    r.g = smoothing_exponent_g(r.a0, b);
    r.region = boundedness_region(r.g, r.o_clamped);
    r.stated_region = stated_region(r.g, r.o_clamped);

    if (r.g < 1)
        r.sharpness.upper_bound_beta = r.g;
    r.sharpness.sharp_p_interval = sharpness_report(r.g, r.o_clamped);
    r.sharpness.caveats.push_back("the endpoint beta = g is not decided");
    if (r.g < 1)
        r.sharpness.caveats.push_back(
            "beta <= g requires K >= 0 and K > C0 * prod |t_k|^-alpha_k near the origin");
    else
        r.sharpness.caveats.push_back("g >= 1: no necessary condition on beta is available");

    if (r.noncompact_flag)
        r.caveats.push_back(
            "a minimizing ordering region has its diagonal point on a noncompact face of N(S***); "
            "d0 uses the minimal face of any kind");
    if (r.o_mode == OrderMode::sampled_lower_bound)
        r.caveats.push_back(
            "o(S) is a sampled lower bound; the true region may be lower (apex height 1/max(o,2) with larger o)");
    if (r.o_mode == OrderMode::user_override)
        r.caveats.push_back("o(S) supplied by the caller");
    r.caveats.push_back("valid for kernels supported in a sufficiently small neighborhood of the origin");
    return r;
}

Classification classify_point(const Rational& p_recip, const Rational& beta, const SmoothingReport& report)
{
    if (sgn(p_recip) <= 0 || p_recip >= 1)
        throw std::invalid_argument("1/p must lie in (0,1)");
    if (sgn(beta) <= 0)
        throw std::invalid_argument("beta must be positive");

    Classification c;
    c.caveats = report.caveats;
    PlanePoint pt{p_recip, beta};
    if (report.region.contains_strictly(pt)) {
        c.verdict = Verdict::bounded;
        c.explanation = "(1/p, beta) lies inside the open " + to_string(report.region.kind) + " of boundedness";
        if (report.o_mode == OrderMode::sampled_lower_bound)
            c.caveats.push_back("bounded verdict rests on the sampled o(S)");
        return c;
    }
    if (report.g < 1 && beta > report.g) {
        c.verdict = Verdict::unbounded;
        c.explanation = "beta = " + to_string(beta) + " exceeds g = " + to_string(report.g) + " < 1";
        c.caveats.push_back("requires K >= 0 and K > C0 * prod |t_k|^-alpha_k near the origin");
        return c;
    }
    c.verdict = Verdict::unknown;
    if (report.g >= 1)
        c.explanation = "outside the boundedness region and g >= 1, so no necessity statement applies";
    else
        c.explanation = "outside the boundedness region with beta <= g";
    return c;
}

}  // namespace nsmooth
