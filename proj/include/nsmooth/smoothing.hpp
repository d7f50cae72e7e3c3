#ifndef NSMOOTH_SMOOTHING_HPP
#define NSMOOTH_SMOOTHING_HPP

#include "nsmooth/pipeline.hpp"
#include "nsmooth/vanishing.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nsmooth {

// A point (1/p, beta) of the L^p -> L^p_beta parameter plane.
struct PlanePoint {
    Rational x;
    Rational y;

    bool operator==(const PlanePoint&) const = default;
};

enum class RegionKind { triangle, trapezoid };

std::string to_string(RegionKind kind);

// Open convex polygon, vertices counter-clockwise starting at (0,0).
struct Region {
    RegionKind kind = RegionKind::triangle;
    std::vector<PlanePoint> vertices;

    bool contains_strictly(const PlanePoint& p) const;
};

struct Sharpness {
    std::optional<Rational> upper_bound_beta;  // g, when g < 1
    // Open interval of 1/p where smoothing g is sharp up to the endpoint
    // beta = g; lo == hi encodes the single point p = 2.
    std::optional<std::pair<Rational, Rational>> sharp_p_interval;
    std::vector<std::string> caveats;
};

struct SmoothingReport {
    Rational a0;
    int d0 = 0;
    bool noncompact_flag = false;
    int o_value = 0;
    OrderMode o_mode = OrderMode::exact_2d;
    int o_clamped = 2;
    Rational g;
    Region region;         // region established by interpolation and duality
    Region stated_region;  // triangle A cut at height g
    Sharpness sharpness;
    std::vector<std::string> caveats;
};

Rational smoothing_exponent_g(const Rational& a0, const BlockStructure& b);

// Triangle (0,0),(1,0),(1/2,1/o) when g >= 1/o, otherwise the trapezoid with
// top edge at height g between g*o/2 and 1 - g*o/2.
Region boundedness_region(const Rational& g, int o_clamped);

// {(x,y) in A : y < g} with A the open triangle of apex (1/2, 1/o).
Region stated_region(const Rational& g, int o_clamped);

std::optional<std::pair<Rational, Rational>> sharpness_report(const Rational& g, int o_clamped);

SmoothingReport assemble_report(const ExponentResult& exponents, const VanishingOrderResult& order, const BlockStructure& b);

enum class Verdict { bounded, unbounded, unknown };

std::string to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::unknown;
    std::string explanation;
    std::vector<std::string> caveats;
};

// p_recip in (0,1), beta > 0.
Classification classify_point(const Rational& p_recip, const Rational& beta, const SmoothingReport& report);

}  // namespace nsmooth

#endif
