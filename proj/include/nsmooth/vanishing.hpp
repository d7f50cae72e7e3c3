#ifndef NSMOOTH_VANISHING_HPP
#define NSMOOTH_VANISHING_HPP

#include "nsmooth/newton.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nsmooth {

enum class OrderMode { exact_2d, sampled_lower_bound, user_override };

std::string to_string(OrderMode mode);

struct VanishingWitness {
    std::vector<ExponentVector> face_vertices;  // generating vertices of the face
    std::vector<double> point;                  // torus point (sampled) or {w} for the 2D edge parameter
    std::string location;                       // human-readable description of the zero
    int multiplicity = 0;
};

struct VanishingOrderResult {
    int value = 0;
    OrderMode mode = OrderMode::exact_2d;
    std::vector<VanishingWitness> witnesses;
    // Sampled mode only: bracket when the slope did not settle on an integer.
    std::optional<std::pair<int, int>> interval;

    // max(o, 2), the form used by the boundedness region.
    int clamped() const { return value < 2 ? 2 : value; }
};

class FaceError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Sum of p's terms whose exponents lie on F. F must be a compact face of N(p).
Polynomial face_polynomial(const Polynomial& p, const NewtonPolyhedron& np, const Face& face);

// n = 2, integer exponents: exact maximal multiplicity of a torus zero of any
// edge polynomial, via square-free decomposition and Sturm counts over the
// four sign charts.
VanishingOrderResult vanishing_order_exact_2d(const Polynomial& p);

struct SamplingOptions {
    std::size_t lines_per_face = 24;
    std::size_t samples_per_line = 400;
    std::size_t directions = 6;
    std::uint64_t seed = 7;
};

// Heuristic lower bound for n >= 2: locate near-zeros of each face
// polynomial along random lines and read the order off the log-log slope of
// |f_F| along random directions through them.
VanishingOrderResult vanishing_order_sampled(const Polynomial& p, const SamplingOptions& options = {});

VanishingOrderResult order_of_S(const Polynomial& p, std::optional<int> override_value = std::nullopt);

}  // namespace nsmooth

#endif
