#ifndef NSMOOTH_NEWTON_HPP
#define NSMOOTH_NEWTON_HPP

#include "nsmooth/polynomial.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nsmooth {

// Supporting inequality <normal, x> >= offset, tight on a facet.
struct Facet {
    std::vector<Rational> normal;
    Rational offset;

    bool operator==(const Facet&) const = default;
    std::weak_ordering operator<=>(const Facet&) const = default;
};

// N(f) = conv(points) + R_+^n, held in both V-form (vertices, with the
// coordinate rays implicit) and H-form (facets). Immutable once built.
class NewtonPolyhedron {
public:
    static NewtonPolyhedron from_points(std::size_t n, std::vector<ExponentVector> points);

    std::size_t dimension() const { return n_; }
    const std::vector<ExponentVector>& candidate_points() const { return candidates_; }
    const std::vector<ExponentVector>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    // Exact membership test against the H-description.
    bool contains(std::span<const Rational> x) const;
    // Indices of facets whose hyperplane passes through x.
    std::vector<std::size_t> active_facets(std::span<const Rational> x) const;

private:
    std::size_t n_ = 0;
    std::vector<ExponentVector> candidates_;
    std::vector<ExponentVector> vertices_;
    std::vector<Facet> facets_;
};

NewtonPolyhedron build_newton_polyhedron(const Polynomial& p);

StarFunction star_function(const Polynomial& p);
StarFunction star_function(const NewtonPolyhedron& np);

// Facets of conv(points) + R_+^n by double description over Q.
std::vector<Facet> facets_of_hull_plus_orthant(std::size_t n, std::span<const ExponentVector> points);

// Exact LP feasibility of x = sum lambda_i g_i + s, lambda in the simplex, s >= 0.
bool in_hull_plus_orthant(std::span<const ExponentVector> generators, std::span<const Rational> x);

// min{c : (c,...,c) in N(f)} by exact LP.
Rational newton_distance(const NewtonPolyhedron& np);

struct Face {
    std::vector<std::size_t> active_facets;
    std::vector<std::size_t> generating_vertices;   // indices into vertices()
    std::vector<std::size_t> recession_directions;  // coordinate axes
    int dim = 0;
    bool is_compact = true;
    std::vector<Rational> normal_witness;  // <w,.> is minimized over N(f) exactly on the face

    bool operator==(const Face&) const = default;
};

// The face cut out by a set of facets; an empty set gives N(f) itself.
Face face_from_active_set(const NewtonPolyhedron& np, std::vector<std::size_t> active);

// Minimal face (compact or not) containing the diagonal point (d,...,d).
Face minimal_face_at_diagonal(const NewtonPolyhedron& np);

// All faces with a strictly positive normal; vertices included as 0-faces.
// Ordered by dimension, then by generating vertex set.
std::vector<Face> enumerate_compact_faces(const NewtonPolyhedron& np);

struct MajorizationReport {
    bool passed = false;
    double c_hat = 0.0;
    std::vector<double> per_scale;  // max ratio per sampling scale, coarse to fine
    std::optional<std::vector<double>> counterexample;
};

// Samples |f|/f* on (-r,r)^n at radii r, r/16, r/256, r/4096.
MajorizationReport check_star_majorization(const Polynomial& p, const StarFunction& s, double radius, std::size_t count,
                                           std::uint64_t seed = 1);

}  // namespace nsmooth

#endif
