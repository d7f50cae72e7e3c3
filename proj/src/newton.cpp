#include "nsmooth/newton.hpp"

#include "nsmooth/exact_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace nsmooth {

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// One ray of the polar cone {(w, c) : w >= 0, <w, v> - c >= 0 for all points}
// together with the set of processed constraint rows tight on it.
struct ConeRay {
    std::vector<Rational> coords;  // (w_1..w_n, c)
    std::vector<bool> tight;
};

bool contains_all(const std::vector<bool>& super, const std::vector<bool>& sub)
{
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (sub[i] && !super[i])
            return false;
    return true;
}

}  // namespace

std::vector<Facet> facets_of_hull_plus_orthant(std::size_t n, std::span<const ExponentVector> points)
{
    if (points.empty())
        throw std::invalid_argument("Newton polyhedron needs at least one point");

    // Constraint rows: e_i for the orthant (rows 0..n-1), then (v, -1) per point.
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> r(n + 1, Rational(0));
        r[i] = 1;
        rows.push_back(std::move(r));
    }
    for (const auto& v : points) {
        std::vector<Rational> r(v.begin(), v.end());
        r.push_back(Rational(-1));
        rows.push_back(std::move(r));
    }
    const std::size_t total = rows.size();
    const std::size_t ambient = n + 1;

    // The first n+1 rows [I 0; v0 -1] form an involution, so its columns are
    // the extreme rays of the initial simplicial cone.
    std::vector<ConeRay> rays;
    for (std::size_t j = 0; j <= n; ++j) {
        ConeRay ray;
        ray.coords.assign(ambient, Rational(0));
        if (j < n) {
            ray.coords[j] = 1;
            ray.coords[n] = points[0][j];
        } else {
            ray.coords[n] = -1;
        }
        ray.tight.assign(total, false);
        for (std::size_t r = 0; r <= n; ++r)
            ray.tight[r] = r != j;
        rays.push_back(std::move(ray));
    }

    for (std::size_t row = n + 1; row < total; ++row) {
        std::vector<Rational> value(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k)
            value[k] = dot(rows[row], rays[k].coords);

        std::vector<ConeRay> next;
        std::vector<std::size_t> positive, negative;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            int s = sgn(value[k]);
            if (s >= 0) {
                ConeRay kept = rays[k];
                kept.tight[row] = s == 0;
                next.push_back(std::move(kept));
            }
            if (s > 0)
                positive.push_back(k);
            if (s < 0)
                negative.push_back(k);
        }

        for (auto p : positive) {
            for (auto q : negative) {
                std::vector<bool> common(total, false);
                std::size_t count = 0;
                for (std::size_t r = 0; r < row; ++r)
                    if (rays[p].tight[r] && rays[q].tight[r]) {
                        common[r] = true;
                        ++count;
                    }
                if (count + 2 < ambient)
                    continue;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
                    if (k != p && k != q && contains_all(rays[k].tight, common))
                        adjacent = false;
                if (!adjacent)
                    continue;
                ConeRay fresh;
                fresh.coords.resize(ambient);
                for (std::size_t i = 0; i < ambient; ++i)
                    fresh.coords[i] = value[p] * rays[q].coords[i] - value[q] * rays[p].coords[i];
                make_primitive(fresh.coords);
                fresh.tight = common;
                fresh.tight[row] = true;
                next.push_back(std::move(fresh));
            }
        }
        rays = std::move(next);
    }

    std::vector<Facet> facets;
    for (auto& ray : rays) {
        bool trivial = std::all_of(ray.coords.begin(), ray.coords.begin() + static_cast<std::ptrdiff_t>(n),
                                   [](const Rational& x) { return sgn(x) == 0; });
        if (trivial)
            continue;
        make_primitive(ray.coords);
        Facet f;
        f.offset = ray.coords[n];
        f.normal.assign(ray.coords.begin(), ray.coords.begin() + static_cast<std::ptrdiff_t>(n));
        facets.push_back(std::move(f));
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return facets;
}

bool in_hull_plus_orthant(std::span<const ExponentVector> generators, std::span<const Rational> x)
{
    if (generators.empty())
        return false;
    const std::size_t n = x.size();
    const std::size_t k = generators.size();
    RationalMatrix a(n + 1, std::vector<Rational>(k + n, Rational(0)));
    std::vector<Rational> b(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i)
            a[j][i] = generators[i][j];
        a[j][k + j] = 1;
        b[j] = x[j];
    }
    for (std::size_t i = 0; i < k; ++i)
        a[n][i] = 1;
    b[n] = 1;
    return solve_lp(a, b, std::vector<Rational>(k + n, Rational(0))).status != LpStatus::infeasible;
}

NewtonPolyhedron NewtonPolyhedron::from_points(std::size_t n, std::vector<ExponentVector> points)
{
    if (points.empty())
        throw std::invalid_argument("Newton polyhedron needs at least one point");
    for (const auto& p : points) {
        if (p.size() != n)
            throw std::invalid_argument("point length does not match dimension");
        for (const auto& e : p)
            if (sgn(e) < 0)
                throw std::invalid_argument("negative exponent in Newton polyhedron input");
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    NewtonPolyhedron np;
    np.n_ = n;
    np.candidates_ = points;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<ExponentVector> others;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i)
                others.push_back(points[j]);
        if (!in_hull_plus_orthant(others, points[i]))
            np.vertices_.push_back(points[i]);
    }
    np.facets_ = facets_of_hull_plus_orthant(n, np.vertices_);
    return np;
}

bool NewtonPolyhedron::contains(std::span<const Rational> x) const
{
    for (const auto& f : facets_)
        if (dot(f.normal, x) < f.offset)
            return false;
    return true;
}

std::vector<std::size_t> NewtonPolyhedron::active_facets(std::span<const Rational> x) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < facets_.size(); ++i)
        if (dot(facets_[i].normal, x) == facets_[i].offset)
            out.push_back(i);
    return out;
}

NewtonPolyhedron build_newton_polyhedron(const Polynomial& p)
{
    return NewtonPolyhedron::from_points(p.dimension(), p.exponents());
}

StarFunction star_function(const NewtonPolyhedron& np)
{
    return StarFunction{np.dimension(), np.vertices()};
}

StarFunction star_function(const Polynomial& p)
{
    return star_function(build_newton_polyhedron(p));
}

Rational newton_distance(const NewtonPolyhedron& np)
{
    const std::size_t n = np.dimension();
    const auto& gens = np.vertices();
    const std::size_t k = gens.size();
    // Variables: lambda (k), slack s (n), c (1).
    RationalMatrix a(n + 1, std::vector<Rational>(k + n + 1, Rational(0)));
    std::vector<Rational> b(n + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i)
            a[j][i] = gens[i][j];
        a[j][k + j] = 1;
        a[j][k + n] = -1;
    }
    for (std::size_t i = 0; i < k; ++i)
        a[n][i] = 1;
    b[n] = 1;
    std::vector<Rational> cost(k + n + 1, Rational(0));
    cost[k + n] = 1;
    auto res = solve_lp(a, b, cost);
    if (res.status != LpStatus::optimal)
        throw std::logic_error("Newton distance LP did not reach an optimum");
    return res.objective;
}

Face face_from_active_set(const NewtonPolyhedron& np, std::vector<std::size_t> active)
{
    const std::size_t n = np.dimension();
    std::sort(active.begin(), active.end());
    Face face;
    face.active_facets = active;

    RationalMatrix normals;
    face.normal_witness.assign(n, Rational(0));
    for (auto idx : active) {
        const auto& f = np.facets()[idx];
        normals.push_back(f.normal);
        for (std::size_t i = 0; i < n; ++i)
            face.normal_witness[i] += f.normal[i];
    }
    make_primitive(face.normal_witness);

    for (std::size_t v = 0; v < np.vertices().size(); ++v) {
        bool on_face = std::all_of(active.begin(), active.end(), [&](std::size_t idx) {
            const auto& f = np.facets()[idx];
            return dot(f.normal, np.vertices()[v]) == f.offset;
        });
        if (on_face)
            face.generating_vertices.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        bool free_axis = std::all_of(active.begin(), active.end(),
                                     [&](std::size_t idx) { return sgn(np.facets()[idx].normal[i]) == 0; });
        if (free_axis)
            face.recession_directions.push_back(i);
    }
    face.dim = static_cast<int>(n) - static_cast<int>(exact_rank(normals));
    face.is_compact = face.recession_directions.empty();
    return face;
}

Face minimal_face_at_diagonal(const NewtonPolyhedron& np)
{
    Rational d = newton_distance(np);
    std::vector<Rational> diag(np.dimension(), d);
    return face_from_active_set(np, np.active_facets(diag));
}

std::vector<Face> enumerate_compact_faces(const NewtonPolyhedron& np)
{
    std::vector<std::vector<std::size_t>> vertex_sets;
    for (const auto& v : np.vertices())
        vertex_sets.push_back(np.active_facets(v));

    // Every face's active set is an intersection of vertex active sets.
    std::set<std::vector<std::size_t>> closure(vertex_sets.begin(), vertex_sets.end());
    std::vector<std::vector<std::size_t>> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> fresh;
        for (const auto& x : frontier)
            for (const auto& y : vertex_sets) {
                std::vector<std::size_t> meet;
                std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(meet));
                if (!meet.empty() && closure.insert(meet).second)
                    fresh.push_back(std::move(meet));
            }
        frontier = std::move(fresh);
    }

    std::vector<Face> faces;
    for (const auto& active : closure) {
        Face f = face_from_active_set(np, active);
        if (f.is_compact)
            faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim)
            return a.dim < b.dim;
        return a.generating_vertices < b.generating_vertices;
    });
    return faces;
}

MajorizationReport check_star_majorization(const Polynomial& p, const StarFunction& s, double radius, std::size_t count,
                                           std::uint64_t seed)
{
    if (!(radius > 0.0 && radius <= 1.0))
        throw std::invalid_argument("sample radius must lie in (0,1]");
    const std::size_t n = p.dimension();
    std::mt19937_64 rng(seed);
    auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    MajorizationReport report;
    std::vector<double> point(n), worst_point;
    double scale = radius;
    for (int level = 0; level < 4; ++level, scale /= 16.0) {
        double level_max = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            for (auto& x : point)
                x = (2.0 * uniform() - 1.0) * scale;
            double star = evaluate_star(s, point);
            double value = std::fabs(evaluate_polynomial(p, point));
            if (star == 0.0) {
                if (value == 0.0)
                    continue;
                report.per_scale.push_back(std::numeric_limits<double>::infinity());
                report.c_hat = std::numeric_limits<double>::infinity();
                report.counterexample = point;
                return report;
            }
            double ratio = value / star;
            if (ratio > level_max) {
                level_max = ratio;
                if (ratio >= report.c_hat)
                    worst_point = point;
            }
            report.c_hat = std::max(report.c_hat, ratio);
        }
        report.per_scale.push_back(level_max);
    }

    double coarse = *std::max_element(report.per_scale.begin(), report.per_scale.end() - 1);
    report.passed = std::isfinite(report.c_hat) && report.per_scale.back() <= 2.0 * coarse + 1e-12;
    if (!report.passed)
        report.counterexample = worst_point;
    return report;
}

}  // namespace nsmooth
