#include "helpers.hpp"

#include "nsmooth/exact_lp.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace nsmooth;
using testing::Ei;
using testing::P;
using testing::Q;

namespace {

std::set<ExponentVector> as_set(const std::vector<ExponentVector>& v) { return {v.begin(), v.end()}; }

// For n = 2: the diagonal first meets conv(points)+R_+^2 either at a point
// (max of its coordinates) or where a segment between two points crosses x=y.
Rational distance_2d_bruteforce(const std::vector<ExponentVector>& pts)
{
    Rational best = max_of(pts[0]);
    for (const auto& p : pts)
        best = std::min(best, max_of(p));
    for (const auto& p : pts)
        for (const auto& q : pts) {
            Rational dp = p[0] - p[1], dq = q[0] - q[1];
            if (sgn(dp) <= 0 || sgn(dq) >= 0)
                continue;
            Rational t = dp / (dp - dq);
            Rational x = p[0] + t * (q[0] - p[0]);
            best = std::min(best, x);
        }
    return best;
}

// Distance read off the H-form: (c,..,c) is inside iff c * sum(w) >= offset
// for every facet.
Rational distance_from_facets(const NewtonPolyhedron& np)
{
    Rational best(0);
    for (const auto& f : np.facets()) {
        Rational s(0);
        for (const auto& w : f.normal)
            s += w;
        if (sgn(s) > 0)
            best = std::max(best, Rational(f.offset / s));
    }
    return best;
}

bool satisfies_all(const NewtonPolyhedron& np, const ExponentVector& x)
{
    for (const auto& f : np.facets()) {
        Rational v(0);
        for (std::size_t i = 0; i < x.size(); ++i)
            v += f.normal[i] * x[i];
        if (v < f.offset)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("vertices: examples")
{
    CHECK(as_set(star_function(P("t1^2 - 2*t1*t2 + t2^2", 2)).vertex_exponents) ==
          as_set({Ei({2, 0}), Ei({0, 2})}));
    CHECK(star_function(P("t1^2*t2^2", 2)).vertex_exponents == std::vector<ExponentVector>{Ei({2, 2})});
    CHECK(as_set(star_function(P("t1^2+t2^2+t3^2", 3)).vertex_exponents) ==
          as_set({Ei({2, 0, 0}), Ei({0, 2, 0}), Ei({0, 0, 2})}));
    CHECK(as_set(star_function(P("t1^4 + t1*t2 + t2^4", 2)).vertex_exponents) ==
          as_set({Ei({4, 0}), Ei({1, 1}), Ei({0, 4})}));
    // (2,2) and (5,0) are dominated
    CHECK(as_set(star_function(P("t1^4 + t1*t2 + t2^4 + t1^2*t2^2 + t1^5", 2)).vertex_exponents) ==
          as_set({Ei({4, 0}), Ei({1, 1}), Ei({0, 4})}));
}

TEST_CASE("newton_distance: examples")
{
    CHECK(newton_distance(build_newton_polyhedron(P("t1^2+t2^2", 2))) == 1);
    CHECK(newton_distance(build_newton_polyhedron(P("t1^2", 1))) == 2);
    for (std::size_t n = 1; n <= 5; ++n) {
        std::string text;
        for (std::size_t i = 1; i <= n; ++i)
            text += (i > 1 ? " + t" : "t") + std::to_string(i) + "^2";
        CHECK(newton_distance(build_newton_polyhedron(P(text, n))) == Rational(2) / static_cast<long>(n));
    }
    CHECK(newton_distance(build_newton_polyhedron(P("t1^4 + t1*t2 + t2^4", 2))) == 1);
    CHECK(newton_distance(build_newton_polyhedron(P("t1^2*t2^4", 2))) == 4);
    CHECK(newton_distance(build_newton_polyhedron(P("t1^2*t2^4 + t1^6", 2))) == Q("3"));
}

TEST_CASE("newton_distance agrees with the 2D brute force and the facet formula")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
        auto p = testing::random_phase(rng, 2, 1 + trial % 6, 7);
        auto np = build_newton_polyhedron(p);
        auto d = newton_distance(np);
        CHECK(d == distance_2d_bruteforce(p.exponents()));
        CHECK(d == distance_from_facets(np));
    }
    for (int trial = 0; trial < 40; ++trial) {
        auto p = testing::random_phase(rng, 3, 2 + trial % 5, 5);
        auto np = build_newton_polyhedron(p);
        CHECK(newton_distance(np) == distance_from_facets(np));
    }
}

TEST_CASE("newton_distance of a monomial is its largest exponent")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> e(0, 9), den(1, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + trial % 4;
        ExponentVector v(n);
        for (auto& x : v)
            x = Rational(e(rng), den(rng));
        v[0] += 1;
        for (auto& x : v)
            x.canonicalize();
        auto np = NewtonPolyhedron::from_points(n, {v});
        CHECK(newton_distance(np) == max_of(v));
    }
}

TEST_CASE("adding a term never increases the distance")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto p = testing::random_phase(rng, n, 3, 6);
        auto extra = testing::random_phase(rng, n, 1, 6);
        auto pts = p.exponents();
        auto before = newton_distance(NewtonPolyhedron::from_points(n, pts));
        pts.push_back(extra.terms()[0].exponent);
        auto after = newton_distance(NewtonPolyhedron::from_points(n, pts));
        CHECK(after <= before);
    }
}

TEST_CASE("V/H consistency")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> w(0, 20), pick(0, 7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto p = testing::random_phase(rng, n, 2 + trial % 5, 6);
        auto np = build_newton_polyhedron(p);
        for (const auto& v : np.vertices())
            CHECK(satisfies_all(np, v));
        for (const auto& c : np.candidate_points())
            CHECK(satisfies_all(np, c));
        const auto& vs = np.vertices();
        for (int k = 0; k < 20; ++k) {
            // random convex combination plus a random orthant shift
            std::vector<Rational> lam(vs.size());
            Rational total(0);
            for (auto& l : lam) {
                l = w(rng) + 1;
                total += l;
            }
            ExponentVector x(n, Rational(0));
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t a = 0; a < n; ++a)
                    x[a] += lam[i] / total * vs[i][a];
            for (auto& xa : x)
                xa += Rational(pick(rng), 4);
            CHECK(satisfies_all(np, x));
            CHECK(np.contains(x));
            CHECK(in_hull_plus_orthant(vs, x));
            // push below some facet: step against its normal
            const auto& f = np.facets()[static_cast<std::size_t>(w(rng)) % np.facets().size()];
            Rational v(0), nn(0);
            for (std::size_t a = 0; a < n; ++a) {
                v += f.normal[a] * x[a];
                nn += f.normal[a] * f.normal[a];
            }
            ExponentVector y = x;
            Rational step = (v - f.offset + 1) / nn;
            bool nonneg = true;
            for (std::size_t a = 0; a < n; ++a) {
                y[a] -= step * f.normal[a];
                nonneg = nonneg && sgn(y[a]) >= 0;
            }
            if (nonneg) {
                CHECK_FALSE(np.contains(y));
                CHECK_FALSE(in_hull_plus_orthant(vs, y));
            }
        }
    }
}

TEST_CASE("minimal_face_at_diagonal: examples and tight facets")
{
    auto a = minimal_face_at_diagonal(build_newton_polyhedron(P("t1^2*t2^2", 2)));
    CHECK(a.dim == 0);
    CHECK(a.is_compact);
    auto b_np = build_newton_polyhedron(P("t1^2+t2^2", 2));
    auto b = minimal_face_at_diagonal(b_np);
    CHECK(b.dim == 1);
    CHECK(b.is_compact);
    CHECK(b.generating_vertices.size() == 2);
    auto c = minimal_face_at_diagonal(build_newton_polyhedron(P("t1^2", 2)));
    CHECK(c.dim == 1);
    CHECK_FALSE(c.is_compact);

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto np = build_newton_polyhedron(testing::random_phase(rng, n, 2 + trial % 4, 6));
        auto d = newton_distance(np);
        ExponentVector diag(n, d);
        auto face = minimal_face_at_diagonal(np);
        std::vector<std::size_t> tight;
        for (std::size_t k = 0; k < np.facets().size(); ++k) {
            Rational v(0);
            for (std::size_t a = 0; a < n; ++a)
                v += np.facets()[k].normal[a] * d;
            if (v == np.facets()[k].offset)
                tight.push_back(k);
        }
        CHECK(face.active_facets == tight);
        CHECK(face.active_facets == np.active_facets(diag));
    }
}

TEST_CASE("enumerate_compact_faces: counts and invariants")
{
    CHECK(enumerate_compact_faces(build_newton_polyhedron(P("t1^2+t2^2", 2))).size() == 3);
    CHECK(enumerate_compact_faces(build_newton_polyhedron(P("t1^2*t2^2", 2))).size() == 1);
    CHECK(enumerate_compact_faces(build_newton_polyhedron(P("t1^4 + t1*t2 + t2^4", 2))).size() == 5);
    // simplex in 3D: 3 vertices, 3 edges, 1 triangle
    CHECK(enumerate_compact_faces(build_newton_polyhedron(P("t1^2+t2^2+t3^2", 3))).size() == 7);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto np = build_newton_polyhedron(testing::random_phase(rng, n, 2 + trial % 5, 6));
        auto faces = enumerate_compact_faces(np);
        std::set<std::size_t> seen;
        for (const auto& f : faces) {
            CHECK(f.is_compact);
            REQUIRE(f.normal_witness.size() == n);
            for (const auto& w : f.normal_witness)
                CHECK(sgn(w) > 0);
            seen.insert(f.generating_vertices.begin(), f.generating_vertices.end());
            // the witness is minimized exactly on the generating vertices
            Rational lo;
            bool first = true;
            for (const auto& v : np.vertices()) {
                Rational s(0);
                for (std::size_t a = 0; a < n; ++a)
                    s += f.normal_witness[a] * v[a];
                if (first || s < lo)
                    lo = s;
                first = false;
            }
            for (std::size_t i = 0; i < np.vertices().size(); ++i) {
                Rational s(0);
                for (std::size_t a = 0; a < n; ++a)
                    s += f.normal_witness[a] * np.vertices()[i][a];
                bool generating = std::find(f.generating_vertices.begin(), f.generating_vertices.end(), i) !=
                                  f.generating_vertices.end();
                CHECK((s == lo) == generating);
            }
        }
        CHECK(seen.size() == np.vertices().size());
    }
}

TEST_CASE("check_star_majorization: examples")
{
    auto sq = P("t1^2+t2^2", 2);
    auto r1 = check_star_majorization(sq, star_function(sq), 1.0, 2000);
    CHECK(r1.passed);
    CHECK(r1.c_hat == doctest::Approx(1.0));

    auto diff = P("t1^2 - 2*t1*t2 + t2^2", 2);
    auto r2 = check_star_majorization(diff, star_function(diff), 1.0, 2000);
    CHECK(r2.passed);
    CHECK(r2.c_hat <= 2.0 + 1e-12);
    CHECK(r2.c_hat > 1.5);

    auto cross = P("t1*t2", 2);
    auto r3 = check_star_majorization(cross, star_function(cross), 0.5, 2000);
    CHECK(r3.passed);
    CHECK(r3.c_hat == doctest::Approx(1.0));

    // A deliberately wrong star function is caught.
    StarFunction wrong{2, {Ei({4, 0}), Ei({0, 4})}};
    auto r4 = check_star_majorization(sq, wrong, 1.0, 2000);
    CHECK_FALSE(r4.passed);
    CHECK(r4.counterexample.has_value());
}

TEST_CASE("exact_lp: small problems")
{
    // min -x1 - x2 s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
    RationalMatrix a{{1, 2, 1, 0}, {3, 1, 0, 1}};
    auto r = solve_lp(a, {4, 6}, {-1, -1, 0, 0});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Q("-14/5"));
    CHECK(r.x[0] == Q("8/5"));
    CHECK(r.x[1] == Q("6/5"));

    CHECK(solve_lp({{1, 1}}, {-1}, {0, 0}).status == LpStatus::infeasible);
    CHECK(solve_lp({{1, -1}}, {0}, {-1, 0}).status == LpStatus::unbounded);

    CHECK(exact_rank({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}) == 2);
    CHECK(exact_rank({{Q("1/2"), 0}, {0, Q("1/3")}}) == 2);
}
