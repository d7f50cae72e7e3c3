#include "helpers.hpp"

#include "nsmooth/pipeline.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace nsmooth;
using testing::Ei;
using testing::P;
using testing::Q;

namespace {

std::set<ExponentVector> as_set(const std::vector<ExponentVector>& v) { return {v.begin(), v.end()}; }

ExponentResult run(const std::string& text, std::size_t n, const BlockStructure& b)
{
    return compute_exponents(star_function(P(text, n)), b);
}

BlockStructure singles(std::vector<Rational> alphas)
{
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        blocks.push_back({i});
    return BlockStructure(alphas.size(), blocks, alphas);
}

}  // namespace

TEST_CASE("block_maxima: examples")
{
    CHECK(block_maxima({0, 1}, BlockStructure::singletons(2)) == std::vector<std::size_t>{0, 1});
    CHECK(block_maxima({0, 1}, BlockStructure(2, {{0, 1}}, {Q("0")})) == std::vector<std::size_t>{1});
    // u1 = t3, u2 = t1, u3 = t2; blocks {t1,t3},{t2}
    CHECK(block_maxima({2, 0, 1}, BlockStructure(3, {{0, 2}, {1}}, {Q("0"), Q("0")})) ==
          std::vector<std::size_t>{1, 2});
}

TEST_CASE("beta_exponents: examples")
{
    CHECK(beta_exponents({0, 1}, BlockStructure::singletons(2)) == std::vector<Rational>{0, -1});
    CHECK(beta_exponents({0, 1}, singles({Q("1/2"), Q("1/2")})) == std::vector<Rational>{Q("1/2"), 0});
    CHECK(beta_exponents({0, 1}, BlockStructure(2, {{0, 1}}, {Q("1/2")})) == std::vector<Rational>{0, Q("-1/2")});
    CHECK_THROWS_AS(beta_exponents({0}, BlockStructure(1, {{0}}, {Q("1")})), NonIntegrableError);
}

TEST_CASE("substituted_star: examples")
{
    StarFunction sq{2, {Ei({2, 0}), Ei({0, 2})}};
    auto a = substituted_star(sq, {0, 1}, {0, -1});
    CHECK(as_set(a.W) == as_set({Ei({2, 2}), Ei({0, 2})}));
    CHECK(as_set(a.X) == as_set({Ei({2, 1}), Ei({0, 1})}));
    CHECK(a.star.vertex_exponents == std::vector<ExponentVector>{Ei({0, 1})});

    auto b = substituted_star(StarFunction{2, {Ei({2, 2})}}, {0, 1}, {0, -1});
    CHECK(b.W == std::vector<ExponentVector>{Ei({2, 4})});
    CHECK(b.X == std::vector<ExponentVector>{Ei({2, 2})});

    auto c = substituted_star(sq, {0, 1}, {Q("1/2"), 0});
    CHECK(as_set(c.X) == as_set({Ei({4, 2}), Ei({0, 2})}));
    CHECK(c.star.vertex_exponents == std::vector<ExponentVector>{Ei({0, 2})});
}

TEST_CASE("analyze_permutation: examples")
{
    auto a = analyze_permutation(star_function(P("t1^2+t2^2", 2)), BlockStructure::singletons(2), {0, 1});
    CHECK(a.d_l == 1);
    CHECK(a.a_l == 1);
    CHECK(a.log_dim == 1);
    CHECK(a.d_l_log == 0);

    auto b = analyze_permutation(star_function(P("t1^2*t2^2", 2)), BlockStructure::singletons(2), {0, 1});
    CHECK(b.X == std::vector<ExponentVector>{Ei({2, 2})});
    CHECK(b.d_l == 2);
    CHECK(b.a_l == Q("1/2"));
    CHECK(b.d_l_log == 1);
    CHECK(b.diagonal_face_compact);

    auto c = analyze_permutation(star_function(P("t1^2+t2^2", 2)), singles({Q("1/2"), Q("1/2")}), {0, 1});
    CHECK(c.s_triple_star.vertex_exponents == std::vector<ExponentVector>{Ei({0, 2})});
    CHECK(c.d_l == 2);
    CHECK(c.a_l == Q("1/2"));
    CHECK(c.d_l_log == 0);
    CHECK_FALSE(c.diagonal_face_compact);
}

TEST_CASE("aggregate: examples")
{
    auto a = run("t1^2+t2^2", 2, BlockStructure::singletons(2));
    CHECK(a.a0 == 1);
    CHECK(a.d0 == 0);
    CHECK(a.per_permutation.size() == 2);
    auto b = run("t1^2*t2^2", 2, BlockStructure::singletons(2));
    CHECK(b.a0 == Q("1/2"));
    CHECK(b.d0 == 1);
    auto c = run("t1^2+t2^2+t3^2", 3, BlockStructure::singletons(3));
    CHECK(c.a0 == Q("3/2"));
    CHECK(c.d0 == 0);
    CHECK(c.per_permutation.size() == 6);
    auto d = run("t1^2+t2^2", 2, singles({Q("1/2"), Q("1/2")}));
    CHECK(d.a0 == Q("1/2"));
    CHECK(d.d0 == 0);
    CHECK(d.noncompact_flag);
    auto e = run("t1^2+t2^2", 2, BlockStructure(2, {{0, 1}}, {Q("1")}));
    CHECK(e.a0 == Q("1/2"));
    CHECK(e.d0 == 0);
    CHECK_THROWS(aggregate_exponents({}));
}

TEST_CASE("record invariants: prefix sums, X = W/(1-beta), beta < 1")
{
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> al(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto star = star_function(testing::random_phase(rng, n, 2 + trial % 4, 5));
        std::vector<Rational> alphas;
        for (std::size_t i = 0; i < n; ++i)
            alphas.push_back(Rational(al(rng)) / 4);
        auto res = compute_exponents(star, singles(alphas));
        CHECK(res.per_permutation.size() == (n == 2 ? 2u : 6u));
        for (const auto& rec : res.per_permutation) {
            for (const auto& bj : rec.beta)
                CHECK(bj < 1);
            CHECK(sgn(rec.a_l) > 0);
            CHECK(rec.a_l * rec.d_l == 1);
            CHECK(rec.d_l_log >= 0);
            CHECK(rec.d_l_log <= static_cast<int>(n) - 1);
            REQUIRE(rec.W.size() == star.vertex_exponents.size());
            for (std::size_t i = 0; i < rec.W.size(); ++i) {
                Rational run_sum(0);
                for (std::size_t j = 0; j < n; ++j) {
                    run_sum += star.vertex_exponents[i][rec.sigma[j]];
                    CHECK(rec.W[i][j] == run_sum);
                    CHECK(rec.X[i][j] == rec.W[i][j] / (1 - rec.beta[j]));
                }
            }
        }
        Rational lo = res.per_permutation[0].a_l;
        for (const auto& rec : res.per_permutation)
            lo = std::min(lo, rec.a_l);
        CHECK(res.a0 == lo);
        int d = 0;
        for (const auto& rec : res.per_permutation)
            if (rec.a_l == lo)
                d = std::max(d, rec.d_l_log);
        CHECK(res.d0 == d);
    }
}

TEST_CASE("unweighted a0 is the reciprocal Newton distance")
{
    for (const auto& e : testing::catalog()) {
        auto p = P(e.text, e.n);
        auto res = compute_exponents(star_function(p), BlockStructure::singletons(e.n));
        CHECK_MESSAGE(res.a0 * newton_distance(build_newton_polyhedron(p)) == 1, e.text);
    }
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto p = testing::random_phase(rng, n, 1 + trial % 5, 6);
        auto res = compute_exponents(star_function(p), BlockStructure::singletons(n));
        CHECK(res.a0 * newton_distance(build_newton_polyhedron(p)) == 1);
    }
}

TEST_CASE("singleton blocks: a0 from exponents divided by 1 - alpha")
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> al(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto p = testing::random_phase(rng, n, 1 + trial % 5, 6);
        std::vector<Rational> alphas;
        for (std::size_t i = 0; i < n; ++i)
            alphas.push_back(Rational(al(rng)) / 6);
        std::vector<ExponentVector> scaled;
        for (const auto& v : p.exponents()) {
            ExponentVector w(n);
            for (std::size_t i = 0; i < n; ++i)
                w[i] = v[i] / (1 - alphas[i]);
            scaled.push_back(w);
        }
        auto d = newton_distance(NewtonPolyhedron::from_points(n, scaled));
        auto res = compute_exponents(star_function(p), singles(alphas));
        CHECK_MESSAGE(res.a0 * d == 1, to_string(p));
    }
}

TEST_CASE("one block, order two: a0 <= (n - alpha)/2")
{
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> al(0, 7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto p = testing::random_phase(rng, n, 2 + trial % 4, 5);
        Rational alpha = Rational(al(rng) * static_cast<long>(n)) / 8;
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        auto res = compute_exponents(star_function(p), BlockStructure(n, {all}, {alpha}));
        CHECK(res.a0 <= (Rational(static_cast<long>(n)) - alpha) / 2);
    }
}

TEST_CASE("relabeling variables leaves (a0, d0) unchanged")
{
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> al(0, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 3;
        auto p = testing::random_phase(rng, n, 2 + trial % 4, 5);
        std::vector<std::vector<std::size_t>> blocks = trial % 2 ? std::vector<std::vector<std::size_t>>{{0, 2}, {1}}
                                                                 : std::vector<std::vector<std::size_t>>{{0}, {1}, {2}};
        std::vector<Rational> alphas;
        for (std::size_t k = 0; k < blocks.size(); ++k)
            alphas.push_back(Rational(al(rng)) / 4);
        std::vector<std::size_t> pi{0, 1, 2};
        std::shuffle(pi.begin(), pi.end(), rng);
        std::vector<Term> moved;
        for (const auto& t : p.terms()) {
            ExponentVector e(n);
            for (std::size_t i = 0; i < n; ++i)
                e[pi[i]] = t.exponent[i];
            moved.push_back({t.coefficient, e});
        }
        auto moved_blocks = blocks;
        for (auto& blk : moved_blocks) {
            for (auto& v : blk)
                v = pi[v];
            std::sort(blk.begin(), blk.end());
        }
        auto r1 = compute_exponents(star_function(p), BlockStructure(n, blocks, alphas));
        auto r2 = compute_exponents(star_function(Polynomial(n, moved)), BlockStructure(n, moved_blocks, alphas));
        CHECK(r1.a0 == r2.a0);
        CHECK(r1.d0 == r2.d0);
    }
}

TEST_CASE("a0 is nonincreasing in each alpha")
{
    for (const auto& e : testing::catalog()) {
        auto star = star_function(P(e.text, e.n));
        for (std::size_t k = 0; k < e.n; ++k) {
            Rational prev;
            bool first = true;
            for (int step = 0; step < 4; ++step) {
                std::vector<Rational> alphas(e.n, Rational(1) / 8);
                alphas[k] = Rational(step) / 4;
                auto a0 = compute_exponents(star, singles(alphas)).a0;
                if (!first)
                    CHECK(a0 <= prev);
                prev = a0;
                first = false;
            }
        }
    }
}

TEST_CASE("parallel and serial pipelines agree")
{
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 2 + trial % 3;
        auto star = star_function(testing::random_phase(rng, n, 3, 4));
        auto b = BlockStructure::singletons(n);
        auto par = compute_exponents(star, b);
        auto ser = compute_exponents_serial(star, b);
        CHECK(par.a0 == ser.a0);
        CHECK(par.d0 == ser.d0);
        CHECK(par.noncompact_flag == ser.noncompact_flag);
        CHECK(par.per_permutation == ser.per_permutation);
    }
    CHECK(all_permutations(3).size() == 6);
    CHECK(all_permutations(3).front() == Permutation{0, 1, 2});
    CHECK(all_permutations(3).back() == Permutation{2, 1, 0});
}
