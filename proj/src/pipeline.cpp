#include "nsmooth/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

namespace nsmooth {

std::vector<std::size_t> block_maxima(const Permutation& sigma, const BlockStructure& b)
{
    const std::size_t n = b.dimension();
    if (sigma.size() != n)
        throw std::invalid_argument("permutation length does not match dimension");
    std::vector<std::size_t> position(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sigma[i] >= n || position[sigma[i]] != n)
            throw std::invalid_argument("not a permutation");
        position[sigma[i]] = i;
    }
    std::vector<std::size_t> out;
    for (const auto& block : b.blocks()) {
        std::size_t best = 0;
        for (auto var : block)
            best = std::max(best, position[var]);
        out.push_back(best);
    }
    return out;
}

std::vector<Rational> beta_exponents(const Permutation& sigma, const BlockStructure& b)
{
    auto maxima = block_maxima(sigma, b);
    const std::size_t n = b.dimension();
    std::vector<Rational> beta(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational s = -static_cast<long>(j);
        for (std::size_t k = 0; k < maxima.size(); ++k)
            if (maxima[k] <= j)
                s += b.alphas()[k];
        if (s >= 1)
            throw NonIntegrableError("beta_" + std::to_string(j + 1) + " = " + to_string(s) +
                                     " >= 1: weight is not integrable in this ordering region");
        beta[j] = s;
    }
    return beta;
}

SubstitutedStar substituted_star(const StarFunction& star, const Permutation& sigma, const std::vector<Rational>& beta)
{
    const std::size_t n = star.dimension;
    if (star.vertex_exponents.empty())
        throw std::invalid_argument("star function has no terms");
    if (sigma.size() != n || beta.size() != n)
        throw std::invalid_argument("substitution data has wrong length");

    SubstitutedStar out;
    for (const auto& v : star.vertex_exponents) {
        ExponentVector w(n), x(n);
        Rational prefix = 0;
        for (std::size_t j = 0; j < n; ++j) {
            prefix += v[sigma[j]];
            w[j] = prefix;
            x[j] = prefix / (1 - beta[j]);
        }
        out.W.push_back(std::move(w));
        out.X.push_back(std::move(x));
    }
    out.star = star_function(NewtonPolyhedron::from_points(n, out.X));
    return out;
}

PermutationRecord analyze_permutation(const StarFunction& star, const BlockStructure& b, const Permutation& sigma)
{
    PermutationRecord rec;
    rec.sigma = sigma;
    rec.block_maxima = block_maxima(sigma, b);
    rec.beta = beta_exponents(sigma, b);
    auto sub = substituted_star(star, sigma, rec.beta);
    rec.W = std::move(sub.W);
    rec.X = std::move(sub.X);
    rec.s_triple_star = std::move(sub.star);

    auto np = NewtonPolyhedron::from_points(star.dimension, rec.s_triple_star.vertex_exponents);
    rec.d_l = newton_distance(np);
    rec.a_l = 1 / rec.d_l;
    Face face = minimal_face_at_diagonal(np);
    rec.log_dim = face.dim;
    rec.d_l_log = static_cast<int>(star.dimension) - 1 - face.dim;
    rec.diagonal_face_compact = face.is_compact;
    return rec;
}

ExponentResult aggregate_exponents(std::vector<PermutationRecord> records)
{
    if (records.empty())
        throw std::invalid_argument("no permutation records to aggregate");
    ExponentResult out;
    out.a0 = records.front().a_l;
    for (const auto& r : records)
        out.a0 = std::min(out.a0, r.a_l);
    out.d0 = 0;
    for (const auto& r : records) {
        if (r.a_l != out.a0)
            continue;
        out.d0 = std::max(out.d0, r.d_l_log);
        if (!r.diagonal_face_compact)
            out.noncompact_flag = true;
    }
    out.per_permutation = std::move(records);
    return out;
}

std::vector<Permutation> all_permutations(std::size_t n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

ExponentResult compute_exponents(const StarFunction& star, const BlockStructure& b)
{
    auto perms = all_permutations(star.dimension);
    std::vector<PermutationRecord> records(perms.size());
    std::vector<std::exception_ptr> failures(perms.size());
    const auto count = static_cast<std::ptrdiff_t>(perms.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        auto k = static_cast<std::size_t>(i);
        try {
            records[k] = analyze_permutation(star, b, perms[k]);
        } catch (...) {
            failures[k] = std::current_exception();
        }
    }
    // Report the first failing ordering so errors do not depend on scheduling.
    for (const auto& f : failures)
        if (f)
            std::rethrow_exception(f);
    return aggregate_exponents(std::move(records));
}

ExponentResult compute_exponents_serial(const StarFunction& star, const BlockStructure& b)
{
    std::vector<PermutationRecord> records;
    for (const auto& sigma : all_permutations(star.dimension))
        records.push_back(analyze_permutation(star, b, sigma));
    return aggregate_exponents(std::move(records));
}

}  // namespace nsmooth
