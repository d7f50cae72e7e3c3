#include "nsmooth/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

namespace nsmooth {

namespace {

constexpr std::size_t kMaxDim = 8;
using Point = std::array<double, kMaxDim>;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b)
{
    return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

// 53-bit uniform in [0,1); avoids implementation-defined distributions so
// sequences are identical across standard libraries.
double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double radical_inverse(std::uint64_t k, std::uint64_t base)
{
    double inv = 1.0 / static_cast<double>(base), f = inv, out = 0.0;
    while (k > 0) {
        out += f * static_cast<double>(k % base);
        k /= base;
        f *= inv;
    }
    return out;
}

constexpr std::array<std::uint64_t, kMaxDim> kPrimes{2, 3, 5, 7, 11, 13, 17, 19};

// Sum over terms of prod t_i^x_i for t in the closed positive orthant.
class FastStar {
public:
    explicit FastStar(const StarFunction& s) : n_(s.dimension)
    {
        for (const auto& v : s.vertex_exponents) {
            std::vector<std::pair<std::size_t, double>> term;
            for (std::size_t i = 0; i < n_; ++i)
                if (sgn(v[i]) != 0)
                    term.emplace_back(i, to_double(v[i]));
            terms_.push_back(std::move(term));
        }
    }

    double operator()(const Point& t) const
    {
        Point lg{};
        for (std::size_t i = 0; i < n_; ++i)
            lg[i] = t[i] > 0 ? std::log(t[i]) : -std::numeric_limits<double>::infinity();
        double s = 0.0;
        for (const auto& term : terms_) {
            double e = 0.0;
            for (const auto& [i, x] : term)
                e += x * lg[i];
            s += std::exp(e);
        }
        return s;
    }

private:
    std::size_t n_;
    std::vector<std::vector<std::pair<std::size_t, double>>> terms_;
};

struct Box {
    Point lo{};
    Point hi{};
};

struct SublevelContext {
    FastStar star;
    std::size_t n;
    double eps;
    std::size_t qmc;
    std::uint64_t seed;
    std::vector<double> single_alpha;  // alpha for variables in 1-variable blocks
    std::vector<std::pair<std::vector<std::size_t>, double>> multi;  // larger blocks with alpha != 0
    std::vector<bool> in_multi;
    std::size_t evals_per_box_weight;  // 0 when the weight integral is exact
};

SublevelContext make_context(const StarFunction& star, const BlockStructure& b, double eps, std::size_t qmc,
                             std::uint64_t seed)
{
    SublevelContext ctx{FastStar(star), star.dimension, eps, qmc, seed, std::vector<double>(star.dimension, 0.0), {},
                        std::vector<bool>(star.dimension, false), 0};
    for (std::size_t k = 0; k < b.block_count(); ++k) {
        double a = to_double(b.alphas()[k]);
        if (b.block_size(k) == 1) {
            ctx.single_alpha[b.blocks()[k][0]] = a;
        } else if (a != 0.0) {
            ctx.multi.emplace_back(b.blocks()[k], a);
            for (auto i : b.blocks()[k])
                ctx.in_multi[i] = true;
        }
    }
    ctx.evals_per_box_weight = ctx.multi.empty() ? 0 : qmc;
    return ctx;
}

// Integral of t^-a over [lo, hi].
double power_integral(double lo, double hi, double a)
{
    if (a == 0.0)
        return hi - lo;
    return (std::pow(hi, 1.0 - a) - std::pow(lo, 1.0 - a)) / (1.0 - a);
}

// Inverse CDF of the density proportional to t^-a on [lo, hi].
double power_sample(double lo, double hi, double a, double u)
{
    if (a == 0.0)
        return lo + u * (hi - lo);
    double p = 1.0 - a;
    double l = std::pow(lo, p), h = std::pow(hi, p);
    return std::pow(l + u * (h - l), 1.0 / p);
}

double multi_weight(const SublevelContext& ctx, const Point& t)
{
    double w = 1.0;
    for (const auto& [vars, a] : ctx.multi) {
        double norm2 = 0.0;
        for (auto i : vars)
            norm2 += t[i] * t[i];
        w *= std::pow(norm2, -0.5 * a);
    }
    return w;
}

// Exact part of the box weight: singleton axes and unweighted axes.
double separable_weight(const SublevelContext& ctx, const Box& box)
{
    double w = 1.0;
    for (std::size_t i = 0; i < ctx.n; ++i)
        w *= ctx.in_multi[i] ? (box.hi[i] - box.lo[i]) : power_integral(box.lo[i], box.hi[i], ctx.single_alpha[i]);
    return w;
}

// Sampling is split into independent replicates, each with its own random
// shift; their spread gives the reported error.
constexpr std::size_t kReplicates = 4;

struct QmcResult {
    double weight = 0.0;                          // estimate of the box weight
    std::array<double, kReplicates> measure{};    // per-replicate weighted sublevel part
};

// Randomized Halton points; singleton axes are drawn from their weight
// density, so only the block weights of larger blocks enter the average.
QmcResult qmc_box(const SublevelContext& ctx, const Box& box, std::uint64_t id, bool with_indicator)
{
    std::mt19937_64 rng(mix(ctx.seed, id));
    const std::size_t per = ctx.qmc / kReplicates;
    double sum_w = 0.0;
    QmcResult out;
    Point t{};
    for (std::size_t g = 0; g < kReplicates; ++g) {
        Point shift{};
        for (std::size_t i = 0; i < ctx.n; ++i)
            shift[i] = unit(rng);
        double sum_in = 0.0;
        for (std::size_t k = 1; k <= per; ++k) {
            for (std::size_t i = 0; i < ctx.n; ++i) {
                double u = radical_inverse(k, kPrimes[i]) + shift[i];
                if (u >= 1.0)
                    u -= 1.0;
                t[i] = ctx.in_multi[i] ? box.lo[i] + u * (box.hi[i] - box.lo[i])
                                       : power_sample(box.lo[i], box.hi[i], ctx.single_alpha[i], u);
            }
            double w = multi_weight(ctx, t);
            sum_w += w;
            if (with_indicator && ctx.star(t) < ctx.eps)
                sum_in += w;
        }
        out.measure[g] = sum_in / static_cast<double>(per);
    }
    double base = separable_weight(ctx, box);
    out.weight = base * sum_w / static_cast<double>(per * kReplicates);
    for (auto& m : out.measure)
        m *= base;
    return out;
}

double box_weight(const SublevelContext& ctx, const Box& box, std::uint64_t id)
{
    if (ctx.multi.empty())
        return separable_weight(ctx, box);
    return qmc_box(ctx, box, id, false).weight;
}

enum class BoxClass { inside, outside, boundary };

BoxClass classify(const SublevelContext& ctx, const Box& box, std::size_t& evals)
{
    ++evals;
    if (ctx.star(box.hi) < ctx.eps)
        return BoxClass::inside;
    ++evals;
    if (ctx.star(box.lo) >= ctx.eps)
        return BoxClass::outside;
    return BoxClass::boundary;
}

struct Tally {
    double inside = 0.0;
    std::array<double, kReplicates> boundary{};
    double boundary_weight = 0.0;
    std::size_t evals = 0;
};

Box top_box(std::size_t index, std::size_t n, int depth, double r)
{
    Box box;
    const auto radix = static_cast<std::size_t>(depth) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        auto level = static_cast<int>(index % radix);
        index /= radix;
        box.hi[i] = std::ldexp(r, -level);
        box.lo[i] = level == depth ? 0.0 : std::ldexp(r, -level - 1);
    }
    return box;
}

// First pass over one top box: classification and, if inside, its weight.
Tally first_pass(const SublevelContext& ctx, const Box& box, std::uint64_t id, BoxClass& cls)
{
    Tally t;
    cls = classify(ctx, box, t.evals);
    if (cls == BoxClass::inside) {
        t.inside = box_weight(ctx, box, id);
        t.evals += ctx.evals_per_box_weight;
    }
    return t;
}

// Breadth-first bisection of a straddling box within a local evaluation
// budget; the remaining straddling leaves are sampled. A level whose leaves
// could not be sampled within the budget is rolled back.
Tally refine(const SublevelContext& ctx, const Box& root, std::uint64_t root_id, std::size_t local_budget)
{
    Tally t;
    const std::size_t children = std::size_t{1} << ctx.n;
    std::vector<std::pair<Box, std::uint64_t>> current{{root, root_id}};
    for (int level = 0; level < 48 && !current.empty(); ++level) {
        std::size_t split_cost = current.size() * children * (2 + ctx.evals_per_box_weight);
        if (t.evals + split_cost + current.size() * ctx.qmc > local_budget)
            break;
        std::vector<std::pair<Box, std::uint64_t>> next;
        double inside = 0.0;
        for (const auto& [box, id] : current) {
            for (std::size_t c = 0; c < children; ++c) {
                Box child;
                for (std::size_t i = 0; i < ctx.n; ++i) {
                    double mid = 0.5 * (box.lo[i] + box.hi[i]);
                    bool upper = (c >> i) & 1U;
                    child.lo[i] = upper ? mid : box.lo[i];
                    child.hi[i] = upper ? box.hi[i] : mid;
                }
                std::uint64_t cid = mix(id, c + 1);
                switch (classify(ctx, child, t.evals)) {
                case BoxClass::inside:
                    inside += box_weight(ctx, child, cid);
                    t.evals += ctx.evals_per_box_weight;
                    break;
                case BoxClass::boundary:
                    next.emplace_back(child, cid);
                    break;
                case BoxClass::outside:
                    break;
                }
            }
        }
        if (t.evals + next.size() * ctx.qmc > local_budget)
            break;
        t.inside += inside;
        current = std::move(next);
    }
    for (const auto& [box, id] : current) {
        auto q = qmc_box(ctx, box, id, true);
        t.evals += ctx.qmc;
        for (std::size_t g = 0; g < kReplicates; ++g)
            t.boundary[g] += q.measure[g];
        t.boundary_weight += q.weight;
    }
    return t;
}

void check_sublevel_args(const StarFunction& star, const BlockStructure& b, double eps, double r)
{
    if (star.dimension == 0 || star.dimension > kMaxDim)
        throw ScaleError("sublevel oracle supports 1 <= n <= 8");
    if (b.dimension() != star.dimension)
        throw std::invalid_argument("block structure dimension does not match");
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("eps must lie in (0, 1/2)");
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("r must lie in (0, 1)");
    if (star.vertex_exponents.empty())
        throw std::invalid_argument("star function has no terms");
    for (auto a : b.alphas())
        if (sgn(a) < 0)
            throw std::invalid_argument("alpha must be nonnegative");
}

template <bool Parallel>
MeasureEstimate sublevel_kernel(const StarFunction& star, const BlockStructure& b, double eps, double r,
                                std::size_t budget, std::uint64_t seed, const SublevelOptions& options)
{
    check_sublevel_args(star, b, eps, r);
    const std::size_t n = star.dimension;
    const int depth = options.depth > 0 ? options.depth : (n <= 2 ? 26 : 14);
    const std::size_t qmc = std::max<std::size_t>(options.qmc_points / kReplicates, 1) * kReplicates;
    const auto ctx = make_context(star, b, eps, qmc, seed);

    std::size_t top = 1;
    for (std::size_t i = 0; i < n; ++i)
        top *= static_cast<std::size_t>(depth) + 1;
    if (top * (2 + ctx.evals_per_box_weight) > budget)
        throw BudgetError("budget too small for the dyadic top-level grid (" + std::to_string(top) + " boxes)");

    const auto count = static_cast<std::ptrdiff_t>(top);
    std::vector<Tally> first(top);
    std::vector<BoxClass> cls(top);
#pragma omp parallel for schedule(static) if (Parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        auto k = static_cast<std::size_t>(i);
        first[k] = first_pass(ctx, top_box(k, n, depth, r), mix(seed, k), cls[k]);
    }

    std::size_t used = 0;
    std::vector<std::size_t> straddling;
    for (std::size_t k = 0; k < top; ++k) {
        used += first[k].evals;
        if (cls[k] == BoxClass::boundary)
            straddling.push_back(k);
    }

    std::vector<Tally> second(straddling.size());
    if (!straddling.empty()) {
        std::size_t share = (budget - std::min(budget, used)) / straddling.size();
        if (share < ctx.qmc)
            throw BudgetError("budget leaves fewer than " + std::to_string(ctx.qmc) + " samples per boundary box");
        const auto m = static_cast<std::ptrdiff_t>(straddling.size());
#pragma omp parallel for schedule(dynamic) if (Parallel)
        for (std::ptrdiff_t i = 0; i < m; ++i) {
            auto k = straddling[static_cast<std::size_t>(i)];
            second[static_cast<std::size_t>(i)] = refine(ctx, top_box(k, n, depth, r), mix(seed, k), share);
        }
    }

    MeasureEstimate out;
    double inside = 0.0, wt = 0.0;
    std::array<double, kReplicates> reps{};
    for (const auto& t : first)
        inside += t.inside;
    for (const auto& t : second) {
        inside += t.inside;
        for (std::size_t g = 0; g < kReplicates; ++g)
            reps[g] += t.boundary[g];
        wt += t.boundary_weight;
        used += t.evals;
    }
    double mean = 0.0;
    for (double r : reps)
        mean += r / kReplicates;
    double var = 0.0;
    for (double r : reps)
        var += (r - mean) * (r - mean);
    double se = std::sqrt(var / (kReplicates - 1) / kReplicates);

    out.lower = inside;
    out.value = inside + mean;
    out.upper = inside + wt;
    out.evaluations = used;
    // Two standard errors of the replicate mean, never wider than the bracket.
    double bracket = std::max(out.value - out.lower, out.upper - out.value);
    out.rel_err = out.value > 0.0 ? std::min(2.0 * se, bracket) / out.value : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace

MeasureEstimate estimate_sublevel_measure(const StarFunction& star, const BlockStructure& b, double eps, double r,
                                          std::size_t budget, std::uint64_t seed, const SublevelOptions& options)
{
    return sublevel_kernel<true>(star, b, eps, r, budget, seed, options);
}

MeasureEstimate estimate_sublevel_measure_serial(const StarFunction& star, const BlockStructure& b, double eps, double r,
                                                 std::size_t budget, std::uint64_t seed,
                                                 const SublevelOptions& options)
{
    return sublevel_kernel<false>(star, b, eps, r, budget, seed, options);
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& y)
{
    if (design.empty() || design.size() != y.size())
        throw std::invalid_argument("least squares: design and data sizes differ");
    const std::size_t p = design.front().size();
    if (design.size() < p)
        throw std::invalid_argument("least squares: fewer observations than parameters");
    std::vector<std::vector<long double>> a(p, std::vector<long double>(p + 1, 0.0L));
    for (std::size_t r = 0; r < design.size(); ++r) {
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j)
                a[i][j] += static_cast<long double>(design[r][i]) * design[r][j];
            a[i][p] += static_cast<long double>(design[r][i]) * y[r];
        }
    }
    for (std::size_t c = 0; c < p; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < p; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c]))
                piv = r;
        if (std::fabs(a[piv][c]) < 1e-300L)
            throw std::runtime_error("least squares: singular design");
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < p; ++r) {
            if (r == c)
                continue;
            long double f = a[r][c] / a[c][c];
            for (std::size_t j = c; j <= p; ++j)
                a[r][j] -= f * a[c][j];
        }
    }
    std::vector<double> out(p);
    for (std::size_t i = 0; i < p; ++i)
        out[i] = static_cast<double>(a[i][p] / a[i][i]);
    return out;
}

SublevelFit fit_growth_exponents(const StarFunction& star, const BlockStructure& b, double r, int j_min, int j_max,
                                 std::size_t budget, std::uint64_t seed, const SublevelOptions& options)
{
    if (j_min < 2 || j_max - j_min + 1 < 10)
        throw std::invalid_argument("the j range must start at 2 or above and span at least 10 scales");
    SublevelFit fit;
    fit.r = r;
    fit.sample_budget = budget;
    fit.seed = seed;
    const auto scales = static_cast<std::size_t>(j_max - j_min + 1);
    const std::size_t per_scale = budget / scales;

    for (int j = j_min; j <= j_max; ++j) {
        double eps = std::ldexp(1.0, -j);
        auto m = estimate_sublevel_measure(star, b, eps, r, per_scale, mix(seed, static_cast<std::uint64_t>(j)),
                                           options);
        fit.js.push_back(j);
        fit.epsilons.push_back(eps);
        fit.measures.push_back(m.value);
        fit.rel_errs.push_back(m.rel_err);
    }

    for (std::size_t i = 0; i + 1 < scales; ++i) {
        double a = fit.measures[i], c = fit.measures[i + 1];
        double tol = a * fit.rel_errs[i] + c * fit.rel_errs[i + 1] + 1e-12 * a;
        if (std::isfinite(tol) && c > a + tol)
            fit.monotone = false;
    }

    std::vector<std::vector<double>> design;
    std::vector<double> y;
    for (std::size_t i = 0; i < scales; ++i) {
        bool use = i >= 3 && fit.measures[i] > 0.0 && fit.rel_errs[i] <= 0.1;
        fit.used.push_back(use);
        if (!use)
            continue;
        double j = fit.js[i];
        design.push_back({-j, std::log2(std::max(j, 2.0)), 1.0});
        y.push_back(std::log2(fit.measures[i]));
    }
    if (design.size() < 4)
        throw BudgetError("fewer than four scales have a usable measure estimate");
    auto coef = least_squares(design, y);
    fit.fitted_a = coef[0];
    fit.fitted_d = coef[1];
    fit.intercept = coef[2];
    double ss = 0.0;
    for (std::size_t i = 0; i < design.size(); ++i) {
        double pred = coef[0] * design[i][0] + coef[1] * design[i][1] + coef[2];
        ss += (y[i] - pred) * (y[i] - pred);
    }
    fit.residual = std::sqrt(ss / static_cast<double>(design.size()));
    return fit;
}

double bump(double s_squared)
{
    if (s_squared >= 1.0)
        return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s_squared));
}

namespace {

struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

GaussRule gauss_legendre(int m)
{
    GaussRule g;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        g.x.push_back(x);
        g.w.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    }
    return g;
}

// Polynomial with integer exponents evaluated through per-axis power tables.
class FastPoly {
public:
    explicit FastPoly(const Polynomial& p) : n_(p.dimension())
    {
        for (const auto& t : p.terms()) {
            std::vector<int> e;
            for (const auto& x : t.exponent) {
                if (!is_integer(x))
                    throw DomainError("oscillatory integral needs integer exponents");
                e.push_back(static_cast<int>(x.get_num().get_si()));
                max_deg_ = std::max(max_deg_, e.back());
            }
            coef_.push_back(to_double(t.coefficient));
            exps_.push_back(std::move(e));
        }
    }

    double operator()(const Point& t) const
    {
        std::array<std::array<double, 33>, kMaxDim> pw;
        for (std::size_t i = 0; i < n_; ++i) {
            pw[i][0] = 1.0;
            for (int k = 1; k <= max_deg_; ++k)
                pw[i][k] = pw[i][k - 1] * t[i];
        }
        double s = 0.0;
        for (std::size_t j = 0; j < coef_.size(); ++j) {
            double v = coef_[j];
            for (std::size_t i = 0; i < n_; ++i)
                v *= pw[i][exps_[j][i]];
            s += v;
        }
        return s;
    }

    int max_degree() const { return max_deg_; }

private:
    std::size_t n_;
    int max_deg_ = 0;
    std::vector<double> coef_;
    std::vector<std::vector<int>> exps_;
};

// Integration runs in u-coordinates. An axis whose variable is a singleton
// block with alpha > 0 uses t = sign(u)|u|^p, p = 1/(1-alpha), which turns
// |t|^-alpha dt into p du and removes the singularity.
struct FourierContext {
    FastPoly poly;
    std::size_t n;
    Point lambda{};
    double lambda_last;
    double r;
    Point power{};     // p per axis (1 for untransformed axes)
    Point jacobian{};  // p per axis
    std::vector<std::pair<std::vector<std::size_t>, double>> multi;
    double tol_density;  // admissible |I_high - I_low| per unit u-volume
    int max_depth;
    double max_phase_variation;
    GaussRule high;
    GaussRule low;
};

Point to_t(const FourierContext& ctx, const Point& u)
{
    Point t{};
    for (std::size_t i = 0; i < ctx.n; ++i)
        t[i] = ctx.power[i] == 1.0 ? u[i] : std::copysign(std::pow(std::fabs(u[i]), ctx.power[i]), u[i]);
    return t;
}

double phase(const FourierContext& ctx, const Point& t)
{
    double s = ctx.lambda_last * ctx.poly(t);
    for (std::size_t i = 0; i < ctx.n; ++i)
        s += ctx.lambda[i] * t[i];
    return s;
}

std::complex<double> integrand(const FourierContext& ctx, const Point& u)
{
    Point t = to_t(ctx, u);
    double rho2 = 0.0;
    for (std::size_t i = 0; i < ctx.n; ++i)
        rho2 += t[i] * t[i];
    double amp = bump(rho2 / (ctx.r * ctx.r));
    if (amp == 0.0)
        return {0.0, 0.0};
    for (std::size_t i = 0; i < ctx.n; ++i)
        amp *= ctx.jacobian[i];
    for (const auto& [vars, a] : ctx.multi) {
        double q = 0.0;
        for (auto i : vars)
            q += t[i] * t[i];
        amp *= std::pow(q, -0.5 * a);
    }
    double ph = phase(ctx, t);
    return {amp * std::cos(ph), amp * std::sin(ph)};
}

bool outside_ball(const FourierContext& ctx, const Box& box)
{
    double d2 = 0.0;
    for (std::size_t i = 0; i < ctx.n; ++i) {
        if (box.lo[i] <= 0.0 && box.hi[i] >= 0.0)
            continue;
        double m = std::min(std::fabs(box.lo[i]), std::fabs(box.hi[i]));
        double tm = std::pow(m, ctx.power[i]);
        d2 += tm * tm;
    }
    return d2 >= ctx.r * ctx.r;
}

// The origin of a weighted multi-variable block lies in the closed box.
bool touches_block_singularity(const FourierContext& ctx, const Box& box)
{
    for (const auto& [vars, a] : ctx.multi) {
        bool all = true;
        for (auto i : vars)
            all = all && box.lo[i] <= 0.0 && box.hi[i] >= 0.0;
        if (all)
            return true;
    }
    return false;
}

double phase_variation(const FourierContext& ctx, const Box& box, std::size_t& evals)
{
    std::size_t total = 1;
    for (std::size_t i = 0; i < ctx.n; ++i)
        total *= 3;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    Point u{};
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t idx = k;
        for (std::size_t i = 0; i < ctx.n; ++i) {
            u[i] = box.lo[i] + 0.5 * static_cast<double>(idx % 3) * (box.hi[i] - box.lo[i]);
            idx /= 3;
        }
        double p = phase(ctx, to_t(ctx, u));
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    evals += total;
    return hi - lo;
}

std::complex<double> tensor_rule(const FourierContext& ctx, const Box& box, const GaussRule& g, std::size_t& evals)
{
    const std::size_t m = g.x.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < ctx.n; ++i)
        total *= m;
    Point half{}, mid{};
    double scale = 1.0;
    for (std::size_t i = 0; i < ctx.n; ++i) {
        half[i] = 0.5 * (box.hi[i] - box.lo[i]);
        mid[i] = 0.5 * (box.hi[i] + box.lo[i]);
        scale *= half[i];
    }
    std::complex<double> sum{0.0, 0.0};
    Point u{};
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t idx = k;
        double w = 1.0;
        for (std::size_t i = 0; i < ctx.n; ++i) {
            std::size_t a = idx % m;
            idx /= m;
            u[i] = mid[i] + half[i] * g.x[a];
            w *= g.w[a];
        }
        sum += w * integrand(ctx, u);
    }
    evals += total;
    return sum * scale;
}

double volume(const FourierContext& ctx, const Box& box)
{
    double v = 1.0;
    for (std::size_t i = 0; i < ctx.n; ++i)
        v *= box.hi[i] - box.lo[i];
    return v;
}

struct FourierTally {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    bool reliable = true;
    std::size_t evals = 0;
};

FourierTally integrate_top_box(const FourierContext& ctx, const Box& root, std::size_t share)
{
    FourierTally out;
    const std::size_t children = std::size_t{1} << ctx.n;
    std::vector<std::pair<Box, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [box, depth] = stack.back();
        stack.pop_back();
        if (outside_ball(ctx, box))
            continue;
        bool can_split = depth < ctx.max_depth && out.evals < share;
        auto push_children = [&]() {
            for (std::size_t c = children; c-- > 0;) {
                Box child;
                for (std::size_t i = 0; i < ctx.n; ++i) {
                    double mid = 0.5 * (box.lo[i] + box.hi[i]);
                    bool upper = (c >> i) & 1U;
                    child.lo[i] = upper ? mid : box.lo[i];
                    child.hi[i] = upper ? box.hi[i] : mid;
                }
                stack.emplace_back(child, depth + 1);
            }
        };
        if (phase_variation(ctx, box, out.evals) > ctx.max_phase_variation) {
            if (can_split) {
                push_children();
                continue;
            }
            out.reliable = false;
        }
        auto i8 = tensor_rule(ctx, box, ctx.high, out.evals);
        auto i6 = tensor_rule(ctx, box, ctx.low, out.evals);
        double err = std::abs(i8 - i6);
        if (err > ctx.tol_density * volume(ctx, box) && can_split && !touches_block_singularity(ctx, box)) {
            push_children();
            continue;
        }
        out.value += i8;
        out.error += err;
    }
    return out;
}

template <bool Parallel>
FourierEstimate fourier_kernel(const Polynomial& s, const BlockStructure& b, std::span<const double> lambda, double r,
                               std::size_t budget, const FourierOptions& options)
{
    const std::size_t n = s.dimension();
    if (n == 0 || n > kMaxDim)
        throw ScaleError("oscillatory integral supports 1 <= n <= 8");
    if (n > 2 && !options.allow_3d)
        throw ScaleError("oscillatory integrals in dimension > 2 are disabled by default");
    if (b.dimension() != n)
        throw std::invalid_argument("block structure dimension does not match");
    if (lambda.size() != n + 1)
        throw std::invalid_argument("lambda must have n+1 components");
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("r must lie in (0, 1)");

    if (options.high_order < 2 || options.low_order < 1 || options.low_order >= options.high_order)
        throw std::invalid_argument("quadrature orders must satisfy 1 <= low < high");
    FourierContext ctx{FastPoly(s),
                       n,
                       {},
                       lambda[n],
                       r,
                       {},
                       {},
                       {},
                       options.tolerance,
                       options.max_depth,
                       options.max_phase_variation,
                       gauss_legendre(options.high_order),
                       gauss_legendre(options.low_order)};
    if (ctx.poly.max_degree() > 32)
        throw ScaleError("degree above 32 is not supported by the oscillatory integrator");
    for (std::size_t i = 0; i < n; ++i) {
        ctx.lambda[i] = lambda[i];
        ctx.power[i] = 1.0;
        ctx.jacobian[i] = 1.0;
    }
    for (std::size_t k = 0; k < b.block_count(); ++k) {
        double a = to_double(b.alphas()[k]);
        if (a == 0.0)
            continue;
        if (b.block_size(k) == 1) {
            if (a >= 1.0)
                throw std::invalid_argument("alpha must be below the block size");
            auto i = b.blocks()[k][0];
            ctx.power[i] = 1.0 / (1.0 - a);
            ctx.jacobian[i] = ctx.power[i];
        } else {
            ctx.multi.emplace_back(b.blocks()[k], a);
        }
    }

    // Uniform 8 x ... x 8 grid with breaks at 0 on every axis.
    constexpr std::size_t grid = 8;
    std::size_t top = 1;
    for (std::size_t i = 0; i < n; ++i)
        top *= grid;
    const std::size_t share = std::max<std::size_t>(budget / top, 1);
    std::vector<FourierTally> tallies(top);
    const auto count = static_cast<std::ptrdiff_t>(top);
#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        Box box;
        auto idx = static_cast<std::size_t>(k);
        for (std::size_t i = 0; i < n; ++i) {
            double extent = std::pow(r, 1.0 / ctx.power[i]);
            double step = 2.0 * extent / grid;
            auto c = idx % grid;
            idx /= grid;
            box.lo[i] = -extent + step * static_cast<double>(c);
            box.hi[i] = c + 1 == grid ? extent : -extent + step * static_cast<double>(c + 1);
            if (c + 1 == grid / 2)
                box.hi[i] = 0.0;
            if (c == grid / 2)
                box.lo[i] = 0.0;
        }
        tallies[static_cast<std::size_t>(k)] = integrate_top_box(ctx, box, share);
    }

    FourierEstimate out;
    for (const auto& t : tallies) {
        out.value += t.value;
        out.error += t.error;
        out.reliable = out.reliable && t.reliable;
        out.evaluations += t.evals;
    }
    return out;
}

}  // namespace

FourierEstimate estimate_fourier_transform(const Polynomial& s, const BlockStructure& b, std::span<const double> lambda,
                                           double r, std::size_t budget, const FourierOptions& options)
{
    return fourier_kernel<true>(s, b, lambda, r, budget, options);
}

FourierEstimate estimate_fourier_transform_serial(const Polynomial& s, const BlockStructure& b,
                                                  std::span<const double> lambda, double r, std::size_t budget,
                                                  const FourierOptions& options)
{
    return fourier_kernel<false>(s, b, lambda, r, budget, options);
}

DecayFit fit_decay_exponent(const Polynomial& s, const BlockStructure& b, std::size_t direction, double lambda_min,
                            double lambda_max, std::size_t points, double r, std::size_t budget,
                            const FourierOptions& options)
{
    const std::size_t n = s.dimension();
    if (direction < 1 || direction > n + 1)
        throw std::invalid_argument("direction must be an axis in 1..n+1");
    if (!(lambda_min > 0.0 && lambda_max > lambda_min) || points < 3)
        throw std::invalid_argument("need 0 < lambda_min < lambda_max and at least 3 points");

    DecayFit fit;
    fit.direction = direction;
    // Stepping in log2 keeps dyadic grids exact.
    const double lo2 = std::log2(lambda_min);
    const double step = (std::log2(lambda_max) - lo2) / static_cast<double>(points - 1);
    std::vector<double> lam(n + 1, 0.0);
    for (std::size_t i = 0; i < points; ++i) {
        double l = i + 1 == points ? lambda_max : std::exp2(lo2 + step * static_cast<double>(i));
        lam.assign(n + 1, 0.0);
        lam[direction - 1] = l;
        auto e = estimate_fourier_transform(s, b, lam, r, budget, options);
        double mag = std::abs(e.value);
        double rel = mag > 0.0 ? e.error / mag : std::numeric_limits<double>::infinity();
        if (!e.reliable)
            rel = std::max(rel, 1.0);
        fit.lambdas.push_back(l);
        fit.magnitudes.push_back(mag);
        fit.rel_errs.push_back(rel);
    }

    std::vector<std::vector<double>> design;
    std::vector<double> y;
    for (std::size_t i = 0; i < points; ++i) {
        bool ok = !fit.truncated && fit.rel_errs[i] <= 0.1 && fit.magnitudes[i] > 0.0;
        if (!ok)
            fit.truncated = true;
        fit.used.push_back(ok);
        if (!ok)
            continue;
        design.push_back({std::log(fit.lambdas[i]), 1.0});
        y.push_back(std::log(fit.magnitudes[i]));
    }
    fit.usable = design.size();
    fit.fitted_slope = design.size() >= 2 ? least_squares(design, y)[0] : std::numeric_limits<double>::quiet_NaN();
    return fit;
}

void write_csv(std::ostream& out, const SublevelFit& fit)
{
    auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << "j,epsilon,measure,rel_err\n";
    for (std::size_t i = 0; i < fit.js.size(); ++i)
        out << fit.js[i] << ',' << fit.epsilons[i] << ',' << fit.measures[i] << ',' << fit.rel_errs[i] << '\n';
    out.precision(old);
}

void write_csv(std::ostream& out, const DecayFit& fit)
{
    auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << "lambda,magnitude,rel_err\n";
    for (std::size_t i = 0; i < fit.lambdas.size(); ++i)
        out << fit.lambdas[i] << ',' << fit.magnitudes[i] << ',' << fit.rel_errs[i] << '\n';
    out.precision(old);
}

}  // namespace nsmooth
