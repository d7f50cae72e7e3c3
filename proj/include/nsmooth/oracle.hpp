#ifndef NSMOOTH_ORACLE_HPP
#define NSMOOTH_ORACLE_HPP

#include "nsmooth/polynomial.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace nsmooth {

class BudgetError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Problem size beyond what the numeric oracles are meant to handle.
class ScaleError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SublevelOptions {
    // Dyadic depth per axis; 0 selects 26 for n <= 2 and 14 for n >= 3.
    int depth = 0;
    std::size_t qmc_points = 32;
};

// Weighted measure mu{t in (0,r)^n : S*(t) < eps}, weight prod_k |t_k|^-alpha_k.
// S* is coordinatewise nondecreasing on the open orthant, so corner values
// classify a box as inside, outside, or straddling the boundary; only
// straddling boxes are refined and sampled. [lower, upper] is the resulting
// bracket (exact up to the weight quadrature when a block has several
// variables and a nonzero alpha). rel_err is two standard errors over four
// independently shifted point sets, capped by the bracket.
struct MeasureEstimate {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double rel_err = 0.0;
    std::size_t evaluations = 0;
};

MeasureEstimate estimate_sublevel_measure(const StarFunction& star, const BlockStructure& b, double eps, double r,
                                          std::size_t budget, std::uint64_t seed, const SublevelOptions& options = {});

// Same kernel run box by box on one thread; results are bit-identical to the
// OpenMP version.
MeasureEstimate estimate_sublevel_measure_serial(const StarFunction& star, const BlockStructure& b, double eps, double r,
                                                 std::size_t budget, std::uint64_t seed,
                                                 const SublevelOptions& options = {});

struct SublevelFit {
    std::vector<int> js;
    std::vector<double> epsilons;
    std::vector<double> measures;
    std::vector<double> rel_errs;
    std::vector<bool> used;  // included in the regression
    double fitted_a = 0.0;
    double fitted_d = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of log2 residuals over used points
    bool monotone = true;
    double r = 0.0;
    std::size_t sample_budget = 0;
    std::uint64_t seed = 0;
};

// Fits log2 mu = -a j + d log2(max(j,2)) + c over eps = 2^-j, j in
// [j_min, j_max]. The three largest eps and any point whose relative error
// exceeds 10% are excluded. budget is the total over all scales.
SublevelFit fit_growth_exponents(const StarFunction& star, const BlockStructure& b, double r, int j_min, int j_max,
                                 std::size_t budget, std::uint64_t seed, const SublevelOptions& options = {});

// phi(s) = exp(1 - 1/(1 - |s|^2)) for |s| < 1, else 0.
double bump(double s_squared);

struct FourierOptions {
    int max_depth = 18;
    bool allow_3d = false;
    int high_order = 12;
    int low_order = 10;
    // Four wavelengths per leaf; the 12-point rule is accurate far beyond that.
    double max_phase_variation = 8 * 3.141592653589793;
    double tolerance = 1e-9;  // admissible |I_high - I_low| per unit volume
};

struct FourierEstimate {
    std::complex<double> value;
    double error = 0.0;  // sum over leaves of |I_high - I_low|
    bool reliable = true;
    std::size_t evaluations = 0;
};

// Integral of exp(i(lambda.t + lambda_{n+1} S(t))) K(t) over (-r,r)^n with
// K(t) = prod_k |t_k|^-alpha_k * phi(t/r). Boxes whose phase varies by more
// than max_phase_variation are bisected; each leaf uses tensor Gauss-Legendre
// rules of two orders and their difference is the error estimate.
FourierEstimate estimate_fourier_transform(const Polynomial& s, const BlockStructure& b, std::span<const double> lambda,
                                           double r, std::size_t budget, const FourierOptions& options = {});

FourierEstimate estimate_fourier_transform_serial(const Polynomial& s, const BlockStructure& b,
                                                  std::span<const double> lambda, double r, std::size_t budget,
                                                  const FourierOptions& options = {});

struct DecayFit {
    std::vector<double> lambdas;
    std::vector<double> magnitudes;
    std::vector<double> rel_errs;
    std::vector<bool> used;
    double fitted_slope = 0.0;  // d log|nu| / d log lambda
    std::size_t direction = 0;  // 1-based axis of lambda
    bool truncated = false;     // range cut at the quadrature noise floor
    std::size_t usable = 0;     // points before the cut; slope is NaN below 2
};

// Geometric lambda grid of `points` values from lambda_min to lambda_max
// along axis `direction` (1..n+1).
DecayFit fit_decay_exponent(const Polynomial& s, const BlockStructure& b, std::size_t direction, double lambda_min,
                            double lambda_max, std::size_t points, double r, std::size_t budget,
                            const FourierOptions& options = {});

void write_csv(std::ostream& out, const SublevelFit& fit);
void write_csv(std::ostream& out, const DecayFit& fit);

// Least squares for a small dense design (rows x cols), via normal equations
// in long double. Returns the coefficient vector.
std::vector<double> least_squares(const std::vector<std::vector<double>>& design, const std::vector<double>& y);

}  // namespace nsmooth

#endif
