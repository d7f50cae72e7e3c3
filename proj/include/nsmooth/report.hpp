#ifndef NSMOOTH_REPORT_HPP
#define NSMOOTH_REPORT_HPP

#include "nsmooth/oracle.hpp"
#include "nsmooth/smoothing.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsmooth {

using Json = nlohmann::ordered_json;

struct OracleSettings {
    double r = 0.875;        // sublevel box radius
    int j_min = 6;
    int j_max = 24;
    std::size_t budget = 10'000'000;  // sublevel evaluations over the whole j range
    std::uint64_t seed = 1;
    double tol_a = 0.05;
    double residual_max = 0.1;  // RMS log2 residual above which a fit is inconclusive
    double decay_r = 0.875;
    double lambda_min = 32.0;
    double lambda_max = 4096.0;
    std::size_t lambda_points = 8;
    std::size_t decay_budget = 4'000'000'000;  // per lambda value
    double tol_beta = 0.15;

    bool operator==(const OracleSettings&) const = default;
};

// Contents of a spec file. Variables in blocks are 1-based as written.
struct AnalysisSpec {
    std::string phase;
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<Rational> alphas;
    std::optional<int> o_override;
    OracleSettings oracle;

    bool operator==(const AnalysisSpec&) const = default;
};

class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& what, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Flat "key = value" text; '#' starts a comment. Keys: phase, n, blocks
// ("{1,2},{3}"), alphas ("1/2, 0"), o_override, oracle.<field>. Missing
// blocks default to one block per variable, missing alphas to zero.
AnalysisSpec parse_spec(std::string_view text);
AnalysisSpec load_spec(const std::string& path);

// Canonical echo used in reports; spec_from_json inverts it.
Json spec_to_json(const AnalysisSpec& spec);
AnalysisSpec spec_from_json(const Json& j);

Polynomial spec_polynomial(const AnalysisSpec& spec);
BlockStructure spec_blocks(const AnalysisSpec& spec);

enum ExitCode : int {
    exit_ok = 0,
    exit_failed = 1,  // verification ran and disagreed with the prediction
    exit_invalid = 2,
    exit_scale = 3,
    exit_inconclusive = 4,
};

struct CommandResult {
    int exit_code = exit_ok;
    Json report;
    std::string csv;   // oracle table, verify commands only
    std::string text;  // one-line human summary
};

// The polynomial or weights violate the standing hypotheses.
class ValidationFailure : public std::invalid_argument {
public:
    explicit ValidationFailure(ValidationReport report)
        : std::invalid_argument("input validation failed"), report_(std::move(report))
    {
    }
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

struct AnalysisOutcome {
    Polynomial phase{1};
    BlockStructure blocks = BlockStructure::singletons(1);
    NewtonPolyhedron newton;
    StarFunction star;
    ExponentResult exponents;
    VanishingOrderResult order;
    SmoothingReport smoothing;
};

// Runs the exact pipeline; throws SpecError, ParseError, ScaleError or
// std::invalid_argument for unusable input.
AnalysisOutcome analyze_spec(const AnalysisSpec& spec);

Json analysis_json(const AnalysisSpec& spec, const AnalysisOutcome& outcome);

CommandResult cmd_analyze(const AnalysisSpec& spec);
CommandResult cmd_verify_sublevel(const AnalysisSpec& spec);
// direction 0 selects n+1.
CommandResult cmd_verify_decay(const AnalysisSpec& spec, std::size_t direction, bool allow_3d);
CommandResult cmd_classify(const AnalysisSpec& spec, std::string_view p, std::string_view beta);

}  // namespace nsmooth

#endif
