#include "nsmooth/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int write_outputs(const nsmooth::CommandResult& r, const std::string& out_path, const std::string& csv_path)
{
    std::string json = r.report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        f << json;
    }
    if (!csv_path.empty() && !r.csv.empty()) {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot write " << csv_path << "\n";
            return 2;
        }
        f << r.csv;
    }
    std::cerr << r.text << "\n";
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sobolev smoothing exponents for fractional Radon transforms"};
    app.require_subcommand(1);

    std::string spec_path, out_path, csv_path, p_text, beta_text;
    std::optional<std::uint64_t> seed, budget;
    std::optional<int> override_o;
    std::size_t direction = 0;
    bool allow_3d = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_path, "spec file (key = value)")->required();
        sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
        sub->add_option("--seed", seed, "override oracle.seed");
        sub->add_option("--budget", budget, "override the oracle evaluation budget");
        sub->add_option("--override-o", override_o, "use this value for o(S)");
    };

    auto* analyze = app.add_subcommand("analyze", "exact exponents, region and sharpness report");
    add_common(analyze);
    auto* sublevel = app.add_subcommand("verify-sublevel", "fit sublevel growth against (a0, d0)");
    add_common(sublevel);
    sublevel->add_option("--csv", csv_path, "write the (j, epsilon, measure, rel_err) table");
    auto* decay = app.add_subcommand("verify-decay", "fit Fourier decay along one axis");
    add_common(decay);
    decay->add_option("--csv", csv_path, "write the (lambda, magnitude, rel_err) table");
    decay->add_option("--direction", direction, "axis 1..n+1 (default n+1)");
    decay->add_flag("--allow-3d-oscillatory", allow_3d, "permit n = 3 oscillatory quadrature");
    auto* classify = app.add_subcommand("classify", "verdict for one (1/p, beta) point");
    add_common(classify);
    classify->add_option("--p", p_text, "exponent p, rational")->required();
    classify->add_option("--beta", beta_text, "smoothing order beta, rational")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    nsmooth::AnalysisSpec spec;
    try {
        spec = nsmooth::load_spec(spec_path);
    } catch (const std::exception& e) {
        nsmooth::CommandResult r;
        r.exit_code = nsmooth::exit_invalid;
        r.report["error"] = e.what();
        r.text = std::string("error: ") + e.what();
        return write_outputs(r, out_path, "");
    }
    if (seed)
        spec.oracle.seed = *seed;
    if (override_o)
        spec.o_override = *override_o;

    nsmooth::CommandResult r;
    if (*analyze) {
        r = nsmooth::cmd_analyze(spec);
    } else if (*sublevel) {
        if (budget)
            spec.oracle.budget = *budget;
        r = nsmooth::cmd_verify_sublevel(spec);
    } else if (*decay) {
        if (budget)
            spec.oracle.decay_budget = *budget;
        r = nsmooth::cmd_verify_decay(spec, direction, allow_3d);
    } else {
        r = nsmooth::cmd_classify(spec, p_text, beta_text);
    }
    return write_outputs(r, out_path, csv_path);
}
