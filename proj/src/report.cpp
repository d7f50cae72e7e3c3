#include "nsmooth/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace nsmooth {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::uint64_t parse_unsigned(std::string_view v, std::size_t line)
{
    if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw SpecError("expected a nonnegative integer, got '" + std::string(v) + "'", line);
    try {
        return std::stoull(std::string(v));
    } catch (const std::exception&) {
        throw SpecError("integer out of range: '" + std::string(v) + "'", line);
    }
}

int parse_int(std::string_view v, std::size_t line)
{
    bool neg = !v.empty() && v.front() == '-';
    auto mag = parse_unsigned(neg ? v.substr(1) : v, line);
    if (mag > 1'000'000'000ULL)
        throw SpecError("integer out of range: '" + std::string(v) + "'", line);
    return neg ? -static_cast<int>(mag) : static_cast<int>(mag);
}

// p/q or a decimal literal.
double parse_real(std::string_view v, std::size_t line)
{
    try {
        return to_double(parse_rational(v));
    } catch (const std::invalid_argument&) {
    }
    try {
        std::size_t used = 0;
        double d = std::stod(std::string(v), &used);
        if (used == v.size() && std::isfinite(d))
            return d;
    } catch (const std::exception&) {
    }
    throw SpecError("expected a number, got '" + std::string(v) + "'", line);
}

std::vector<std::vector<std::size_t>> parse_blocks(std::string_view v, std::size_t line)
{
    std::vector<std::vector<std::size_t>> out;
    std::size_t i = 0;
    auto skip = [&]() {
        while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i])))
            ++i;
    };
    skip();
    while (i < v.size()) {
        if (v[i] != '{')
            throw SpecError("blocks: expected '{'", line);
        auto close = v.find('}', i);
        if (close == std::string_view::npos)
            throw SpecError("blocks: missing '}'", line);
        std::vector<std::size_t> block;
        for (auto item : split(v.substr(i + 1, close - i - 1), ','))
            block.push_back(static_cast<std::size_t>(parse_unsigned(item, line)));
        out.push_back(std::move(block));
        i = close + 1;
        skip();
        if (i < v.size()) {
            if (v[i] != ',')
                throw SpecError("blocks: expected ',' between blocks", line);
            ++i;
            skip();
        }
    }
    if (out.empty())
        throw SpecError("blocks: empty list", line);
    return out;
}

std::vector<Rational> parse_alphas(std::string_view v, std::size_t line)
{
    std::vector<Rational> out;
    for (auto item : split(v, ',')) {
        try {
            out.push_back(parse_rational(item));
        } catch (const std::invalid_argument&) {
            throw SpecError("alphas: malformed rational '" + std::string(item) + "'", line);
        }
    }
    return out;
}

Json rational_json(const Rational& q)
{
    return to_string(q);
}

Json vector_json(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& q : v)
        a.push_back(to_string(q));
    return a;
}

Json points_json(const std::vector<ExponentVector>& pts)
{
    Json a = Json::array();
    for (const auto& p : pts)
        a.push_back(vector_json(p));
    return a;
}

Json one_based(const std::vector<std::size_t>& v)
{
    Json a = Json::array();
    for (auto x : v)
        a.push_back(x + 1);
    return a;
}

Json region_json(const Region& r)
{
    Json verts = Json::array();
    for (const auto& p : r.vertices)
        verts.push_back(Json::array({to_string(p.x), to_string(p.y)}));
    return Json{{"kind", to_string(r.kind)}, {"vertices", verts}};
}

Json finite_or_null(double x)
{
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json order_json(const VanishingOrderResult& o)
{
    Json witnesses = Json::array();
    for (const auto& w : o.witnesses) {
        Json pt = Json::array();
        for (double x : w.point)
            pt.push_back(finite_or_null(x));
        witnesses.push_back(Json{{"face_vertices", points_json(w.face_vertices)},
                                 {"point", pt},
                                 {"location", w.location},
                                 {"multiplicity", w.multiplicity}});
    }
    Json j{{"value", o.value}, {"mode", to_string(o.mode)}, {"clamped", o.clamped()}};
    j["interval"] = o.interval ? Json::array({o.interval->first, o.interval->second}) : Json(nullptr);
    j["witnesses"] = witnesses;
    return j;
}

CommandResult error_result(int code, const AnalysisSpec* spec, const std::string& message)
{
    CommandResult r;
    r.exit_code = code;
    if (spec)
        r.report["spec"] = spec_to_json(*spec);
    r.report["error"] = message;
    r.text = "error: " + message;
    return r;
}

// Maps input problems onto exit codes; returns nullopt when analysis succeeded.
template <class F>
std::optional<CommandResult> guarded(const AnalysisSpec& spec, F&& body)
{
    try {
        body();
    } catch (const ValidationFailure& e) {
        auto r = error_result(exit_invalid, &spec, e.what());
        Json v = Json::array();
        for (const auto& s : e.report().violations)
            v.push_back(s);
        r.report["validation"] = Json{{"ok", false}, {"violations", v}};
        return r;
    } catch (const ScaleError& e) {
        return error_result(exit_scale, &spec, e.what());
    } catch (const BudgetError& e) {
        return error_result(exit_inconclusive, &spec, e.what());
    } catch (const std::invalid_argument& e) {
        return error_result(exit_invalid, &spec, e.what());
    } catch (const std::domain_error& e) {
        return error_result(exit_invalid, &spec, e.what());
    } catch (const std::runtime_error& e) {
        // ParseError and SpecError land here.
        return error_result(exit_invalid, &spec, e.what());
    }
    return std::nullopt;
}

}  // namespace

AnalysisSpec parse_spec(std::string_view text)
{
    AnalysisSpec spec;
    std::map<std::string, std::size_t> seen;
    bool have_n = false, have_phase = false;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw SpecError("expected 'key = value'", line_no);
        std::string key(trim(line.substr(0, eq)));
        auto value = trim(line.substr(eq + 1));
        if (seen.contains(key))
            throw SpecError("duplicate key '" + key + "'", line_no);
        seen[key] = line_no;

        auto& o = spec.oracle;
        if (key == "phase") {
            if (value.empty())
                throw SpecError("phase is empty", line_no);
            spec.phase = std::string(value);
            have_phase = true;
        } else if (key == "n") {
            spec.n = static_cast<std::size_t>(parse_unsigned(value, line_no));
            if (spec.n == 0)
                throw SpecError("n must be positive", line_no);
            have_n = true;
        } else if (key == "blocks") {
            spec.blocks = parse_blocks(value, line_no);
        } else if (key == "alphas") {
            spec.alphas = parse_alphas(value, line_no);
        } else if (key == "o_override") {
            int v = parse_int(value, line_no);
            if (v < 0)
                throw SpecError("o_override must be nonnegative", line_no);
            spec.o_override = v;
        } else if (key == "oracle.r") {
            o.r = parse_real(value, line_no);
        } else if (key == "oracle.j_min") {
            o.j_min = parse_int(value, line_no);
        } else if (key == "oracle.j_max") {
            o.j_max = parse_int(value, line_no);
        } else if (key == "oracle.budget") {
            o.budget = parse_unsigned(value, line_no);
        } else if (key == "oracle.seed") {
            o.seed = parse_unsigned(value, line_no);
        } else if (key == "oracle.tol_a") {
            o.tol_a = parse_real(value, line_no);
        } else if (key == "oracle.residual_max") {
            o.residual_max = parse_real(value, line_no);
        } else if (key == "oracle.decay_r") {
            o.decay_r = parse_real(value, line_no);
        } else if (key == "oracle.lambda_min") {
            o.lambda_min = parse_real(value, line_no);
        } else if (key == "oracle.lambda_max") {
            o.lambda_max = parse_real(value, line_no);
        } else if (key == "oracle.lambda_points") {
            o.lambda_points = parse_unsigned(value, line_no);
        } else if (key == "oracle.decay_budget") {
            o.decay_budget = parse_unsigned(value, line_no);
        } else if (key == "oracle.tol_beta") {
            o.tol_beta = parse_real(value, line_no);
        } else {
            throw SpecError("unknown key '" + key + "'", line_no);
        }
    }
    if (!have_phase)
        throw SpecError("missing key 'phase'", 0);
    if (!have_n)
        throw SpecError("missing key 'n'", 0);

    if (spec.blocks.empty())
        for (std::size_t i = 1; i <= spec.n; ++i)
            spec.blocks.push_back({i});
    for (const auto& block : spec.blocks)
        for (auto v : block)
            if (v < 1 || v > spec.n)
                throw SpecError("block refers to t" + std::to_string(v) + " outside 1..n",
                                seen.contains("blocks") ? seen["blocks"] : 0);
    if (spec.alphas.empty())
        spec.alphas.assign(spec.blocks.size(), Rational(0));
    if (spec.alphas.size() != spec.blocks.size())
        throw SpecError("alphas has " + std::to_string(spec.alphas.size()) + " entries for " +
                            std::to_string(spec.blocks.size()) + " blocks",
                        seen.contains("alphas") ? seen["alphas"] : 0);
    return spec;
}

AnalysisSpec load_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SpecError("cannot read spec file '" + path + "'", 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

Json spec_to_json(const AnalysisSpec& spec)
{
    Json blocks = Json::array();
    for (const auto& b : spec.blocks)
        blocks.push_back(b);
    const auto& o = spec.oracle;
    Json oracle{{"r", o.r},
                {"j_min", o.j_min},
                {"j_max", o.j_max},
                {"budget", o.budget},
                {"seed", o.seed},
                {"tol_a", o.tol_a},
                {"residual_max", o.residual_max},
                {"decay_r", o.decay_r},
                {"lambda_min", o.lambda_min},
                {"lambda_max", o.lambda_max},
                {"lambda_points", o.lambda_points},
                {"decay_budget", o.decay_budget},
                {"tol_beta", o.tol_beta}};
    Json j{{"phase", spec.phase}, {"n", spec.n}, {"blocks", blocks}, {"alphas", vector_json(spec.alphas)}};
    j["o_override"] = spec.o_override ? Json(*spec.o_override) : Json(nullptr);
    j["oracle"] = oracle;
    return j;
}

AnalysisSpec spec_from_json(const Json& j)
{
    AnalysisSpec spec;
    try {
        spec.phase = j.at("phase").get<std::string>();
        spec.n = j.at("n").get<std::size_t>();
        spec.blocks = j.at("blocks").get<std::vector<std::vector<std::size_t>>>();
        for (const auto& a : j.at("alphas"))
            spec.alphas.push_back(parse_rational(a.get<std::string>()));
        if (!j.at("o_override").is_null())
            spec.o_override = j.at("o_override").get<int>();
        const auto& o = j.at("oracle");
        auto& s = spec.oracle;
        s.r = o.at("r").get<double>();
        s.j_min = o.at("j_min").get<int>();
        s.j_max = o.at("j_max").get<int>();
        s.budget = o.at("budget").get<std::size_t>();
        s.seed = o.at("seed").get<std::uint64_t>();
        s.tol_a = o.at("tol_a").get<double>();
        s.residual_max = o.at("residual_max").get<double>();
        s.decay_r = o.at("decay_r").get<double>();
        s.lambda_min = o.at("lambda_min").get<double>();
        s.lambda_max = o.at("lambda_max").get<double>();
        s.lambda_points = o.at("lambda_points").get<std::size_t>();
        s.decay_budget = o.at("decay_budget").get<std::size_t>();
        s.tol_beta = o.at("tol_beta").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("malformed spec echo: ") + e.what(), 0);
    }
    return spec;
}

Polynomial spec_polynomial(const AnalysisSpec& spec)
{
    return parse_polynomial(spec.phase, spec.n);
}

BlockStructure spec_blocks(const AnalysisSpec& spec)
{
    std::vector<std::vector<std::size_t>> zero_based;
    for (const auto& b : spec.blocks) {
        std::vector<std::size_t> z;
        for (auto v : b) {
            if (v < 1 || v > spec.n)
                throw std::invalid_argument("block refers to a variable outside 1..n");
            z.push_back(v - 1);
        }
        zero_based.push_back(std::move(z));
    }
    return BlockStructure(spec.n, std::move(zero_based), spec.alphas);
}

AnalysisOutcome analyze_spec(const AnalysisSpec& spec)
{
    if (spec.n > 5)
        throw ScaleError("n = " + std::to_string(spec.n) + " exceeds the supported maximum of 5");
    AnalysisOutcome out;
    out.phase = spec_polynomial(spec);
    out.blocks = spec_blocks(spec);
    auto v = validate_input(out.phase, out.blocks);
    if (!v.ok)
        throw ValidationFailure(std::move(v));
    out.newton = build_newton_polyhedron(out.phase);
    out.star = star_function(out.newton);
    out.exponents = compute_exponents(out.star, out.blocks);
    out.order = order_of_S(out.phase, spec.o_override);
    out.smoothing = assemble_report(out.exponents, out.order, out.blocks);
    return out;
}

Json analysis_json(const AnalysisSpec& spec, const AnalysisOutcome& a)
{
    Json facets = Json::array();
    for (const auto& f : a.newton.facets())
        facets.push_back(Json{{"normal", vector_json(f.normal)}, {"offset", rational_json(f.offset)}});

    Json perms = Json::array();
    for (const auto& p : a.exponents.per_permutation) {
        perms.push_back(Json{{"sigma", one_based(p.sigma)},
                             {"block_maxima", one_based(p.block_maxima)},
                             {"beta", vector_json(p.beta)},
                             {"X", points_json(p.X)},
                             {"s_triple_star", points_json(p.s_triple_star.vertex_exponents)},
                             {"d_l", rational_json(p.d_l)},
                             {"a_l", rational_json(p.a_l)},
                             {"d_l_log", p.d_l_log},
                             {"compact_flag", p.diagonal_face_compact}});
    }

    const auto& s = a.smoothing;
    Json sharp{{"upper_bound_beta", s.sharpness.upper_bound_beta ? rational_json(*s.sharpness.upper_bound_beta)
                                                                   : Json(nullptr)}};
    if (s.sharpness.sharp_p_interval)
        sharp["sharp_p_recip_interval"] = Json::array({to_string(s.sharpness.sharp_p_interval->first),
                                                       to_string(s.sharpness.sharp_p_interval->second)});
    else
        sharp["sharp_p_recip_interval"] = nullptr;
    sharp["caveats"] = s.sharpness.caveats;

    Json j;
    j["spec"] = spec_to_json(spec);
    j["phase"] = to_string(a.phase);
    j["validation"] = Json{{"ok", true}, {"violations", Json::array()}};
    j["newton"] = Json{{"vertices", points_json(a.newton.vertices())},
                       {"facets", facets},
                       {"distance", rational_json(newton_distance(a.newton))}};
    j["star_exponents"] = points_json(a.star.vertex_exponents);
    j["vanishing_order"] = order_json(a.order);
    j["permutations"] = perms;
    j["a0"] = rational_json(s.a0);
    j["d0"] = s.d0;
    j["noncompact_flag"] = s.noncompact_flag;
    j["g"] = rational_json(s.g);
    j["region"] = region_json(s.region);
    j["stated_region"] = region_json(s.stated_region);
    j["region_equals_stated"] = s.region.vertices == s.stated_region.vertices;
    j["sharpness"] = sharp;
    j["caveats"] = s.caveats;
    return j;
}

CommandResult cmd_analyze(const AnalysisSpec& spec)
{
    AnalysisOutcome a;
    if (auto err = guarded(spec, [&] { a = analyze_spec(spec); }))
        return *err;
    CommandResult r;
    r.report = analysis_json(spec, a);
    r.text = "a0 = " + to_string(a.smoothing.a0) + ", d0 = " + std::to_string(a.smoothing.d0) +
             ", g = " + to_string(a.smoothing.g) + ", o = " + std::to_string(a.order.value) + " (" +
             to_string(a.order.mode) + ")";
    return r;
}

CommandResult cmd_verify_sublevel(const AnalysisSpec& spec)
{
    AnalysisOutcome a;
    SublevelFit fit;
    const auto& o = spec.oracle;
    auto err = guarded(spec, [&] {
        a = analyze_spec(spec);
        if (spec.n > 3)
            throw ScaleError("sublevel verification supports n <= 3");
        fit = fit_growth_exponents(a.star, a.blocks, o.r, o.j_min, o.j_max, o.budget, o.seed);
    });
    if (err)
        return *err;

    const double a0 = to_double(a.smoothing.a0);
    const int d0 = a.smoothing.d0;
    bool a_ok = std::fabs(fit.fitted_a - a0) <= o.tol_a;
    bool d_ok = std::lround(fit.fitted_d) == d0;
    bool inconclusive = fit.residual > o.residual_max || !fit.monotone;

    Json used = Json::array();
    for (std::size_t i = 0; i < fit.js.size(); ++i)
        if (fit.used[i])
            used.push_back(fit.js[i]);
    CommandResult r;
    r.report["spec"] = spec_to_json(spec);
    r.report["predicted"] = Json{{"a0", rational_json(a.smoothing.a0)}, {"d0", d0}};
    r.report["fit"] = Json{{"r", fit.r},
                           {"j_min", o.j_min},
                           {"j_max", o.j_max},
                           {"sample_budget", fit.sample_budget},
                           {"seed", fit.seed},
                           {"fitted_a", fit.fitted_a},
                           {"fitted_d", fit.fitted_d},
                           {"intercept", fit.intercept},
                           {"residual", fit.residual},
                           {"monotone", fit.monotone},
                           {"fit_js", used}};
    r.report["verdict"] = Json{{"tol_a", o.tol_a},
                               {"a_within_tol", a_ok},
                               {"d_rounds_to_d0", d_ok},
                               {"inconclusive", inconclusive},
                               {"pass", a_ok && d_ok && !inconclusive}};
    std::ostringstream csv;
    write_csv(csv, fit);
    r.csv = csv.str();
    r.exit_code = inconclusive ? exit_inconclusive : (a_ok && d_ok ? exit_ok : exit_failed);
    std::ostringstream text;
    text << "fitted a = " << fit.fitted_a << " (a0 = " << to_string(a.smoothing.a0) << "), fitted d = " << fit.fitted_d
         << " (d0 = " << d0 << "): " << (inconclusive ? "inconclusive" : (a_ok && d_ok ? "pass" : "fail"));
    r.text = text.str();
    return r;
}

CommandResult cmd_verify_decay(const AnalysisSpec& spec, std::size_t direction, bool allow_3d)
{
    AnalysisOutcome a;
    DecayFit fit;
    const auto& o = spec.oracle;
    const std::size_t dir = direction == 0 ? spec.n + 1 : direction;
    auto err = guarded(spec, [&] {
        a = analyze_spec(spec);
        if (spec.n > 2 && !allow_3d)
            throw ScaleError("decay verification in dimension > 2 needs --allow-3d-oscillatory");
        FourierOptions fo;
        fo.allow_3d = allow_3d;
        fit = fit_decay_exponent(a.phase, a.blocks, dir, o.lambda_min, o.lambda_max, o.lambda_points, o.decay_r,
                                 o.decay_budget, fo);
    });
    if (err)
        return *err;

    const auto& s = a.smoothing;
    const bool along_graph = dir == spec.n + 1;
    double beta_hat = -fit.fitted_slope;
    // With a log factor |nu| ~ lambda^-a0 (log lambda)^d0, remove it before reading off the power.
    double beta_corrected = beta_hat;
    if (along_graph && s.d0 > 0 && fit.usable >= 2) {
        std::vector<std::vector<double>> design;
        std::vector<double> y;
        for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
            if (!fit.used[i])
                continue;
            double l = std::log(fit.lambdas[i]);
            design.push_back({l, 1.0});
            y.push_back(std::log(fit.magnitudes[i]) - s.d0 * std::log(l));
        }
        beta_corrected = -least_squares(design, y)[0];
    }

    Json verdict;
    bool consistent = true;
    if (along_graph) {
        Rational floor = std::min(s.g, Rational(1, s.o_clamped));
        bool floor_ok = beta_corrected >= to_double(floor) - o.tol_beta;
        bool ceiling_ok = s.g >= 1 || beta_corrected <= to_double(s.g) + o.tol_beta;
        consistent = floor_ok && ceiling_ok;
        verdict = Json{{"applicable", true},
                       {"floor", rational_json(floor)},
                       {"ceiling", s.g < 1 ? rational_json(s.g) : Json(nullptr)},
                       {"tol_beta", o.tol_beta},
                       {"floor_ok", floor_ok},
                       {"ceiling_ok", ceiling_ok}};
    } else {
        verdict = Json{{"applicable", false}};
    }
    bool inconclusive = fit.usable < 4;
    verdict["inconclusive"] = inconclusive;
    verdict["consistent"] = consistent && !inconclusive;

    Json used = Json::array();
    for (std::size_t i = 0; i < fit.lambdas.size(); ++i)
        if (fit.used[i])
            used.push_back(fit.lambdas[i]);
    CommandResult r;
    r.report["spec"] = spec_to_json(spec);
    r.report["predicted"] = Json{{"a0", rational_json(s.a0)},
                                 {"d0", s.d0},
                                 {"g", rational_json(s.g)},
                                 {"o_clamped", s.o_clamped}};
    r.report["fit"] = Json{{"direction", fit.direction},
                           {"r", o.decay_r},
                           {"fitted_slope", finite_or_null(fit.fitted_slope)},
                           {"beta_hat", finite_or_null(beta_hat)},
                           {"beta_hat_log_corrected", finite_or_null(beta_corrected)},
                           {"usable_points", fit.usable},
                           {"truncated", fit.truncated},
                           {"fit_lambdas", used}};
    r.report["verdict"] = verdict;
    std::ostringstream csv;
    write_csv(csv, fit);
    r.csv = csv.str();
    r.exit_code = inconclusive ? exit_inconclusive : (consistent ? exit_ok : exit_failed);
    std::ostringstream text;
    text << "slope = " << fit.fitted_slope << " along axis " << dir << ": "
         << (inconclusive ? "inconclusive" : (consistent ? "consistent" : "inconsistent"));
    r.text = text.str();
    return r;
}

CommandResult cmd_classify(const AnalysisSpec& spec, std::string_view p, std::string_view beta)
{
    AnalysisOutcome a;
    Rational pq, bq;
    Classification c;
    auto err = guarded(spec, [&] {
        pq = parse_rational(trim(p));
        bq = parse_rational(trim(beta));
        if (pq <= 1)
            throw std::invalid_argument("p must satisfy 1 < p < infinity");
        if (sgn(bq) <= 0)
            throw std::invalid_argument("beta must be positive");
        a = analyze_spec(spec);
        c = classify_point(1 / pq, bq, a.smoothing);
    });
    if (err)
        return *err;

    CommandResult r;
    r.report["spec"] = spec_to_json(spec);
    r.report["p"] = rational_json(pq);
    r.report["p_recip"] = rational_json(1 / pq);
    r.report["beta"] = rational_json(bq);
    r.report["verdict"] = to_string(c.verdict);
    r.report["explanation"] = c.explanation;
    r.report["caveats"] = c.caveats;
    r.report["g"] = rational_json(a.smoothing.g);
    r.report["vanishing_order"] = Json{{"value", a.order.value}, {"mode", to_string(a.order.mode)}};
    r.report["region"] = region_json(a.smoothing.region);
    r.text = to_string(c.verdict) + ": " + c.explanation;
    return r;
}

}  // namespace nsmooth
