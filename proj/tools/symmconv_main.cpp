// Command line front end.
//
// Subcommands:
//   check      grid decider for p-convexity / symmetrized p-convexity
//   verify     three- and four-term inequality chains with margins
//   transform  sampled curves of f, its even part, and its odd part
//   fracint    one-sided fractional integral of an expression
//   corpus     run a directory of fixture files and compare expectations
//
// Exit codes: 0 everything requested holds, 1 a claim failed, 2 usage or
// input errors, 3 quadrature did not converge.  2 beats 3 beats 1.

#include <CLI11.hpp>

#include <symmconv/symmconv.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using symmconv::json;

constexpr int exit_ok = 0;
constexpr int exit_claim_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_no_convergence = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string f_src;
    std::string w_src;
    std::string h_src;
    double p = 0.0;
    std::vector<double> interval;
    double alpha = 0.0;
    double x = 0.0;
    double y = 0.0;
    double base = 0.0;
    double at = 0.0;
    std::string side;
    bool symmetrized = false;
    int samples = 201;
    std::vector<std::string> params;
    std::string chain;
    std::string corpus_dir;

    symmconv::GridSpec grid;
    symmconv::QuadConfig quad;
    double defect_tol = symmconv::default_defect_tol;
    double chain_tol = symmconv::default_chain_tol;

    std::string format;
    std::string output;
    bool timings = false;

    // option handles, for has-this-been-given checks
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* x_opt = nullptr;
    CLI::Option* y_opt = nullptr;
    CLI::Option* w_opt = nullptr;

    // each subcommand carries its own default output format; the winner is
    // resolved after parsing, once we know which subcommand ran
    struct FormatDefault {
        CLI::App* cmd = nullptr;
        CLI::Option* opt = nullptr;
        std::string value;
    };
    std::vector<FormatDefault> format_defaults;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, double> out;
    for (const auto& item : raw) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--param expects name=value, got '" + item + "'");
        std::string name = item.substr(0, eq);
        std::string text = item.substr(eq + 1);
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0' || !std::isfinite(v))
            throw UsageError("--param " + name + ": '" + text
                             + "' is not a finite number");
        out[name] = v;
    }
    return out;
}

symmconv::BoundExpr bind_expression(const std::string& src, const Options& o,
                                    const std::map<std::string, double>& params,
                                    bool bind_interval) {
    symmconv::FuncExpr e = symmconv::FuncExpr::parse(src);
    symmconv::ParamBindings binds;
    if (bind_interval) {
        binds.set("p", o.p);
        binds.set("a", o.interval[0]);
        binds.set("b", o.interval[1]);
    }
    if (o.alpha_opt && o.alpha_opt->count() > 0) binds.set("alpha", o.alpha);
    for (const auto& [k, v] : params) binds.set(k, v);
    auto missing = e.missing_parameters(binds);
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw UsageError("unbound parameters in '" + src + "': " + list
                         + " (use --param name=value)");
    }
    return symmconv::BoundExpr(std::move(e), std::move(binds));
}

void require_interval(const Options& o) {
    if (o.interval.size() != 2)
        throw UsageError("--interval expects two values a,b");
}

json params_json(const std::map<std::string, double>& params) {
    json j = json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw UsageError("cannot write to '" + o.output + "'");
    out << text;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

// chain reports share one rendering across verify-style commands
std::string render_report_csv(const symmconv::InequalityReport& r) {
    std::string out = "kind,label,value\n";
    for (const auto& t : r.terms)
        out += "term," + t.label + "," + symmconv::detail::format_shortest(t.value) + "\n";
    for (std::size_t i = 0; i < r.margins.size(); ++i)
        out += "margin," + std::to_string(i) + ","
             + symmconv::detail::format_shortest(r.margins[i]) + "\n";
    out += "holds,," + csv_bool(r.holds) + "\n";
    return out;
}

std::string render_report_human(const symmconv::InequalityReport& r) {
    std::ostringstream out;
    out << r.name << "\n";
    for (const auto& t : r.terms)
        out << "  " << t.label << " = "
            << symmconv::detail::format_shortest(t.value) << "\n";
    out << "  margins:";
    for (double m : r.margins)
        out << " " << symmconv::detail::format_shortest(m);
    out << "\n  holds: " << (r.holds ? "yes" : "no")
        << "  (tolerance " << symmconv::detail::format_shortest(r.tolerance_used)
        << ", evaluations " << r.evaluations << ")\n";
    for (const auto& [k, v] : r.notes) out << "  note " << k << ": " << v << "\n";
    for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
    return out.str();
}

int exit_code_for(bool holds, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings)
        if (w.find("converge") != std::string::npos) return exit_no_convergence;
    return holds ? exit_ok : exit_claim_failed;
}

void add_output_flags(CLI::App* cmd, Options& o, const std::string& default_format) {
    CLI::Option* fmt =
        cmd->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"json", "csv", "human"}))
            ->default_str(default_format);
    o.format_defaults.push_back({cmd, fmt, default_format});
    cmd->add_option("--output", o.output, "Write the result to a file");
    cmd->add_flag("--timings", o.timings,
                  "Include wall-clock timings in JSON output");
}

void add_function_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--f", o.f_src, "Function expression in x");
    cmd->add_option("--p", o.p, "Power parameter (nonzero)");
    cmd->add_option("--interval", o.interval, "Interval a,b with 0 < a < b")
        ->delimiter(',')
        ->expected(1, 2);
    cmd->add_option("--param", o.params, "Extra parameter binding name=value")
        ->allow_extra_args(false);
}

void add_grid_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--grid-xy", o.grid.xy_points, "Grid points per spatial axis")
        ->capture_default_str();
    cmd->add_option("--grid-t", o.grid.t_points, "Grid points along t")
        ->capture_default_str();
    cmd->add_option("--grid-rounds", o.grid.refine_rounds, "Zoom refinement rounds")
        ->capture_default_str();
    cmd->add_option("--defect-tol", o.defect_tol, "Largest defect still accepted")
        ->capture_default_str();
}

void add_quad_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--abs-tol", o.quad.abs_tol, "Quadrature absolute tolerance")
        ->envname("SYMMCONV_QUAD_TOL")
        ->capture_default_str();
    cmd->add_option("--rel-tol", o.quad.rel_tol, "Quadrature relative tolerance")
        ->envname("SYMMCONV_QUAD_TOL")
        ->capture_default_str();
    cmd->add_option("--max-subdivisions", o.quad.max_subdivisions,
                    "Split budget for adaptive quadrature")
        ->capture_default_str();
    cmd->add_option("--chain-tol", o.chain_tol,
                    "Largest negative margin still accepted")
        ->capture_default_str();
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void maybe_add_timings(json& envelope, const Options& o, const Timer& t) {
    if (o.timings) envelope["timings_ms"] = json{{"total", t.ms()}};
}

int run_check(Options& o) {
    if (o.f_src.empty()) throw UsageError("check needs --f");
    require_interval(o);
    auto params = parse_params(o.params);
    auto f = bind_expression(o.f_src, o, params, true);
    symmconv::Interval I(o.interval[0], o.interval[1]);
    symmconv::PParam p(o.p);

    Timer timer;
    symmconv::ConvexityVerdict v =
        o.symmetrized
            ? symmconv::check_symmetrized_p_convex(f, I, p, o.grid, o.defect_tol)
            : symmconv::check_p_convex(f, I, p, o.grid, o.defect_tol);

    if (o.format == "json") {
        json cfg;
        cfg["f"] = o.f_src;
        cfg["p"] = o.p;
        cfg["a"] = I.a();
        cfg["b"] = I.b();
        cfg["symmetrized"] = o.symmetrized;
        cfg["defect_tol"] = o.defect_tol;
        cfg["grid"] = symmconv::to_json(o.grid);
        cfg["params"] = params_json(params);
        json envelope = symmconv::make_envelope("check", std::move(cfg));
        symmconv::fill_envelope(envelope, v);
        maybe_add_timings(envelope, o, timer);
        emit(o, envelope.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string out =
            "holds,worst_defect,witness_x,witness_y,witness_t,samples_checked\n";
        out += csv_bool(v.holds) + ","
             + symmconv::detail::format_shortest(v.worst_defect) + ",";
        if (v.witness)
            out += symmconv::detail::format_shortest(v.witness->x) + ","
                 + symmconv::detail::format_shortest(v.witness->y) + ","
                 + symmconv::detail::format_shortest(v.witness->t) + ",";
        else
            out += ",,,";
        out += std::to_string(v.samples_checked) + "\n";
        emit(o, out);
    } else {
        std::ostringstream out;
        out << (o.symmetrized ? "symmetrized p-convexity" : "p-convexity")
            << " on [" << symmconv::detail::format_shortest(I.a()) << ", "
            << symmconv::detail::format_shortest(I.b())
            << "] with p = " << symmconv::detail::format_shortest(o.p) << "\n";
        out << "  holds: " << (v.holds ? "yes" : "no") << "\n";
        out << "  worst defect: "
            << symmconv::detail::format_shortest(v.worst_defect) << "\n";
        if (v.witness)
            out << "  witness: x = "
                << symmconv::detail::format_shortest(v.witness->x)
                << ", y = " << symmconv::detail::format_shortest(v.witness->y)
                << ", t = " << symmconv::detail::format_shortest(v.witness->t)
                << "\n";
        out << "  samples checked: " << v.samples_checked << "\n";
        emit(o, out.str());
    }
    return v.holds ? exit_ok : exit_claim_failed;
}

int run_verify(Options& o) {
    if (o.f_src.empty()) throw UsageError("verify needs --f");
    require_interval(o);
    auto params = parse_params(o.params);
    auto f = bind_expression(o.f_src, o, params, true);
    symmconv::Interval I(o.interval[0], o.interval[1]);
    symmconv::PParam p(o.p);

    bool needs_w = o.chain == "fejer" || o.chain == "fracfejer";
    if (needs_w && o.w_src.empty())
        throw UsageError("verify " + o.chain + " needs --w");
    if (o.chain == "fracfejer" && o.alpha_opt->count() == 0)
        throw UsageError("verify fracfejer needs --alpha");

    double x = o.x_opt->count() ? o.x
             : o.chain == "reflected" ? I.a() + I.length() / 4.0
                                      : I.a() + I.length() / 3.0;
    double y = o.y_opt->count() ? o.y : I.a() + 2.0 * I.length() / 3.0;

    Timer timer;
    symmconv::InequalityReport r;
    if (o.chain == "hh") {
        r = symmconv::hh_symmetrized(f, I, p, o.quad, o.chain_tol);
    } else if (o.chain == "fejer") {
        auto w = bind_expression(o.w_src, o, params, true);
        r = symmconv::fejer_weighted(f, w, I, p, o.quad, o.chain_tol);
    } else if (o.chain == "chain") {
        r = symmconv::hh_subinterval_chain(f, I, p, x, y, o.quad, o.chain_tol);
    } else if (o.chain == "reflected") {
        r = symmconv::reflected_pair_bound(f, I, p, x, o.quad, o.chain_tol);
    } else if (o.chain == "refinement") {
        r = symmconv::refinement_integral(f, I, p, o.quad, o.chain_tol);
    } else if (o.chain == "double") {
        r = symmconv::pconvex_double_refinement(f, I, p, o.quad, o.chain_tol);
    } else if (o.chain == "fracfejer") {
        auto w = bind_expression(o.w_src, o, params, true);
        r = symmconv::fejer_fractional(f, w, I, p, symmconv::FracOrder(o.alpha),
                                       o.quad, o.chain_tol);
    } else {
        throw UsageError("unknown chain '" + o.chain + "'");
    }

    if (o.format == "json") {
        json cfg;
        cfg["chain"] = o.chain;
        cfg["f"] = o.f_src;
        if (!o.w_src.empty()) cfg["w"] = o.w_src;
        cfg["p"] = o.p;
        cfg["a"] = I.a();
        cfg["b"] = I.b();
        if (o.alpha_opt->count()) cfg["alpha"] = o.alpha;
        if (o.chain == "chain") {
            cfg["x"] = x;
            cfg["y"] = y;
        } else if (o.chain == "reflected") {
            cfg["x"] = x;
        }
        cfg["chain_tol"] = o.chain_tol;
        cfg["quad"] = symmconv::to_json(o.quad);
        cfg["params"] = params_json(params);
        json envelope = symmconv::make_envelope("verify", std::move(cfg));
        symmconv::fill_envelope(envelope, r);
        maybe_add_timings(envelope, o, timer);
        emit(o, envelope.dump(2) + "\n");
    } else if (o.format == "csv") {
        emit(o, render_report_csv(r));
    } else {
        emit(o, render_report_human(r));
    }
    return exit_code_for(r.holds, r.warnings);
}

int run_transform(Options& o) {
    if (o.f_src.empty()) throw UsageError("transform needs --f");
    require_interval(o);
    if (o.samples < 2) throw UsageError("--samples must be at least 2");
    auto params = parse_params(o.params);
    auto f = bind_expression(o.f_src, o, params, true);
    symmconv::Interval I(o.interval[0], o.interval[1]);
    symmconv::PParam p(o.p);
    auto even = symmconv::p_sym_transform(f, I, p);
    auto odd = symmconv::p_antisym_transform(f, I, p);

    Timer timer;
    struct Row {
        double x, fx, ex, ox;
    };
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(o.samples));
    for (int i = 0; i < o.samples; ++i) {
        double x = I.a() + I.length() * i / (o.samples - 1);
        if (i == o.samples - 1) x = I.b();
        rows.push_back({x, f(x), even(x), odd(x)});
    }

    if (o.format == "json") {
        json cfg;
        cfg["f"] = o.f_src;
        cfg["p"] = o.p;
        cfg["a"] = I.a();
        cfg["b"] = I.b();
        cfg["samples"] = o.samples;
        cfg["params"] = params_json(params);
        json envelope = symmconv::make_envelope("transform", std::move(cfg));
        json samples = json::array();
        for (const Row& r : rows)
            samples.push_back(json{{"x", r.x},
                                   {"f", r.fx},
                                   {"transform", r.ex},
                                   {"antitransform", r.ox}});
        envelope["samples"] = std::move(samples);
        maybe_add_timings(envelope, o, timer);
        emit(o, envelope.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string out = "x,f,transform,antitransform\n";
        for (const Row& r : rows)
            out += symmconv::detail::format_shortest(r.x) + ","
                 + symmconv::detail::format_shortest(r.fx) + ","
                 + symmconv::detail::format_shortest(r.ex) + ","
                 + symmconv::detail::format_shortest(r.ox) + "\n";
        emit(o, out);
    } else {
        std::ostringstream out;
        out << "x  f  transform  antitransform\n";
        for (const Row& r : rows)
            out << symmconv::detail::format_shortest(r.x) << "  "
                << symmconv::detail::format_shortest(r.fx) << "  "
                << symmconv::detail::format_shortest(r.ex) << "  "
                << symmconv::detail::format_shortest(r.ox) << "\n";
        emit(o, out.str());
    }
    return exit_ok;
}

int run_fracint(Options& o) {
    if (o.h_src.empty()) throw UsageError("fracint needs --h");
    if (o.side != "left" && o.side != "right")
        throw UsageError("--side must be left or right");
    auto params = parse_params(o.params);
    auto h = bind_expression(o.h_src, o, params, false);
    symmconv::FracOrder order(o.alpha);

    Timer timer;
    symmconv::QuadResult q =
        o.side == "left"
            ? symmconv::frac_integral_left(h, o.base, o.at, order, o.quad)
            : symmconv::frac_integral_right(h, o.base, o.at, order, o.quad);

    std::vector<std::string> warnings;
    if (!q.converged) warnings.push_back("quadrature did not converge");

    if (o.format == "json") {
        json cfg;
        cfg["h"] = o.h_src;
        cfg["alpha"] = o.alpha;
        cfg["base"] = o.base;
        cfg["at"] = o.at;
        cfg["side"] = o.side;
        cfg["quad"] = symmconv::to_json(o.quad);
        cfg["params"] = params_json(params);
        json envelope = symmconv::make_envelope("fracint", std::move(cfg));
        envelope["terms"].push_back(
            json{{"label", "fractional_integral"}, {"value", q.value}});
        envelope["value"] = q.value;
        envelope["error_estimate"] = q.error_estimate;
        envelope["converged"] = q.converged;
        envelope["evaluations"] = q.evaluations;
        envelope["warnings"] = warnings;
        maybe_add_timings(envelope, o, timer);
        emit(o, envelope.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string out = "value,error_estimate,converged,evaluations\n";
        out += symmconv::detail::format_shortest(q.value) + ","
             + symmconv::detail::format_shortest(q.error_estimate) + ","
             + csv_bool(q.converged) + "," + std::to_string(q.evaluations) + "\n";
        emit(o, out);
    } else {
        std::ostringstream out;
        out << "fractional integral (" << o.side << ", order "
            << symmconv::detail::format_shortest(o.alpha) << ") = "
            << symmconv::detail::format_shortest(q.value) << "\n"
            << "  error estimate: "
            << symmconv::detail::format_shortest(q.error_estimate)
            << ", evaluations: " << q.evaluations
            << (q.converged ? "" : "  [did not converge]") << "\n";
        emit(o, out.str());
    }
    return exit_code_for(true, warnings);
}

int run_corpus(Options& o) {
    symmconv::RunSettings settings;
    settings.grid = o.grid;
    settings.quad = o.quad;
    settings.defect_tol = o.defect_tol;
    settings.chain_tol = o.chain_tol;

    Timer timer;
    symmconv::CorpusRun run = symmconv::run_corpus(o.corpus_dir, settings);

    if (o.format == "json") {
        json cfg;
        cfg["dir"] = o.corpus_dir;
        cfg["grid"] = symmconv::to_json(o.grid);
        cfg["quad"] = symmconv::to_json(o.quad);
        cfg["defect_tol"] = o.defect_tol;
        cfg["chain_tol"] = o.chain_tol;
        json envelope = symmconv::make_envelope("corpus", std::move(cfg));
        json body = symmconv::to_json(run);
        envelope["holds"] = run.all_passed();
        envelope["fixtures"] = body["fixtures"];
        envelope["summary"] = body["summary"];
        maybe_add_timings(envelope, o, timer);
        emit(o, envelope.dump(2) + "\n");
    } else if (o.format == "csv") {
        std::string out = "file,check,expect,holds,pass\n";
        for (const auto& oc : run.outcomes)
            out += oc.fixture.file + "," + oc.fixture.check + ","
                 + (oc.fixture.expect_holds ? "holds" : "fails") + ","
                 + csv_bool(oc.result.holds()) + "," + csv_bool(oc.pass) + "\n";
        emit(o, out);
    } else {
        std::ostringstream out;
        for (const auto& oc : run.outcomes) {
            out << (oc.pass ? "pass" : "FAIL") << "  " << oc.fixture.file
                << "  (" << oc.fixture.check << ", expect "
                << (oc.fixture.expect_holds ? "holds" : "fails") << ", got "
                << (oc.result.holds() ? "holds" : "fails") << ")\n";
        }
        out << run.passed << " passed, " << run.failed << " failed of "
            << (run.passed + run.failed) << "\n";
        emit(o, out.str());
    }
    if (run.any_nonconvergent) return exit_no_convergence;
    return run.all_passed() ? exit_ok : exit_claim_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetrized p-convexity toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a TOML/INI config file");
    // let --config (and nothing else top-level) be written after the
    // subcommand name, where people naturally put it
    app.fallthrough();

    Options o;

    CLI::App* check = app.add_subcommand(
        "check", "Decide p-convexity or symmetrized p-convexity on a grid");
    add_function_flags(check, o);
    check->add_flag("--symmetrized", o.symmetrized,
                    "Check the even part under the p-reflection instead of f");
    add_grid_flags(check, o);
    add_output_flags(check, o, "json");

    CLI::App* verify = app.add_subcommand(
        "verify", "Verify an inequality chain and report terms and margins");
    verify->add_option("chain", o.chain, "Which chain to verify")
        ->required()
        ->check(CLI::IsMember({"hh", "fejer", "chain", "reflected",
                               "refinement", "double", "fracfejer"}));
    add_function_flags(verify, o);
    o.w_opt = verify->add_option("--w", o.w_src, "Weight expression in x");
    o.alpha_opt = verify->add_option("--alpha", o.alpha,
                                     "Fractional order (positive)");
    o.x_opt = verify->add_option("--x", o.x, "Inner point x");
    o.y_opt = verify->add_option("--y", o.y, "Inner point y");
    add_quad_flags(verify, o);
    add_output_flags(verify, o, "json");

    CLI::App* transform = app.add_subcommand(
        "transform", "Sample f, its even part, and its odd part on a grid");
    add_function_flags(transform, o);
    transform->add_option("--samples", o.samples, "Number of sample points")
        ->capture_default_str();
    add_output_flags(transform, o, "csv");

    CLI::App* fracint = app.add_subcommand(
        "fracint", "Evaluate a one-sided fractional integral");
    // the integrand flag is spelled --h, so this subcommand keeps only the
    // long form of the help flag
    fracint->set_help_flag("--help", "Print this help message and exit");
    fracint->add_option("--h", o.h_src, "Integrand expression in x")->required();
    CLI::Option* fr_alpha =
        fracint->add_option("--alpha", o.alpha, "Fractional order (positive)")
            ->required();
    fracint->add_option("--base", o.base, "Anchor point of the operator")
        ->required();
    fracint->add_option("--at", o.at, "Evaluation point")->required();
    fracint->add_option("--side", o.side, "left or right")
        ->required()
        ->check(CLI::IsMember({"left", "right"}));
    fracint->add_option("--param", o.params,
                        "Extra parameter binding name=value")
        ->allow_extra_args(false);
    add_quad_flags(fracint, o);
    add_output_flags(fracint, o, "json");

    CLI::App* corpus = app.add_subcommand(
        "corpus", "Run all fixture files in a directory");
    corpus->add_option("dir", o.corpus_dir, "Directory of .toml fixtures")
        ->required();
    add_grid_flags(corpus, o);
    add_quad_flags(corpus, o);
    add_output_flags(corpus, o, "human");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    if (fracint->parsed()) o.alpha_opt = fr_alpha;

    for (const auto& fd : o.format_defaults)
        if (fd.cmd->parsed() && fd.opt->count() == 0) o.format = fd.value;

    try {
        if (check->parsed()) return run_check(o);
        if (verify->parsed()) return run_verify(o);
        if (transform->parsed()) return run_transform(o);
        if (fracint->parsed()) return run_fracint(o);
        if (corpus->parsed()) return run_corpus(o);
        throw UsageError("no subcommand given");
    } catch (const symmconv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const symmconv::EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const symmconv::FixtureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
