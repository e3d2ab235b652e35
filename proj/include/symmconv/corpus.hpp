#pragma once

// Fixture files and the batch runner behind the `corpus` CLI command.
//
// A fixture is a small key = value file (one key per line, "#" comments,
// strings double-quoted) describing one check against one function:
//
//     # power kernel, quadratic case
//     f = "(x^p - a^p)^(alpha - 1)"
//     p = 2
//     a = 1
//     b = 2
//     param.alpha = 3
//     check = "pconvex"
//     expect = "holds"
//
// `check` picks the operation, `expect` records the intended outcome so a
// regression flips the run red.  `x`, `y`, `w`, `alpha` feed the checks that
// need them.  `param.NAME = value` binds extra expression parameters.

#include <symmconv/analysis.hpp>
#include <symmconv/expr.hpp>
#include <symmconv/inequalities.hpp>
#include <symmconv/report_json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symmconv {

// Parse or validation problem in a fixture file.  what() carries
// "file:line: message" (line 0 when the problem is file-wide).
class FixtureError : public std::runtime_error {
public:
    FixtureError(std::string file, int line, const std::string& message)
        : std::runtime_error(line > 0
                                 ? file + ":" + std::to_string(line) + ": " + message
                                 : file + ": " + message),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_;
};

struct Fixture {
    std::string file;   // basename, used in reports
    std::string f_src;
    std::string w_src;  // empty when absent
    double p = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::optional<double> alpha;
    std::optional<double> x;
    std::optional<double> y;
    std::string check;
    bool expect_holds = true;
    std::map<std::string, double> params;
};

namespace detail {

inline const std::set<std::string>& known_checks() {
    static const std::set<std::string> names = {
        "pconvex",   "symmetrized", "hh",         "fejer",  "chain",
        "reflected", "refinement",  "double",     "fracfejer"};
    return names;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// strips a trailing comment, respecting double quotes
inline std::string strip_comment(const std::string& line) {
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_quotes = !in_quotes;
        else if (line[i] == '#' && !in_quotes) return line.substr(0, i);
    }
    return line;
}

inline bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(k[0])) && k[0] != '_')
        return false;
    for (char c : k) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
            return false;
    }
    return true;
}

inline double parse_number_value(const std::string& file, int line,
                                 const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw FixtureError(file, line, "expected a finite number, got '" + text + "'");
    return v;
}

inline std::string parse_string_value(const std::string& file, int line,
                                      const std::string& text) {
    if (text.size() < 2 || text.front() != '"' || text.back() != '"')
        throw FixtureError(file, line, "expected a double-quoted string, got '" + text + "'");
    std::string out;
    for (std::size_t i = 1; i + 1 < text.size(); ++i) {
        char c = text[i];
        if (c == '\\' && i + 2 < text.size()
            && (text[i + 1] == '"' || text[i + 1] == '\\')) {
            out.push_back(text[++i]);
        } else if (c == '"') {
            throw FixtureError(file, line, "unescaped quote inside string");
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

inline Fixture parse_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string file = path.filename().string();
    if (!in) throw FixtureError(file, 0, "cannot open file");

    Fixture fx;
    fx.file = file;
    std::set<std::string> seen;
    std::string raw;
    int lineno = 0;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FixtureError(file, lineno, "expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (!detail::valid_key(key))
            throw FixtureError(file, lineno, "bad key '" + key + "'");
        if (!seen.insert(key).second)
            throw FixtureError(file, lineno, "duplicate key '" + key + "'");
        if (value.empty())
            throw FixtureError(file, lineno, "missing value for '" + key + "'");

        if (key == "f") {
            fx.f_src = detail::parse_string_value(file, lineno, value);
        } else if (key == "w") {
            fx.w_src = detail::parse_string_value(file, lineno, value);
        } else if (key == "check") {
            fx.check = detail::parse_string_value(file, lineno, value);
            if (!detail::known_checks().count(fx.check))
                throw FixtureError(file, lineno, "unknown check '" + fx.check + "'");
        } else if (key == "expect") {
            std::string e = detail::parse_string_value(file, lineno, value);
            if (e == "holds") fx.expect_holds = true;
            else if (e == "fails") fx.expect_holds = false;
            else throw FixtureError(file, lineno,
                                    "expect must be \"holds\" or \"fails\"");
        } else if (key == "p") {
            fx.p = detail::parse_number_value(file, lineno, value);
        } else if (key == "a") {
            fx.a = detail::parse_number_value(file, lineno, value);
        } else if (key == "b") {
            fx.b = detail::parse_number_value(file, lineno, value);
        } else if (key == "alpha") {
            fx.alpha = detail::parse_number_value(file, lineno, value);
        } else if (key == "x") {
            fx.x = detail::parse_number_value(file, lineno, value);
        } else if (key == "y") {
            fx.y = detail::parse_number_value(file, lineno, value);
        } else if (key.rfind("param.", 0) == 0) {
            std::string name = key.substr(6);
            if (!detail::valid_key(name) || name.find('.') != std::string::npos)
                throw FixtureError(file, lineno, "bad parameter name '" + name + "'");
            fx.params[name] = detail::parse_number_value(file, lineno, value);
        } else {
            throw FixtureError(file, lineno, "unknown key '" + key + "'");
        }
    }

    for (const char* req : {"f", "p", "a", "b", "check", "expect"}) {
        if (!seen.count(req))
            throw FixtureError(file, 0, std::string("missing required key '") + req + "'");
    }
    bool needs_w = fx.check == "fejer" || fx.check == "fracfejer";
    if (needs_w && fx.w_src.empty())
        throw FixtureError(file, 0, "check '" + fx.check + "' needs a weight w");
    if (fx.check == "fracfejer" && !fx.alpha)
        throw FixtureError(file, 0, "check 'fracfejer' needs alpha");
    return fx;
}

// Result of running one fixture (or one CLI verify/check invocation).
struct RunResult {
    bool is_verdict = false;        // true for the grid deciders
    ConvexityVerdict verdict;
    InequalityReport report;

    bool holds() const { return is_verdict ? verdict.holds : report.holds; }

    bool nonconvergent() const {
        if (is_verdict) return false;
        for (const auto& w : report.warnings)
            if (w.find("converge") != std::string::npos) return true;
        return false;
    }

    json detail() const { return is_verdict ? to_json(verdict) : to_json(report); }
};

// Settings shared by the corpus runner and the single-shot CLI commands.
struct RunSettings {
    GridSpec grid;
    QuadConfig quad;
    double defect_tol = default_defect_tol;
    double chain_tol = default_chain_tol;
};

namespace detail {

inline BoundExpr bind_fixture_expr(const Fixture& fx, const std::string& src,
                                   const char* what) {
    FuncExpr e = [&] {
        try {
            return FuncExpr::parse(src);
        } catch (const ParseError& pe) {
            throw FixtureError(fx.file, 0,
                               std::string(what) + ": " + pe.what());
        }
    }();
    ParamBindings binds;
    binds.set("p", fx.p);
    binds.set("a", fx.a);
    binds.set("b", fx.b);
    if (fx.alpha) binds.set("alpha", *fx.alpha);
    for (const auto& [k, v] : fx.params) binds.set(k, v);
    auto missing = e.missing_parameters(binds);
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
        throw FixtureError(fx.file, 0,
                           std::string(what) + ": unbound parameters: " + list);
    }
    return BoundExpr(std::move(e), std::move(binds));
}

}  // namespace detail

inline RunResult run_fixture(const Fixture& fx, const RunSettings& s = {}) {
    Interval I = [&] {
        try {
            return Interval(fx.a, fx.b);
        } catch (const std::exception& e) {
            throw FixtureError(fx.file, 0, e.what());
        }
    }();
    PParam p = [&] {
        try {
            return PParam(fx.p);
        } catch (const std::exception& e) {
            throw FixtureError(fx.file, 0, e.what());
        }
    }();
    BoundExpr f = detail::bind_fixture_expr(fx, fx.f_src, "f");

    double x = fx.x.value_or(fx.a + (fx.b - fx.a) / 3.0);
    double y = fx.y.value_or(fx.a + 2.0 * (fx.b - fx.a) / 3.0);
    double xq = fx.x.value_or(fx.a + (fx.b - fx.a) / 4.0);

    RunResult r;
    if (fx.check == "pconvex") {
        r.is_verdict = true;
        r.verdict = check_p_convex(f, I, p, s.grid, s.defect_tol);
    } else if (fx.check == "symmetrized") {
        r.is_verdict = true;
        r.verdict = check_symmetrized_p_convex(f, I, p, s.grid, s.defect_tol);
    } else if (fx.check == "hh") {
        r.report = hh_symmetrized(f, I, p, s.quad, s.chain_tol);
    } else if (fx.check == "fejer") {
        BoundExpr w = detail::bind_fixture_expr(fx, fx.w_src, "w");
        r.report = fejer_weighted(f, w, I, p, s.quad, s.chain_tol);
    } else if (fx.check == "chain") {
        r.report = hh_subinterval_chain(f, I, p, x, y, s.quad, s.chain_tol);
    } else if (fx.check == "reflected") {
        r.report = reflected_pair_bound(f, I, p, xq, s.quad, s.chain_tol);
    } else if (fx.check == "refinement") {
        r.report = refinement_integral(f, I, p, s.quad, s.chain_tol);
    } else if (fx.check == "double") {
        r.report = pconvex_double_refinement(f, I, p, s.quad, s.chain_tol);
    } else if (fx.check == "fracfejer") {
        BoundExpr w = detail::bind_fixture_expr(fx, fx.w_src, "w");
        r.report = fejer_fractional(f, w, I, p, FracOrder(*fx.alpha), s.quad,
                                    s.chain_tol);
    } else {
        throw FixtureError(fx.file, 0, "unknown check '" + fx.check + "'");
    }
    return r;
}

struct FixtureOutcome {
    Fixture fixture;
    RunResult result;
    bool pass = false;      // result matches the fixture's expectation
};

struct CorpusRun {
    std::vector<FixtureOutcome> outcomes;
    int passed = 0;
    int failed = 0;
    bool any_nonconvergent = false;

    bool all_passed() const { return failed == 0; }
};

// Runs every *.toml fixture under dir in filename order.  Parse problems and
// unusable fixtures surface as FixtureError.
inline CorpusRun run_corpus(const std::filesystem::path& dir,
                            const RunSettings& s = {}) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw FixtureError(dir.string(), 0, "not a directory");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".toml")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& lhs, const fs::path& rhs) {
                  return lhs.filename().string() < rhs.filename().string();
              });

    CorpusRun run;
    for (const auto& file : files) {
        FixtureOutcome o;
        o.fixture = parse_fixture(file);
        o.result = run_fixture(o.fixture, s);
        o.pass = o.result.holds() == o.fixture.expect_holds;
        run.any_nonconvergent |= o.result.nonconvergent();
        (o.pass ? run.passed : run.failed)++;
        run.outcomes.push_back(std::move(o));
    }
    return run;
}

inline json to_json(const CorpusRun& run) {
    json fixtures = json::array();
    for (const auto& o : run.outcomes) {
        json f;
        f["file"] = o.fixture.file;
        f["check"] = o.fixture.check;
        f["expect"] = o.fixture.expect_holds ? "holds" : "fails";
        f["holds"] = o.result.holds();
        f["pass"] = o.pass;
        f["detail"] = o.result.detail();
        fixtures.push_back(std::move(f));
    }
    json j;
    j["fixtures"] = std::move(fixtures);
    j["summary"] = json{{"total", run.passed + run.failed},
                        {"passed", run.passed},
                        {"failed", run.failed}};
    return j;
}

}  // namespace symmconv
