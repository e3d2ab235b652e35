// Integration tests that drive the installed binary as a subprocess.
// Invocation: test_cli <path-to-binary> <fixtures-dir> [catch2 args...]

#include <catch2/catch_amalgamated.hpp>

#include <symmconv/analysis.hpp>
#include <symmconv/report_json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using Catch::Approx;
namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_fixtures;

struct RunOutput {
    int exit_code = -1;
    std::string out;
};

// runs through /bin/sh; stderr goes to a side channel we don't inspect here
RunOutput run(const std::string& args, bool keep_stderr = false) {
    std::string cmd = g_cli + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
    RunOutput r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

symmconv::json parse_json(const std::string& text) {
    return symmconv::json::parse(text);
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("check accepts a convex function") {
    auto r = run("check --f \"x^2\" --p 1 --interval 1,3");
    CHECK(r.exit_code == 0);
    auto j = parse_json(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "check");
    CHECK(j["holds"] == true);
    CHECK(j["config"]["f"] == "x^2");
    CHECK(j["config"]["symmetrized"] == false);
    CHECK(j.contains("witness") == false);
}

TEST_CASE("check rejects -ln x at p = -1 with a usable witness") {
    auto r = run("check --f \"-ln(x)\" --p -1 --interval 1,2");
    CHECK(r.exit_code == 1);
    auto j = parse_json(r.out);
    CHECK(j["holds"] == false);
    double worst = j["worst_defect"].get<double>();
    CHECK(worst >= 0.05);
    REQUIRE(j.contains("witness"));
    double wx = j["witness"]["x"].get<double>();
    double wy = j["witness"]["y"].get<double>();
    double wt = j["witness"]["t"].get<double>();
    // re-check the witness through the library
    double again = symmconv::defect([](double v) { return -std::log(v); }, wx,
                                    wy, wt, symmconv::PParam(-1.0));
    CHECK(again == Approx(worst).margin(1e-12));
}

TEST_CASE("check --symmetrized separates the wiggly example") {
    std::string f = "\"x^2 + 5*(x-2)^3\"";
    auto plain = run("check --f " + f + " --p 1 --interval 1,3");
    CHECK(plain.exit_code == 1);
    auto sym = run("check --f " + f + " --p 1 --interval 1,3 --symmetrized");
    CHECK(sym.exit_code == 0);
    auto j = parse_json(sym.out);
    CHECK(j["config"]["symmetrized"] == true);
    CHECK(j["worst_defect"].get<double>() <= 1e-9);
}

TEST_CASE("verify hh reports the classic chain") {
    auto r = run("verify hh --f \"x^2\" --p 1 --interval 1,3");
    CHECK(r.exit_code == 0);
    auto j = parse_json(r.out);
    CHECK(j["command"] == "verify");
    REQUIRE(j["terms"].size() == 3);
    CHECK(j["terms"][0]["value"].get<double>() == Approx(4.0).margin(1e-9));
    CHECK(j["terms"][1]["value"].get<double>()
          == Approx(13.0 / 3.0).margin(1e-8));
    CHECK(j["terms"][2]["value"].get<double>() == Approx(5.0).margin(1e-9));
    CHECK(j["margins"].size() == 2);
    CHECK(j["holds"] == true);
    CHECK(j["report"]["name"] == "hh_symmetrized");
}

TEST_CASE("verify subcommands cover every chain") {
    for (const char* chain :
         {"hh", "chain", "reflected", "refinement", "double"}) {
        auto r = run(std::string("verify ") + chain
                     + " --f \"x^2\" --p 1 --interval 1,3");
        INFO(chain);
        CHECK(r.exit_code == 0);
        auto j = parse_json(r.out);
        CHECK(j["holds"] == true);
    }
    auto fw = run("verify fejer --f \"x^2\" --w \"(x-2)^2\" --p 1 --interval 1,3");
    CHECK(fw.exit_code == 0);
    auto ff = run("verify fracfejer --f \"x^2\" --w \"1\" --alpha 0.5 "
                  "--p 1 --interval 1,3");
    CHECK(ff.exit_code == 0);
    auto j = parse_json(ff.out);
    CHECK(j["report"]["notes"]["case"] == "i");
}

TEST_CASE("verify hh fails honestly on the reversed chain") {
    auto r = run("verify hh --f \"-ln(x)\" --p -1 --interval 1,2");
    CHECK(r.exit_code == 1);
    auto j = parse_json(r.out);
    CHECK(j["holds"] == false);
    CHECK(j["margins"][0].get<double>() < 0.0);
}

TEST_CASE("usage problems exit with 2") {
    CHECK(run("check --p 1 --interval 1,3").exit_code == 2);           // no --f
    CHECK(run("check --f \"2 +\" --p 1 --interval 1,3").exit_code == 2);
    CHECK(run("check --f \"x^2\" --p 1 --interval 3,1").exit_code == 2);
    CHECK(run("check --f \"x^2\" --p 0 --interval 1,3").exit_code == 2);
    CHECK(run("verify fejer --f \"x^2\" --p 1 --interval 1,3").exit_code == 2);
    CHECK(run("verify fracfejer --f \"x^2\" --w \"1\" --p 1 --interval 1,3")
              .exit_code == 2);
    CHECK(run("verify nosuch --f \"x^2\" --p 1 --interval 1,3").exit_code == 2);
    CHECK(run("fracint --alpha 0.5 --base 0 --at 1 --side left").exit_code == 2);
    CHECK(run("nosuchcommand").exit_code == 2);
    CHECK(run("check --f \"x^2 + c\" --p 1 --interval 1,3").exit_code == 2);
    CHECK(run("corpus /nonexistent-directory-xyz").exit_code == 2);
}

TEST_CASE("fracint evaluates the flat integrand") {
    auto r = run("fracint --h \"1\" --alpha 0.5 --base 0 --at 1 --side left");
    CHECK(r.exit_code == 0);
    auto j = parse_json(r.out);
    // 1 / Gamma(1.5) = 2 / sqrt(pi)
    CHECK(j["value"].get<double>()
          == Approx(2.0 / std::sqrt(std::acos(-1.0))).margin(1e-7));
    CHECK(j["converged"] == true);
    auto rr = run("fracint --h \"x\" --alpha 1 --base 0 --at 2 --side left");
    auto jj = parse_json(rr.out);
    CHECK(jj["value"].get<double>() == Approx(2.0).margin(1e-9));
}

TEST_CASE("transform emits plot-ready CSV") {
    auto r = run("transform --f \"x^2\" --p 1 --interval 1,3 --samples 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("x,f,transform,antitransform\n", 0) == 0);
    CHECK(count_lines(r.out) == 6);  // header + 5 rows
    // last row is the right endpoint: f = 9, even part = 5, odd part = 4
    CHECK(r.out.find("\n3,9,5,4\n") != std::string::npos);
}

TEST_CASE("transform json carries the sample arrays") {
    auto r = run("transform --f \"x^2\" --p 1 --interval 1,3 --samples 3 "
                 "--format json");
    auto j = parse_json(r.out);
    REQUIRE(j["samples"].size() == 3);
    CHECK(j["samples"][1]["x"].get<double>() == Approx(2.0));
    CHECK(j["samples"][1]["transform"].get<double>() == Approx(4.0));
    CHECK(j["samples"][1]["antitransform"].get<double>() == Approx(0.0));
}

TEST_CASE("corpus passes and is byte-deterministic") {
    auto first = run("corpus " + g_fixtures + " --format json");
    CHECK(first.exit_code == 0);
    auto j = parse_json(first.out);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["summary"]["total"].get<int>() >= 10);
    CHECK(j["holds"] == true);

    auto second = run("corpus " + g_fixtures + " --format json");
    CHECK(second.exit_code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("corpus human table names each fixture") {
    auto r = run("corpus " + g_fixtures);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("non-convergence exits with 3") {
    auto r = run("verify hh --f \"sin(1000*x)\" --p 1 "
                 "--interval 1,3 --max-subdivisions 2");
    CHECK(r.exit_code == 3);
    auto j = parse_json(r.out);
    bool has_warning = false;
    for (const auto& w : j["warnings"])
        if (w.get<std::string>().find("converge") != std::string::npos)
            has_warning = true;
    CHECK(has_warning);
}

TEST_CASE("quadrature tolerance env var feeds the config") {
    std::string save = g_cli;
    g_cli = "SYMMCONV_QUAD_TOL=1e-5 " + g_cli;
    auto r = run("verify hh --f \"x^2\" --p 1 --interval 1,3");
    g_cli = save;
    CHECK(r.exit_code == 0);
    auto j = parse_json(r.out);
    CHECK(j["config"]["quad"]["abs_tol"].get<double>() == Approx(1e-5));
    CHECK(j["config"]["quad"]["rel_tol"].get<double>() == Approx(1e-5));

    g_cli = "SYMMCONV_QUAD_TOL=bogus " + save;
    auto bad = run("verify hh --f \"x^2\" --p 1 --interval 1,3");
    g_cli = save;
    CHECK(bad.exit_code == 2);
}

TEST_CASE("explicit flags beat the env var") {
    std::string save = g_cli;
    g_cli = "SYMMCONV_QUAD_TOL=1e-3 " + g_cli;
    auto r = run("verify hh --f \"x^2\" --p 1 --interval 1,3 --abs-tol 1e-9");
    g_cli = save;
    auto j = parse_json(r.out);
    CHECK(j["config"]["quad"]["abs_tol"].get<double>() == Approx(1e-9));
    CHECK(j["config"]["quad"]["rel_tol"].get<double>() == Approx(1e-3));
}

TEST_CASE("config file supplies defaults under flags") {
    fs::path cfg = fs::temp_directory_path()
                 / ("symmconv_cli_cfg_" + std::to_string(::getpid()) + ".toml");
    {
        std::ofstream out(cfg);
        out << "[verify]\n"
               "f = \"x^2\"\n"
               "p = 1\n"
               "interval = [1, 3]\n";
    }
    auto r = run("verify hh --config " + cfg.string());
    CHECK(r.exit_code == 0);
    auto j = parse_json(r.out);
    CHECK(j["config"]["f"] == "x^2");
    CHECK(j["config"]["b"].get<double>() == Approx(3.0));

    // a flag on the command line overrides the file
    auto r2 = run("verify hh --config " + cfg.string() + " --f \"exp(x)\"");
    CHECK(r2.exit_code == 0);
    auto j2 = parse_json(r2.out);
    CHECK(j2["config"]["f"] == "exp(x)");

    fs::remove(cfg);
}

TEST_CASE("--output writes the payload to a file") {
    fs::path out_path =
        fs::temp_directory_path()
        / ("symmconv_cli_out_" + std::to_string(::getpid()) + ".json");
    auto r = run("verify hh --f \"x^2\" --p 1 --interval 1,3 --output "
                 + out_path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(out_path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    auto j = parse_json(text);
    CHECK(j["holds"] == true);
    fs::remove(out_path);
}

TEST_CASE("timings are opt-in") {
    auto plain = run("verify hh --f \"x^2\" --p 1 --interval 1,3");
    CHECK(parse_json(plain.out).contains("timings_ms") == false);
    auto timed = run("verify hh --f \"x^2\" --p 1 --interval 1,3 --timings");
    auto j = parse_json(timed.out);
    REQUIRE(j.contains("timings_ms"));
    CHECK(j["timings_ms"]["total"].get<double>() >= 0.0);
}

TEST_CASE("check csv and human formats") {
    auto csv = run("check --f \"x^2\" --p 1 --interval 1,3 --format csv");
    CHECK(csv.out.rfind("holds,worst_defect,", 0) == 0);
    CHECK(csv.out.find("\ntrue,") != std::string::npos);
    auto human = run("check --f \"x^2\" --p 1 --interval 1,3 --format human");
    CHECK(human.out.find("holds: yes") != std::string::npos);
    auto vcsv = run("verify hh --f \"x^2\" --p 1 --interval 1,3 --format csv");
    CHECK(vcsv.out.rfind("kind,label,value\n", 0) == 0);
    CHECK(vcsv.out.find("term,midpoint_value,4\n") != std::string::npos);
}

TEST_CASE("parameters bind through --param") {
    auto r = run("check --f \"(x^p - a^p)^(alpha - 1)\" --p 2 --interval 1,2 "
                 "--param alpha=3");
    CHECK(r.exit_code == 0);
    auto j = parse_json(r.out);
    CHECK(j["config"]["params"]["alpha"].get<double>() == Approx(3.0));
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr,
                     "usage: test_cli <path-to-binary> <fixtures-dir> "
                     "[catch2 options]\n");
        return 2;
    }
    g_cli = argv[1];
    g_fixtures = argv[2];
    if (!fs::exists(g_cli)) {
        std::fprintf(stderr, "binary not found: %s\n", g_cli.c_str());
        return 2;
    }
    // hand the remaining args to Catch2 under the original program name
    std::vector<char*> args;
    args.push_back(argv[0]);
    for (int i = 3; i < argc; ++i) args.push_back(argv[i]);
    return Catch::Session().run(static_cast<int>(args.size()), args.data());
}
