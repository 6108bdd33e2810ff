#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ovlab/asymptotics.hpp"
#include "ovlab/finite_n.hpp"
#include "ovlab/quadrature.hpp"
#include "ovlab/verify.hpp"

using namespace ovlab;

namespace {

std::string g_tool;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Runs the tool through the shell with stdout and stderr captured; env is an
// optional VAR=value prefix.
RunResult run_tool(const std::string& args, const std::string& env = "") {
    const std::string cmd = (env.empty() ? "" : env + " ") + "'" + g_tool + "' " + args +
                            " > cli_test_stdout.txt 2> cli_test_stderr.txt";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    if (raw >= 0 && WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
    r.out = read_file("cli_test_stdout.txt");
    r.err = read_file("cli_test_stderr.txt");
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string::size_type from = 0;
    while (from < text.size()) {
        const auto nl = text.find('\n', from);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(from));
            break;
        }
        lines.push_back(text.substr(from, nl - from));
        from = nl + 1;
    }
    return lines;
}

// Mirrors the tool's value formatting, so plumbing tests can demand byte
// equality instead of approximate agreement.
std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

double third_field(const std::string& line) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    return std::strtod(line.c_str() + c2 + 1, nullptr);
}

}  // namespace

TEST_CASE("grid outputs are byte stable, row major, and thread independent") {
    const std::string args = "edge-jpdf --b 0.6 --zeta -2:0:3 --t 0.5:1.5:3";
    const RunResult first = run_tool(args);
    REQUIRE(first.code == 0);
    const RunResult again = run_tool(args);
    CHECK(again.code == 0);
    CHECK(first.out == again.out);
    const RunResult serial = run_tool(args, "OVERLAP_LAB_THREADS=1");
    CHECK(serial.code == 0);
    CHECK(serial.out == first.out);

    const auto lines = lines_of(first.out);
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "zeta,t,density");
    // Outer variable first: three t rows per zeta, zeta ascending, t ascending
    // inside each block.
    for (int i = 0; i < 9; ++i) {
        const double zeta = -2.0 + double(i / 3);
        const double t = 0.5 + 0.5 * double(i % 3);
        const std::string prefix = sci(zeta) + "," + sci(t) + ",";
        CHECK(lines[1 + i].substr(0, prefix.size()) == prefix);
    }
    CHECK(first.out.find('\r') == std::string::npos);
    CHECK(first.out.back() == '\n');
}

TEST_CASE("singleton grids reproduce the library calls exactly") {
    const struct {
        std::string args;
        std::string row;
    } table[] = {
        {"edge-jpdf --b 0.6 --zeta -2 --t 1",
         sci(-2.0) + "," + sci(1.0) + "," + sci(jpdf_edge({-2.0, 1.0, 0.6}))},
        {"edge-density --b 0.6 --zeta -4", sci(-4.0) + "," + sci(edge_density(-4.0, 0.6))},
        {"cond-density --b 0.6 --zeta -4 --t 2",
         sci(-4.0) + "," + sci(2.0) + "," + sci(cond_density(2.0, -4.0, 0.6))},
        {"bulk-jpdf --a 1.41421356 --w 1 --t 0.7",
         sci(1.0) + "," + sci(0.7) + "," + sci(bulk_weak_jpdf(1.0, 0.7, 1.41421356))},
        {"strong-jpdf --delta -0.5 --sigma 0.4",
         sci(-0.5) + "," + sci(0.4) + "," + sci(strong_jpdf({-0.5, 0.4}))},
        {"finite-jpdf --n 4 --tau 0.3 --z 0.5 --t 1.2",
         sci(0.5) + "," + sci(1.2) + "," + sci(jpdf_finite_t(0.5, 1.2, {4, 0.3}))},
    };
    for (const auto& probe : table) {
        CAPTURE(probe.args);
        const RunResult r = run_tool(probe.args);
        CHECK(r.code == 0);
        const auto lines = lines_of(r.out);
        REQUIRE(lines.size() == 2);
        CHECK(lines[1] == probe.row);
    }
}

TEST_CASE("usage errors exit with code two") {
    const RunResult degenerate = run_tool("edge-jpdf --b 0 --zeta 1 --t 1");
    CHECK(degenerate.code == 2);
    CHECK(degenerate.err.find("delta") != std::string::npos);

    CHECK(run_tool("finite-jpdf --n 1 --tau 0.5 --z 0 --t 1").code == 2);
    CHECK(run_tool("sample --n 5 --tau 1.0 --matrices 1 --seed 1 --out x.csv").code == 2);
    CHECK(run_tool("edge-jpdf --b 1 --zeta 1:2 --t 1").code == 2);
    CHECK(run_tool("edge-jpdf --b 1 --zeta 1 --t 0:1:5").code == 2);
    CHECK(run_tool("edge-jpdf --b 1 --zeta 1:2:1 --t 1").code == 2);
    CHECK(run_tool("no-such-command").code == 2);
    CHECK(run_tool("").code == 2);
    CHECK(run_tool("compare --samples missing.csv --theory nope --zeta-bins 0:1:3 "
                   "--t-bins 0:1:3")
              .code == 2);
    CHECK(run_tool("verify --quick", "OVERLAP_LAB_THREADS=zebra").code == 2);
    CHECK(run_tool("--help").code == 0);
    CHECK(run_tool("edge-jpdf --help").code == 0);
}

TEST_CASE("numerical failures exit with code three") {
    // Far beyond the spectral edge the eigenvalue density underflows and
    // conditioning on it is meaningless.
    const RunResult r = run_tool("cond-density --b 0.6 --zeta 40 --t 1");
    CHECK(r.code == 3);
    CHECK(!r.err.empty());
}

TEST_CASE("sample emits deterministic data with a faithful sidecar") {
    const std::string args = "sample --n 10 --tau 0 --matrices 400 --seed 5";
    REQUIRE(run_tool(args + " --out cli_test_a.csv").code == 0);
    REQUIRE(run_tool(args + " --out cli_test_b.csv").code == 0);
    REQUIRE(run_tool(args + " --out cli_test_c.csv", "OVERLAP_LAB_THREADS=3").code == 0);
    const std::string body = read_file("cli_test_a.csv");
    CHECK(body == read_file("cli_test_b.csv"));
    CHECK(body == read_file("cli_test_c.csv"));

    const auto lines = lines_of(body);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "matrix_index,lambda,t");
    const std::int64_t rows = std::int64_t(lines.size()) - 1;

    const nlohmann::json meta = nlohmann::json::parse(read_file("cli_test_a.csv.meta.json"));
    CHECK(meta.at("n").get<int>() == 10);
    CHECK(meta.at("tau").get<double>() == 0.0);
    CHECK(meta.at("matrices").get<std::int64_t>() == 400);
    CHECK(meta.at("seed").get<std::uint64_t>() == 5);
    CHECK(meta.at("rejected_count").get<std::int64_t>() >= 0);
    CHECK(meta.at("real_eigenvalue_count").get<std::int64_t>() == rows);
    CHECK(!meta.at("tool_version").get<std::string>().empty());

    // Every t is a nonnegative shifted overlap.
    for (std::size_t i = 1; i < lines.size(); ++i) CHECK(third_field(lines[i]) >= 0.0);

    // The mean number of rows per matrix ties the sampler to the density
    // normalization: integrate the exact law over its whole domain.
    const EllipticParams params{10, 0.0};
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-6;
    const double edge = std::sqrt(double(params.n)) * (1.0 + params.tau);
    auto z_slab = [&](double z) {
        return integrate(
            [&](double u) {
                return jpdf_finite(z, (1.0 - u) / u, params) / (u * u);
            },
            0.0, 1.0, cfg);
    };
    const double expected = integrate(z_slab, -edge - 6.0, edge + 6.0, cfg);
    const double observed = double(rows) / 400.0;
    CHECK(observed == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("compare judges samples against the finite and edge laws") {
    REQUIRE(run_tool("sample --n 10 --tau 0.5 --matrices 2000 --seed 11 "
                     "--out cli_test_s.csv")
                .code == 0);

    const RunResult finite = run_tool(
        "compare --samples cli_test_s.csv --theory finite --zeta-bins -3:3:7 "
        "--t-bins 0:4:5 --out cli_test_cmp.csv");
    CHECK(finite.code == 0);
    CHECK(finite.out.find("chi_square=") != std::string::npos);
    CHECK(finite.out.find("max_abs_residual=") != std::string::npos);
    const auto report = lines_of(read_file("cli_test_cmp.csv"));
    REQUIRE(report.size() == 26);  // header + 6 x 4 bins + summary
    CHECK(report[0] == "z_lo,z_hi,t_lo,t_hi,observed,expected,residual");
    CHECK(report[25].substr(0, 13) == "# chi_square=");

    // The same data against the limiting edge law is only an approximation at
    // N = 10; the report must still be well formed, whatever the verdict.
    const RunResult edge = run_tool(
        "compare --samples cli_test_s.csv --theory edge --zeta-bins -3:2:6 "
        "--t-bins 0:4:5");
    CHECK((edge.code == 0 || edge.code == 1));
    CHECK(edge.out.find("# chi_square=") != std::string::npos);

    CHECK(run_tool("compare --samples cli_test_missing.csv --theory finite "
                   "--zeta-bins -3:3:7 --t-bins 0:4:5")
              .code == 2);
}

TEST_CASE("the verification suite passes and trips on an injected fault") {
    using clock = std::chrono::steady_clock;

    auto t0 = clock::now();
    const RunResult quick = run_tool("verify --quick");
    const double quick_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    CHECK(quick.code == 0);
    CHECK(quick_seconds < 20.0);
    CHECK(quick.out.find("pass") != std::string::npos);

    t0 = clock::now();
    const RunResult full = run_tool("verify");
    const double full_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    CHECK(full.code == 0);
    CHECK(full_seconds < 300.0);
    CHECK(full.out.find("FAIL") == std::string::npos);

    // Handing the suite a broken coefficient provider must trip exactly the
    // identity that consumes it, proving the checks can actually fail.
    VerifyHooks hooks;
    hooks.quadruple = [](double zeta, double b) {
        TQuadruple quad = t_quadruple(zeta, b);
        quad.t1 = -quad.t1;
        return quad;
    };
    const std::vector<CheckResult> results = run_verification(true, hooks);
    CHECK(!all_passed(results));
    for (const CheckResult& check : results) {
        if (!check.passed) CHECK(check.name.find("integration") != std::string::npos);
    }
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <overlap-lab binary>\n");
        return 1;
    }
    g_tool = argv[1];
    doctest::Context context;
    context.applyCommandLine(1, argv);
    return context.run();
}
