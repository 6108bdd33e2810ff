#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ovlab/asymptotics.hpp"
#include "ovlab/ensemble.hpp"
#include "ovlab/finite_n.hpp"
#include "ovlab/verify.hpp"

namespace {

using namespace ovlab;

constexpr const char* kToolVersion = "1.0.0";

// Exit codes: 0 success, 1 comparison or verification failure, 2 usage
// error, 3 numerical failure.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kUsage;
}

// A grid argument: either one scalar or start:stop:count with count >= 2.
std::vector<double> parse_grid(const std::string& text) {
    const auto fail = [&](const std::string& why) -> std::vector<double> {
        throw std::invalid_argument("bad grid '" + text + "': " + why);
    };
    std::vector<std::string> parts;
    std::string::size_type from = 0;
    for (;;) {
        const auto colon = text.find(':', from);
        parts.push_back(text.substr(from, colon - from));
        if (colon == std::string::npos) break;
        from = colon + 1;
    }
    const auto number = [&](const std::string& s) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
            fail("'" + s + "' is not a finite number");
        return v;
    };
    if (parts.size() == 1) return {number(parts[0])};
    if (parts.size() != 3) return fail("expected a value or start:stop:count");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    char* end = nullptr;
    const long count = std::strtol(parts[2].c_str(), &end, 10);
    if (parts[2].empty() || end != parts[2].c_str() + parts[2].size())
        fail("'" + parts[2] + "' is not an integer count");
    if (count < 2) fail("count must be at least 2");
    if (count > 1000000) fail("count is unreasonably large");
    std::vector<double> values(count);
    for (long i = 0; i < count; ++i)
        values[i] = start + (stop - start) * double(i) / double(count - 1);
    return values;
}

bool all_positive(const std::vector<double>& values) {
    return std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; });
}

// Worker cap: OVERLAP_LAB_THREADS when set (strictly a positive integer),
// otherwise the hardware count.
int resolve_threads(std::string& error) {
    const char* env = std::getenv("OVERLAP_LAB_THREADS");
    if (env == nullptr || *env == '\0')
        return std::max(1u, std::thread::hardware_concurrency());
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) {
        error = "OVERLAP_LAB_THREADS must be a positive integer, got '" +
                std::string(env) + "'";
        return -1;
    }
    return static_cast<int>(v);
}

// Runs fn(0..count-1) across the worker pool; the first exception wins and
// is rethrown on the caller thread after everyone drains.
template <typename Fn>
void parallel_map(std::size_t count, int threads, Fn&& fn) {
    const int workers =
        std::clamp<int>(threads, 1, static_cast<int>(std::min<std::size_t>(count, 256)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mu;
    std::exception_ptr first_error;
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// 17 significant digits round-trips every double and is locale-independent
// as long as nobody calls setlocale, which this tool never does.
void append_sci(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    out += buf;
}

void append_row(std::string& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out += ',';
        append_sci(out, v);
        first = false;
    }
    out += '\n';
}

// Empty path means stdout. File output lands under a temporary name and is
// renamed into place, so a failed run never leaves a partial file.
int write_output(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return kOk;
    }
    const std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (f == nullptr) return usage_error("cannot open '" + tmp + "' for writing");
    const bool wrote = std::fwrite(body.data(), 1, body.size(), f) == body.size();
    const bool closed = std::fclose(f) == 0;
    if (!wrote || !closed) {
        std::remove(tmp.c_str());
        return usage_error("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        return usage_error("cannot rename '" + tmp + "' to '" + path + "'");
    }
    return kOk;
}

int run_edge_jpdf(double b, const std::vector<double>& zetas,
                  const std::vector<double>& ts, const std::string& out, int threads) {
    std::vector<std::vector<double>> rows(zetas.size());
    parallel_map(zetas.size(), threads, [&](std::size_t i) {
        const TQuadruple quad = t_quadruple(zetas[i], b);
        rows[i].reserve(ts.size());
        for (double t : ts) rows[i].push_back(jpdf_edge(quad, {zetas[i], t, b}));
    });
    std::string body = "zeta,t,density\n";
    body.reserve(body.size() + 72 * zetas.size() * ts.size());
    for (std::size_t i = 0; i < zetas.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
            append_row(body, {zetas[i], ts[j], rows[i][j]});
    return write_output(out, body);
}

int run_edge_density(double b, const std::vector<double>& zetas, const std::string& out,
                     int threads) {
    std::vector<double> values(zetas.size());
    parallel_map(zetas.size(), threads,
                 [&](std::size_t i) { values[i] = edge_density(zetas[i], b); });
    std::string body = "zeta,density\n";
    for (std::size_t i = 0; i < zetas.size(); ++i)
        append_row(body, {zetas[i], values[i]});
    return write_output(out, body);
}

int run_cond_density(double b, const std::vector<double>& zetas,
                     const std::vector<double>& ts, const std::string& out, int threads) {
    std::vector<std::vector<double>> rows(zetas.size());
    parallel_map(zetas.size(), threads, [&](std::size_t i) {
        rows[i].reserve(ts.size());
        for (double t : ts) rows[i].push_back(cond_density(t, zetas[i], b));
    });
    std::string body = "zeta,t,density\n";
    for (std::size_t i = 0; i < zetas.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
            append_row(body, {zetas[i], ts[j], rows[i][j]});
    return write_output(out, body);
}

int run_bulk_jpdf(double a, const std::vector<double>& ws, const std::vector<double>& ts,
                  const std::string& out, int threads) {
    std::vector<std::vector<double>> rows(ws.size());
    parallel_map(ws.size(), threads, [&](std::size_t i) {
        rows[i].reserve(ts.size());
        for (double t : ts) rows[i].push_back(bulk_weak_jpdf(ws[i], t, a));
    });
    std::string body = "w,t,density\n";
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
            append_row(body, {ws[i], ts[j], rows[i][j]});
    return write_output(out, body);
}

int run_strong_jpdf(const std::vector<double>& deltas, const std::vector<double>& sigmas,
                    const std::string& out, int threads) {
    std::vector<std::vector<double>> rows(deltas.size());
    parallel_map(deltas.size(), threads, [&](std::size_t i) {
        rows[i].reserve(sigmas.size());
        for (double s : sigmas) rows[i].push_back(strong_jpdf({deltas[i], s}));
    });
    std::string body = "delta,sigma,density\n";
    for (std::size_t i = 0; i < deltas.size(); ++i)
        for (std::size_t j = 0; j < sigmas.size(); ++j)
            append_row(body, {deltas[i], sigmas[j], rows[i][j]});
    return write_output(out, body);
}

int run_finite_jpdf(const EllipticParams& params, const std::vector<double>& zs,
                    const std::vector<double>& ts, const std::string& out, int threads) {
    std::vector<std::vector<double>> rows(zs.size());
    parallel_map(zs.size(), threads, [&](std::size_t i) {
        rows[i].reserve(ts.size());
        for (double t : ts) rows[i].push_back(jpdf_finite_t(zs[i], t, params));
    });
    std::string body = "z,t,density\n";
    for (std::size_t i = 0; i < zs.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
            append_row(body, {zs[i], ts[j], rows[i][j]});
    return write_output(out, body);
}

int run_sample(const EllipticParams& params, std::int64_t matrices, std::uint64_t seed,
               const std::string& out, int threads) {
    const SampleRun run = run_samples(params, seed, matrices, threads);
    if (params.n <= 200 && params.tau <= 0.95 &&
        double(run.rejected) > 0.01 * double(matrices)) {
        std::cerr << "error: " << run.rejected << " of " << matrices
                  << " samples rejected at n = " << params.n << ", tau = " << params.tau
                  << "; rates above 1% in this regime signal eigensolver trouble\n";
        return kNumerical;
    }
    std::string body = "matrix_index,lambda,t\n";
    std::int64_t pairs = 0;
    for (const SpectralSample& sample : run.samples) {
        if (!sample.accepted) continue;
        for (const EigenPair& pair : sample.pairs) {
            body += std::to_string(sample.index);
            body += ',';
            append_sci(body, pair.lambda);
            body += ',';
            append_sci(body, pair.t);
            body += '\n';
            ++pairs;
        }
    }
    const nlohmann::json meta{{"seed", seed},
                              {"n", params.n},
                              {"tau", params.tau},
                              {"matrices", matrices},
                              {"rejected_count", run.rejected},
                              {"real_eigenvalue_count", pairs},
                              {"tool_version", kToolVersion}};
    if (const int code = write_output(out, body); code != kOk) return code;
    return write_output(out + ".meta.json", meta.dump(2) + "\n");
}

struct SampleFile {
    std::vector<std::pair<double, double>> pairs;  // (lambda, t)
    EllipticParams params;
    std::int64_t matrices = 0;
};

int load_sample_file(const std::string& path, SampleFile& data) {
    std::ifstream csv(path, std::ios::binary);
    if (!csv) return usage_error("cannot read samples file '" + path + "'");
    std::string line;
    if (!std::getline(csv, line) || line != "matrix_index,lambda,t")
        return usage_error("'" + path + "' does not start with the sample CSV header");
    std::size_t line_no = 1;
    while (std::getline(csv, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = (c1 == std::string::npos) ? c1 : line.find(',', c1 + 1);
        char* end = nullptr;
        double lambda = 0.0, t = 0.0;
        bool ok = c2 != std::string::npos;
        if (ok) {
            lambda = std::strtod(line.c_str() + c1 + 1, &end);
            ok = end == line.c_str() + c2;
        }
        if (ok) {
            t = std::strtod(line.c_str() + c2 + 1, &end);
            ok = end == line.c_str() + line.size();
        }
        if (!ok)
            return usage_error("'" + path + "' line " + std::to_string(line_no) +
                               " is not matrix_index,lambda,t");
        data.pairs.emplace_back(lambda, t);
    }

    const std::string meta_path = path + ".meta.json";
    std::ifstream meta_in(meta_path, std::ios::binary);
    if (!meta_in) return usage_error("cannot read sidecar '" + meta_path + "'");
    std::stringstream buffer;
    buffer << meta_in.rdbuf();
    const nlohmann::json meta = nlohmann::json::parse(buffer.str(), nullptr, false);
    if (meta.is_discarded() || !meta.contains("n") || !meta.contains("tau") ||
        !meta.contains("matrices") || !meta["n"].is_number_integer() ||
        !meta["tau"].is_number() || !meta["matrices"].is_number_integer())
        return usage_error("sidecar '" + meta_path +
                           "' is missing n, tau, or matrices");
    data.params.n = meta["n"].get<int>();
    data.params.tau = meta["tau"].get<double>();
    data.matrices = meta["matrices"].get<std::int64_t>();
    if (data.params.n < 2 || data.params.tau < 0.0 || data.params.tau >= 1.0 ||
        data.matrices < 1)
        return usage_error("sidecar '" + meta_path + "' carries an invalid ensemble");
    return kOk;
}

int run_compare(const std::string& samples_path, const std::string& theory,
                const std::vector<double>& z_edges, const std::vector<double>& t_edges,
                const std::string& out) {
    SampleFile data;
    if (const int code = load_sample_file(samples_path, data); code != kOk) return code;

    Histogram2D hist = make_histogram(z_edges, t_edges);
    hist.matrices = data.matrices;
    std::function<double(double, double)> density;
    std::map<double, TQuadruple> memo;
    if (theory == "finite") {
        accumulate(hist, data.pairs);
        density = [params = data.params](double z, double t) {
            return jpdf_finite_t(z, t, params);
        };
    } else {
        // Edge coordinates: zeta = (lambda - sqrt(N)(1+tau)) N^{1/6} with the
        // non-normality parameter fixed by b^2 = (1 - tau) N^{1/3}.
        const double n = double(data.params.n);
        const double center = std::sqrt(n) * (1.0 + data.params.tau);
        const double stretch = std::pow(n, 1.0 / 6.0);
        const double b = std::sqrt((1.0 - data.params.tau) * std::cbrt(n));
        std::vector<std::pair<double, double>> rescaled;
        rescaled.reserve(data.pairs.size());
        for (const auto& [lambda, t] : data.pairs)
            rescaled.emplace_back((lambda - center) * stretch, t);
        accumulate(hist, rescaled);
        density = [&memo, b](double zeta, double t) {
            auto it = memo.find(zeta);
            if (it == memo.end()) it = memo.emplace(zeta, t_quadruple(zeta, b)).first;
            return jpdf_edge(it->second, {zeta, t, b});
        };
    }

    const ComparisonReport report = compare(hist, density);

    std::string body = "z_lo,z_hi,t_lo,t_hi,observed,expected,residual\n";
    for (const BinReport& bin : report.bins) {
        append_sci(body, bin.z_lo);
        body += ',';
        append_sci(body, bin.z_hi);
        body += ',';
        append_sci(body, bin.t_lo);
        body += ',';
        append_sci(body, bin.t_hi);
        body += ',';
        body += std::to_string(bin.observed);
        body += ',';
        append_sci(body, bin.expected);
        body += ',';
        append_sci(body, bin.residual);
        body += '\n';
    }
    std::string summary = "chi_square=";
    append_sci(summary, report.chi_square);
    summary += " dof=" + std::to_string(report.dof) + " p_value=";
    append_sci(summary, report.p_value);
    summary += " max_abs_residual=";
    append_sci(summary, report.max_abs_residual);
    body += "# " + summary + "\n";

    if (const int code = write_output(out, body); code != kOk) return code;
    if (!out.empty()) std::cout << summary << "\n";

    const bool sane = report.max_abs_residual <= 4.0 &&
                      (report.dof == 0 || report.p_value > 0.001);
    return sane ? kOk : kCheckFailed;
}

int run_verify(bool quick) {
    const std::vector<CheckResult> results = run_verification(quick);
    print_report(results, std::cout);
    return all_passed(results) ? kOk : kCheckFailed;
}

const char* kDeltaDegenerate =
    "b = 0 collapses the overlap marginal to a delta mass at t = 0, where no "
    "pointwise density exists";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Joint densities of real eigenvalues and eigenvector self-overlaps in "
        "the real elliptic ensemble: exact finite-size laws, asymptotic "
        "regimes, Monte Carlo, and a self-verification suite."};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    struct {
        double b = 0.0;
        std::string zeta, t, out;
    } edge, cond;
    struct {
        double b = 0.0;
        std::string zeta, out;
    } density;
    struct {
        double a = 0.0;
        std::string w, t, out;
    } bulk;
    struct {
        std::string delta, sigma, out;
    } strong;
    struct {
        int n = 0;
        double tau = 0.0;
        std::string z, t, out;
    } finite;
    struct {
        int n = 0;
        double tau = 0.0;
        std::int64_t matrices = 0;
        std::uint64_t seed = 0;
        std::string out;
    } sample;
    struct {
        std::string samples, theory, zeta_bins, t_bins, out;
    } comp;
    bool quick = false;

    const char* grid_help = "scalar or start:stop:count (count >= 2)";

    CLI::App* cmd = app.add_subcommand(
        "edge-jpdf", "Edge-regime joint density of (zeta, t) at fixed b");
    cmd->add_option("--b", edge.b, "non-normality parameter, b > 0")->required();
    cmd->add_option("--zeta", edge.zeta, grid_help)->required();
    cmd->add_option("--t", edge.t, grid_help)->required();
    cmd->add_option("--out", edge.out, "output CSV path (default stdout)");

    cmd = app.add_subcommand("edge-density",
                             "Edge-regime eigenvalue density, the t-marginal");
    cmd->add_option("--b", density.b, "non-normality parameter, b >= 0")->required();
    cmd->add_option("--zeta", density.zeta, grid_help)->required();
    cmd->add_option("--out", density.out, "output CSV path (default stdout)");

    cmd = app.add_subcommand(
        "cond-density", "Overlap density conditioned on the eigenvalue position");
    cmd->add_option("--b", cond.b, "non-normality parameter, b > 0")->required();
    cmd->add_option("--zeta", cond.zeta, grid_help)->required();
    cmd->add_option("--t", cond.t, grid_help)->required();
    cmd->add_option("--out", cond.out, "output CSV path (default stdout)");

    cmd = app.add_subcommand("bulk-jpdf",
                             "Bulk weak non-normality joint density of (w, t)");
    cmd->add_option("--a", bulk.a, "asymmetry parameter, a > 0")->required();
    cmd->add_option("--w", bulk.w, grid_help)->required();
    cmd->add_option("--t", bulk.t, grid_help)->required();
    cmd->add_option("--out", bulk.out, "output CSV path (default stdout)");

    cmd = app.add_subcommand("strong-jpdf",
                             "Strong non-normality joint density of (delta, sigma)");
    cmd->add_option("--delta", strong.delta, grid_help)->required();
    cmd->add_option("--sigma", strong.sigma, grid_help)->required();
    cmd->add_option("--out", strong.out, "output CSV path (default stdout)");

    cmd = app.add_subcommand("finite-jpdf",
                             "Exact finite-size joint density of (z, t)");
    cmd->add_option("--n", finite.n, "matrix size, n >= 2")->required();
    cmd->add_option("--tau", finite.tau, "asymmetry, 0 <= tau < 1")->required();
    cmd->add_option("--z", finite.z, grid_help)->required();
    cmd->add_option("--t", finite.t, grid_help)->required();
    cmd->add_option("--out", finite.out, "output CSV path (default stdout)");

    cmd = app.add_subcommand(
        "sample", "Sample matrices and emit accepted real-eigenvalue (lambda, t) pairs");
    cmd->add_option("--n", sample.n, "matrix size, n >= 2")->required();
    cmd->add_option("--tau", sample.tau, "asymmetry, 0 <= tau < 1")->required();
    cmd->add_option("--matrices", sample.matrices, "number of matrices, >= 1")
        ->required();
    cmd->add_option("--seed", sample.seed, "stream seed")->required();
    cmd->add_option("--out", sample.out, "output CSV path; sidecar lands at .meta.json")
        ->required();

    cmd = app.add_subcommand(
        "compare", "Bin a sample file and test it against an exact or limiting law");
    cmd->add_option("--samples", comp.samples, "CSV written by the sample command")
        ->required();
    cmd->add_option("--theory", comp.theory, "reference law")
        ->required()
        ->check(CLI::IsMember({"finite", "edge"}));
    cmd->add_option("--zeta-bins", comp.zeta_bins,
                    "bin edges for the spectral variable, start:stop:count")
        ->required();
    cmd->add_option("--t-bins", comp.t_bins, "bin edges for t, start:stop:count")
        ->required();
    cmd->add_option("--out", comp.out, "per-bin report CSV path (default stdout)");

    cmd = app.add_subcommand("verify", "Run the library's cross-oracle identity suite");
    cmd->add_flag("--quick", quick, "one probe point per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    std::string thread_error;
    const int threads = resolve_threads(thread_error);
    if (threads < 0) return usage_error(thread_error);

    try {
        if (app.got_subcommand("edge-jpdf")) {
            if (edge.b == 0.0) return usage_error(kDeltaDegenerate);
            if (edge.b < 0.0) return usage_error("b must be positive");
            const auto zetas = parse_grid(edge.zeta);
            const auto ts = parse_grid(edge.t);
            if (!all_positive(ts)) return usage_error("t grid must be strictly positive");
            return run_edge_jpdf(edge.b, zetas, ts, edge.out, threads);
        }
        if (app.got_subcommand("edge-density")) {
            if (density.b < 0.0) return usage_error("b must be nonnegative");
            return run_edge_density(density.b, parse_grid(density.zeta), density.out,
                                    threads);
        }
        if (app.got_subcommand("cond-density")) {
            if (cond.b == 0.0) return usage_error(kDeltaDegenerate);
            if (cond.b < 0.0) return usage_error("b must be positive");
            const auto zetas = parse_grid(cond.zeta);
            const auto ts = parse_grid(cond.t);
            if (!all_positive(ts)) return usage_error("t grid must be strictly positive");
            return run_cond_density(cond.b, zetas, ts, cond.out, threads);
        }
        if (app.got_subcommand("bulk-jpdf")) {
            if (bulk.a <= 0.0) return usage_error("a must be positive");
            const auto ws = parse_grid(bulk.w);
            const auto ts = parse_grid(bulk.t);
            if (!all_positive(ws)) return usage_error("w grid must be strictly positive");
            if (!all_positive(ts)) return usage_error("t grid must be strictly positive");
            return run_bulk_jpdf(bulk.a, ws, ts, bulk.out, threads);
        }
        if (app.got_subcommand("strong-jpdf")) {
            const auto deltas = parse_grid(strong.delta);
            const auto sigmas = parse_grid(strong.sigma);
            if (!all_positive(sigmas))
                return usage_error("sigma grid must be strictly positive");
            return run_strong_jpdf(deltas, sigmas, strong.out, threads);
        }
        if (app.got_subcommand("finite-jpdf")) {
            if (finite.n < 2) return usage_error("n must be at least 2");
            if (finite.tau < 0.0 || finite.tau >= 1.0)
                return usage_error("tau must satisfy 0 <= tau < 1");
            const auto zs = parse_grid(finite.z);
            const auto ts = parse_grid(finite.t);
            if (!all_positive(ts)) return usage_error("t grid must be strictly positive");
            return run_finite_jpdf({finite.n, finite.tau}, zs, ts, finite.out, threads);
        }
        if (app.got_subcommand("sample")) {
            if (sample.n < 2) return usage_error("n must be at least 2");
            if (sample.tau < 0.0 || sample.tau >= 1.0)
                return usage_error("tau must satisfy 0 <= tau < 1");
            if (sample.matrices < 1) return usage_error("matrices must be at least 1");
            return run_sample({sample.n, sample.tau}, sample.matrices, sample.seed,
                              sample.out, threads);
        }
        if (app.got_subcommand("compare")) {
            const auto z_edges = parse_grid(comp.zeta_bins);
            const auto t_edges = parse_grid(comp.t_bins);
            const auto ascending = [](const std::vector<double>& e) {
                return e.size() >= 2 &&
                       std::adjacent_find(e.begin(), e.end(),
                                          std::greater_equal<double>()) == e.end();
            };
            if (!ascending(z_edges) || !ascending(t_edges))
                return usage_error("bin grids need at least two strictly increasing edges");
            return run_compare(comp.samples, comp.theory, z_edges, t_edges, comp.out);
        }
        return run_verify(quick);
    } catch (const DomainError& e) {
        // Arguments are validated before computation, so a domain breach here
        // means the requested point is numerically meaningless, not mistyped.
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        // Grid syntax errors surface here.
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}
