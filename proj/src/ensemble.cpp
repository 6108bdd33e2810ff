#include "ovlab/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ovlab/philox.hpp"
#include "ovlab/quadrature.hpp"

namespace ovlab {

namespace {

constexpr double kRealEigTol = 1e-8;
constexpr double kResidualTol = 1e-8;
constexpr double kVCondTol = 1e12;
constexpr double kOverlapClamp = 1e-10;

}  // namespace

Eigen::MatrixXd sample_elliptic(const EllipticParams& params, std::uint64_t seed,
                                std::uint64_t index) {
    if (params.n < 2) throw DomainError("sample_elliptic: n must be at least 2");
    if (!(params.tau >= 0.0 && params.tau < 1.0))
        throw DomainError("sample_elliptic: tau must lie in [0, 1)");
    const int n = params.n;
    const NormalStream stream(seed, index);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = stream.normal(std::uint64_t(i) * n + j);
    const double symm = 0.5 * std::sqrt(1.0 + params.tau);
    const double skew = 0.5 * std::sqrt(1.0 - params.tau);
    return (symm + skew) * g + (symm - skew) * g.transpose();
}

SpectralSample overlaps(const Eigen::MatrixXd& x) {
    if (!x.allFinite()) throw DomainError("overlaps: matrix must be finite");
    SpectralSample out;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(x);
    if (solver.info() != Eigen::Success) {
        out.residual = kInf;
        return out;
    }
    const Eigen::MatrixXcd v = solver.eigenvectors();
    const Eigen::VectorXcd lambda = solver.eigenvalues();
    const Eigen::MatrixXcd vinv = v.inverse();
    const double scale = std::max(x.norm(), 1e-300);

    out.residual = (x * v - v * lambda.asDiagonal()).norm() / scale;
    out.vcond = v.norm() * vinv.norm();
    out.accepted = out.residual <= kResidualTol && out.vcond <= kVCondTol;

    // Gram matrices of the left rows and right columns; the overlap matrix is
    // O_kl = left(k, l) right(l, k), and sum_l O_kl = (left right)_kk, which
    // is exactly 1 by biorthogonal completeness.
    const Eigen::MatrixXcd left = vinv * vinv.adjoint();
    const Eigen::MatrixXcd right = v.adjoint() * v;
    const Eigen::VectorXcd row_sums = (left * right).diagonal();

    const int n = int(x.rows());
    for (int k = 0; k < n; ++k) {
        if (std::fabs(lambda(k).imag()) > kRealEigTol * scale) continue;
        out.row_sum_err = std::max(out.row_sum_err, std::abs(row_sums(k) - 1.0));
        double t = left(k, k).real() * right(k, k).real() - 1.0;
        if (t < 0.0) {
            if (t < -kOverlapClamp) out.accepted = false;
            t = 0.0;
        }
        out.pairs.push_back({lambda(k).real(), t});
    }
    // A drifting row sum means the inverse is no longer trustworthy even
    // when the residual and condition gates pass.
    if (out.row_sum_err > kResidualTol) out.accepted = false;
    return out;
}

std::vector<std::pair<double, double>> edge_rescale(const SpectralSample& sample,
                                                    const EllipticParams& params) {
    if (!sample.accepted) throw DomainError("edge_rescale: sample was rejected");
    const double center = std::sqrt(double(params.n)) * (1.0 + params.tau);
    const double stretch = std::pow(double(params.n), 1.0 / 6.0);
    std::vector<std::pair<double, double>> out;
    out.reserve(sample.pairs.size());
    for (const EigenPair& pair : sample.pairs)
        out.emplace_back((pair.lambda - center) * stretch, pair.t);
    return out;
}

namespace {

void check_edges(const std::vector<double>& edges, const char* axis) {
    if (edges.size() < 2) throw DomainError(std::string("histogram: need at least one ") + axis + " bin");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw DomainError(std::string("histogram: ") + axis + " edges must increase strictly");
}

// Bin of `value` under half-open [edge_i, edge_i+1) convention, or -1.
int find_bin(const std::vector<double>& edges, double value) {
    if (value < edges.front() || value >= edges.back()) return -1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), value);
    return int(it - edges.begin()) - 1;
}

}  // namespace

Histogram2D make_histogram(std::vector<double> z_edges, std::vector<double> t_edges) {
    check_edges(z_edges, "z");
    check_edges(t_edges, "t");
    Histogram2D hist;
    hist.counts.assign((z_edges.size() - 1) * (t_edges.size() - 1), 0);
    hist.z_edges = std::move(z_edges);
    hist.t_edges = std::move(t_edges);
    return hist;
}

void accumulate(Histogram2D& hist, const std::vector<std::pair<double, double>>& pairs) {
    const std::size_t t_bins = hist.t_edges.size() - 1;
    for (const auto& [z, t] : pairs) {
        const int zi = find_bin(hist.z_edges, z);
        const int ti = find_bin(hist.t_edges, t);
        if (zi >= 0 && ti >= 0) ++hist.counts[std::size_t(zi) * t_bins + ti];
    }
}

ComparisonReport compare(const Histogram2D& hist,
                         const std::function<double(double, double)>& density) {
    std::int64_t total = 0;
    for (std::int64_t c : hist.counts) total += c;
    if (hist.matrices <= 0 || total == 0)
        throw DomainError("compare: histogram holds no data");

    // The outer tolerance sits well above the inner one so the outer pass
    // never chases the inner quadrature's own error floor.
    QuadratureConfig inner_cfg;
    inner_cfg.rel_tol = 1e-9;
    inner_cfg.abs_tol = 1e-13;
    QuadratureConfig outer_cfg;
    outer_cfg.rel_tol = 1e-6;
    outer_cfg.abs_tol = 1e-10;

    ComparisonReport report;
    const std::size_t t_bins = hist.t_edges.size() - 1;
    for (std::size_t zi = 0; zi + 1 < hist.z_edges.size(); ++zi) {
        for (std::size_t ti = 0; ti + 1 < hist.t_edges.size(); ++ti) {
            BinReport bin;
            bin.z_lo = hist.z_edges[zi];
            bin.z_hi = hist.z_edges[zi + 1];
            bin.t_lo = hist.t_edges[ti];
            bin.t_hi = hist.t_edges[ti + 1];
            bin.observed = hist.counts[zi * t_bins + ti];
            // Finite-size densities carry half powers of t at the origin
            // (down to t^{-1/2} at matrix size two); u = sqrt(t) makes the
            // first bin's integrand smooth.
            auto slab = [&](double z) {
                if (bin.t_lo == 0.0) {
                    return integrate(
                        [&](double u) { return 2.0 * u * density(z, u * u); }, 0.0,
                        std::sqrt(bin.t_hi), inner_cfg);
                }
                return integrate([&](double t) { return density(z, t); }, bin.t_lo,
                                 bin.t_hi, inner_cfg);
            };
            bin.expected =
                double(hist.matrices) * integrate(slab, bin.z_lo, bin.z_hi, outer_cfg);
            if (bin.expected > 0.0)
                bin.residual = (double(bin.observed) - bin.expected) / std::sqrt(bin.expected);
            if (bin.expected >= 10.0) {
                report.chi_square += bin.residual * bin.residual;
                report.dof += 1;
                report.max_abs_residual =
                    std::max(report.max_abs_residual, std::fabs(bin.residual));
            }
            report.bins.push_back(bin);
        }
    }
    report.p_value = report.dof > 0 ? chi_square_tail(report.chi_square, report.dof) : 1.0;
    return report;
}

double chi_square_tail(double value, double dof) {
    if (!(dof > 0.0)) throw DomainError("chi_square_tail: dof must be positive");
    if (!(value >= 0.0)) throw DomainError("chi_square_tail: value must be nonnegative");
    const double a = 0.5 * dof;
    const double x = 0.5 * value;
    if (x == 0.0) return 1.0;
    const double log_front = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // Lower series: P(a, x) = x^a e^-x / Gamma(a) sum_k x^k / (a)_{k+1}.
        double term = 1.0 / a;
        double sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(log_front);
    }
    // Upper continued fraction, modified Lentz.
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(log_front) * h;
}

SampleRun run_samples(const EllipticParams& params, std::uint64_t seed,
                      std::int64_t matrices, int threads) {
    if (matrices < 0) throw DomainError("run_samples: matrix count must be nonnegative");
    SampleRun run;
    run.samples.resize(std::size_t(matrices));
    if (matrices == 0) return run;

    int workers = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    workers = std::clamp<int>(workers, 1, int(matrices));

    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (std::int64_t i = next++; i < matrices; i = next++) {
            SpectralSample sample = overlaps(sample_elliptic(params, seed, std::uint64_t(i)));
            sample.index = std::uint64_t(i);
            run.samples[std::size_t(i)] = std::move(sample);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers - 1));
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    for (const SpectralSample& sample : run.samples)
        if (!sample.accepted) ++run.rejected;
    return run;
}

}  // namespace ovlab
