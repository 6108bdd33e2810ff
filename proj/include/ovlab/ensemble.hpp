#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ovlab/errors.hpp"
#include "ovlab/finite_n.hpp"

namespace ovlab {

// One real eigenvalue of a sampled matrix together with its shifted
// self-overlap t = O_kk - 1 >= 0.
struct EigenPair {
    double lambda = 0.0;
    double t = 0.0;
};

// Spectral data of one sampled matrix: the accepted real-eigenvalue pairs
// plus the diagnostics that decide acceptance. A sample is rejected when the
// reconstruction residual or the eigenvector-matrix condition estimate shows
// the decomposition cannot be trusted, never because of its mathematics.
struct SpectralSample {
    std::uint64_t index = 0;
    std::vector<EigenPair> pairs;
    double residual = 0.0;     // ||X V - V Lambda|| / ||X||, Frobenius
    double vcond = 0.0;        // ||V|| ||V^-1||, Frobenius estimate
    double row_sum_err = 0.0;  // max_k |sum_l O_kl - 1| over real eigenvalues
    bool accepted = false;
};

// Draw matrix `index` of the stream keyed by `seed`:
//   X = sqrt(1 + tau) (G + G^T) / 2 + sqrt(1 - tau) (G - G^T) / 2
// with G filled from independent standard normals. Entries are addressed by
// counter, so the same (seed, index) gives the same matrix bit for bit on
// any thread schedule. Requires n >= 2 and 0 <= tau < 1.
Eigen::MatrixXd sample_elliptic(const EllipticParams& params, std::uint64_t seed,
                                std::uint64_t index);

// Full nonsymmetric eigendecomposition with right eigenvectors as columns of
// V and left eigenvectors as rows of V^-1, which makes the pair biorthonormal
// by construction. Real eigenvalues are those with |Im| <= 1e-8 ||X||; their
// overlap is O_kk = (V^-1 V^-H)_kk (V^H V)_kk. The caller stamps `index`.
SpectralSample overlaps(const Eigen::MatrixXd& x);

// Map accepted pairs to edge coordinates, zeta = (lambda - sqrt(n)(1 + tau))
// n^{1/6} with t unchanged.
std::vector<std::pair<double, double>> edge_rescale(const SpectralSample& sample,
                                                    const EllipticParams& params);

// Counts of (z, t) pairs on a rectangular grid. Pairs outside the edges are
// dropped, so the counts sum to the number of in-range pairs.
struct Histogram2D {
    std::vector<double> z_edges;  // strictly increasing, size >= 2
    std::vector<double> t_edges;
    std::vector<std::int64_t> counts;  // row-major over (z bin, t bin)
    std::int64_t matrices = 0;         // matrices behind the counts
};

// Empty histogram over the given edges; throws DomainError unless both edge
// lists are strictly increasing with at least one bin.
Histogram2D make_histogram(std::vector<double> z_edges, std::vector<double> t_edges);

void accumulate(Histogram2D& hist, const std::vector<std::pair<double, double>>& pairs);

struct BinReport {
    double z_lo = 0.0, z_hi = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    std::int64_t observed = 0;
    double expected = 0.0;
    double residual = 0.0;  // (observed - expected) / sqrt(expected)
};

// Goodness of fit of a histogram against a per-matrix density. The chi-square
// statistic, its degrees of freedom, the tail probability, and the residual
// summary all run over bins with expected count >= 10, where the Pearson
// normal approximation is sound; smaller bins are still listed.
struct ComparisonReport {
    std::vector<BinReport> bins;
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 1.0;
    double max_abs_residual = 0.0;
};

// Expected counts are hist.matrices times the density integrated over each
// bin. The density is per matrix and normalized to the expected number of
// pairs, not to 1. Throws DomainError on an empty histogram.
ComparisonReport compare(const Histogram2D& hist,
                         const std::function<double(double z, double t)>& density);

// Upper tail P(chi^2_dof > value) via the regularized incomplete gamma
// function.
double chi_square_tail(double value, double dof);

// Sampled stream prefix [0, matrices): every sample in index order plus the
// rejection count. `threads` caps the worker pool; zero picks the hardware
// count. Results are independent of the thread count.
struct SampleRun {
    std::vector<SpectralSample> samples;
    std::int64_t rejected = 0;
};

SampleRun run_samples(const EllipticParams& params, std::uint64_t seed,
                      std::int64_t matrices, int threads = 0);

}  // namespace ovlab
