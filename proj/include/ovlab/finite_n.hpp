#pragma once

#include <vector>

#include "ovlab/errors.hpp"
#include "ovlab/log_value.hpp"

namespace ovlab {

// Matrix size and asymmetry of the real elliptic ensemble. tau interpolates
// from the real Ginibre ensemble (tau = 0) to the symmetric case (tau = 1,
// rejected as degenerate by the density layer). Sum orders below 2 are legal
// for the polynomial layer; the density itself requires n >= 2.
struct EllipticParams {
    int n = 2;
    double tau = 0.0;
};

// Contours of the double-integral oracle: a vertical line through delta and
// a circle of radius epsilon around the origin, with delta > epsilon so the
// line stays outside the circle.
struct ContourSpec {
    double delta = 2.0;
    double epsilon = 1.0;
};

// Monic-type Hermite values p_k(z) = tau^{k/2} He_k(z / sqrt(tau)) in the
// normalized form h_k = p_k / sqrt(k!), stored as a double mantissa plus a
// per-index log scale so that orders up to 10^4 stay representable.
class HermiteSeq {
public:
    // Highest stored index (n + 1 for a sequence built from EllipticParams).
    int top() const { return static_cast<int>(value_.size()) - 1; }

    LogValue h(int k) const {
        return LogValue::from_real(value_[k]) * LogValue::exp_of(shift_[k]);
    }
    // Un-normalized p_k = h_k * sqrt(k!).
    LogValue p(int k) const;

private:
    friend HermiteSeq hermite_seq(double z, const EllipticParams& params);

    std::vector<double> value_;
    std::vector<double> shift_;
};

// Values h_0 .. h_{n+1} via h_{k+1} = (z h_k - tau sqrt(k) h_{k-1}) / sqrt(k+1),
// the normalized image of p_{k+1} = z p_k - k tau p_{k-1}.
HermiteSeq hermite_seq(double z, const EllipticParams& params);

struct TildeSums {
    LogValue p, r, s;
};

struct TildeReal {
    double p = 0.0, r = 0.0, s = 0.0;
};

// The three weighted Hermite sums of order params.n (order 0 gives zeros):
//   P-sum term: (k+1) h_k^2 - sqrt(k(k+1)) h_{k+1} h_{k-1}
//   R-sum term: (k+2) sqrt(k+1) h_{k+1} h_k - sqrt(k(k+1)(k+2)) h_{k+2} h_{k-1}
//   S-sum term: (order - k) times the P-sum term
// summed over k = 0 .. order-1.
TildeSums tilde_sums(double z, const EllipticParams& params);

// Independent double-contour evaluation of the same three sums (intended for
// params.n <= 20 and tau > 0). Throws DomainError when delta <= epsilon and
// QuadratureError when either integral fails to converge.
TildeReal tilde_sums_contour(double z, const EllipticParams& params,
                             const ContourSpec& spec);

// Well-scaled default contours for the given ensemble. Outside the spectrum
// the line is routed through the saddle of the s-integrand, which keeps the
// cancellation on the contour commensurate with the value being computed.
ContourSpec default_contour(double z, const EllipticParams& params);

// The five-term kernel combining the sums of orders n-1 and n-2 with the
// rational q-dependent coefficients. Requires n >= 2 and q > 0.
LogValue q_kernel(double z, double q, const EllipticParams& params);

// Exact joint density of a real eigenvalue z and the rescaled shifted
// overlap q = (1 - tau)(self-overlap - 1), normalized so that the double
// integral counts the expected number of real eigenvalues.
double jpdf_finite(double z, double q, const EllipticParams& params);

// The same density in the unrescaled variable t = self-overlap - 1:
// (1 - tau)^{-1} jpdf_finite(z, t / (1 - tau)); requires tau < 1.
double jpdf_finite_t(double z, double t, const EllipticParams& params);

}  // namespace ovlab
