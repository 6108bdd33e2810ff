#include "ovlab/finite_n.hpp"

#include <cmath>
#include <complex>

#include "ovlab/quadrature.hpp"

namespace ovlab {
namespace {

using cplx = std::complex<double>;

constexpr double kRescaleAt = 1e100;
const double kRescaleLog = std::log(kRescaleAt);

// The polynomial layer is regular on the whole closed interval; only the
// density formulas degenerate at tau = 1.
void check_tau(double tau) {
    if (!(tau >= 0.0) || tau > 1.0)
        throw DomainError("asymmetry tau must lie in [0, 1]");
}

// Sums of order m <= seq order, reading normalized values from the sequence.
TildeSums tilde_from_seq(const HermiteSeq& seq, int m) {
    TildeSums out;
    for (int k = 0; k < m; ++k) {
        const double kk = k;
        const LogValue hk = seq.h(k);
        const LogValue hk1 = seq.h(k + 1);
        LogValue pterm = hk.squared().scaled(kk + 1.0);
        LogValue rterm = (hk1 * hk).scaled((kk + 2.0) * std::sqrt(kk + 1.0));
        if (k > 0) {
            const LogValue hkm = seq.h(k - 1);
            pterm += (hk1 * hkm).scaled(-std::sqrt(kk * (kk + 1.0)));
            rterm += (seq.h(k + 2) * hkm)
                         .scaled(-std::sqrt(kk * (kk + 1.0) * (kk + 2.0)));
        }
        out.p += pterm;
        out.r += rterm;
        out.s += pterm.scaled(static_cast<double>(m - k));
    }
    return out;
}

}  // namespace

LogValue HermiteSeq::p(int k) const {
    return h(k) * LogValue::exp_of(0.5 * std::lgamma(k + 1.0));
}

HermiteSeq hermite_seq(double z, const EllipticParams& params) {
    check_tau(params.tau);
    if (params.n < 0) throw DomainError("matrix size must be nonnegative");
    const int top = params.n + 1;
    HermiteSeq seq;
    seq.value_.resize(top + 1);
    seq.shift_.resize(top + 1);
    double run = 0.0;
    double prev = 0.0;  // h_{k-1} at the running scale
    double cur = 1.0;   // h_k
    seq.value_[0] = cur;
    seq.shift_[0] = run;
    for (int k = 0; k < top; ++k) {
        double next = (z * cur - params.tau * std::sqrt(double(k)) * prev) /
                      std::sqrt(double(k) + 1.0);
        if (std::fabs(next) > kRescaleAt) {
            next /= kRescaleAt;
            cur /= kRescaleAt;
            run += kRescaleLog;
        }
        prev = cur;
        cur = next;
        seq.value_[k + 1] = cur;
        seq.shift_[k + 1] = run;
    }
    return seq;
}

TildeSums tilde_sums(double z, const EllipticParams& params) {
    if (params.n == 0) return {};
    // The R-sum of order m reads two indices past m - 1, so build one deeper.
    const HermiteSeq seq = hermite_seq(z, {params.n + 1, params.tau});
    return tilde_from_seq(seq, params.n);
}

ContourSpec default_contour(double z, const EllipticParams& params) {
    const double nt = double(params.n) * params.tau;
    double delta = 2.0 * std::max(1.0, 0.1 * std::sqrt(nt));
    // Real saddle of exp((s-z)^2 / (2 tau)) s^n, present once z clears the
    // spectrum; the line through it sees no super-scale oscillation.
    const double disc = z * z - 4.0 * nt;
    if (disc > 0.0) delta = std::max(delta, 0.5 * (std::fabs(z) + std::sqrt(disc)));
    return {delta, 0.5 * delta};
}

TildeReal tilde_sums_contour(double z, const EllipticParams& params,
                             const ContourSpec& spec) {
    check_tau(params.tau);
    if (params.tau == 0.0)
        throw DomainError("the contour representation needs tau > 0");
    if (!(spec.delta > spec.epsilon) || !(spec.epsilon > 0.0))
        throw DomainError("contours require delta > epsilon > 0");
    const int n = params.n;
    if (n < 0) throw DomainError("matrix size must be nonnegative");
    if (n == 0) return {};
    const double tau = params.tau;
    const double dl = spec.delta;
    const double ep = spec.epsilon;

    auto common = [=](cplx s, cplx w) {
        return std::exp((s - z) * (s - z) / (2.0 * tau) - 0.5 * tau * w * w + w * z);
    };
    auto kp = [=](cplx s, cplx w) {
        return s / (s - w) * ((z - s) / tau - w) * std::pow(s / w, n) * common(s, w);
    };
    auto kr = [=](cplx s, cplx w) {
        return s / (s - w) * ((z - s) * (z - s) / (tau * tau) + 1.0 / tau - w * w) *
               std::pow(s / w, n + 1) * common(s, w);
    };
    auto ks = [=](cplx s, cplx w) {
        return s * s / ((s - w) * (s - w)) * ((z - s) / tau - w) *
               std::pow(s / w, n) * common(s, w);
    };

    // The line integrand decays like a Gaussian in Im(s) against polynomial
    // growth of degree about n from (s/w)^n; march the cut until the log
    // envelope has dropped 41.5 (e^-41.5 ~ 1e-18) below its value at y = 0.
    auto log_env = [=](double y) {
        return -y * y / (2.0 * tau) +
               (n + 3.0) * std::log(std::sqrt(dl * dl + y * y) / ep);
    };
    double y_max = std::sqrt(2.0 * tau * 45.0) + 1.0;
    while (log_env(y_max) > log_env(0.0) - 41.5) y_max *= 1.25;

    QuadratureConfig outer_cfg;
    outer_cfg.rel_tol = 1e-9;
    outer_cfg.abs_tol = 1e-14;
    outer_cfg.max_subdivisions = 4000;

    // The integrand is analytic in an annulus around |w| = epsilon, so the
    // equispaced trapezoid rule converges geometrically; double the point
    // count until the sum settles. Track the magnitude sum as well: it sets
    // the roundoff floor the surrounding line integral can meaningfully see.
    double mag_peak = 0.0;
    auto ring = [&](const std::function<cplx(cplx, cplx)>& kernel, cplx s) {
        cplx prev{0.0, 0.0};
        for (int m = 64; m <= 4096; m *= 2) {
            cplx acc{0.0, 0.0};
            double mag = 0.0;
            for (int j = 0; j < m; ++j) {
                const double th = 2.0 * M_PI * j / m;
                const cplx w = ep * cplx(std::cos(th), std::sin(th));
                const cplx term = kernel(s, w) * cplx(0.0, 1.0) * w;
                acc += term;
                mag += std::abs(term);
            }
            acc *= 2.0 * M_PI / m;
            mag *= 2.0 * M_PI / m;
            if (m > 64 && std::abs(acc - prev) <= 1e-13 * (mag + std::abs(acc))) {
                mag_peak = std::max(mag_peak, mag);
                return acc;
            }
            prev = acc;
        }
        throw QuadratureError("circle quadrature did not settle", std::abs(prev), 0.0);
    };

    // The full double integral is real, and the line integrand has even
    // imaginary part in Im(s), so only that half-line piece survives.
    auto outer = [&](const std::function<cplx(cplx, cplx)>& kernel) {
        auto g = [&](double y) { return ring(kernel, cplx(dl, y)).imag(); };
        double line = 0.0;
        try {
            line = integrate(g, 0.0, y_max, outer_cfg);
        } catch (const QuadratureError&) {
            // A cancellation-dominated value sits at the roundoff floor of the
            // ring sums; accept it at that floor instead of chasing noise.
            QuadratureConfig floor_cfg = outer_cfg;
            floor_cfg.abs_tol = 1e-11 * mag_peak * std::max(1.0, y_max);
            line = integrate(g, 0.0, y_max, floor_cfg);
        }
        return 2.0 * line / (std::sqrt(tau) * std::pow(2.0 * M_PI, 1.5));
    };
    return {outer(kp), outer(kr), outer(ks)};
}

LogValue q_kernel(double z, double q, const EllipticParams& params) {
    check_tau(params.tau);
    if (params.tau == 1.0) throw DomainError("the density degenerates at tau = 1");
    if (params.n < 2) throw DomainError("the kernel requires matrix size >= 2");
    if (!(q > 0.0)) throw DomainError("the kernel requires q > 0");
    const double tau = params.tau;
    const double n = params.n;
    const HermiteSeq seq = hermite_seq(z, params);
    const TildeSums lo = tilde_from_seq(seq, params.n - 2);
    const TildeSums hi = tilde_from_seq(seq, params.n - 1);
    const double u = 1.0 + q;
    const double v = 1.0 + tau + q;
    LogValue out = hi.p.scaled((1.0 + tau - 2.0 * z * z) / u);
    out += hi.r.scaled(z / u);
    out += lo.r.scaled(tau * z / u);
    out += hi.p.scaled(z * z / (u * u));
    out += lo.p.scaled(tau * tau * (1.0 + tau) * (1.0 + tau) * n / (v * v));
    out += lo.s.scaled((1.0 + tau) * (1.0 - tau * tau) / v);
    out += lo.r.scaled(-tau * (1.0 + tau) * z / (u * v));
    return out;
}

double jpdf_finite(double z, double q, const EllipticParams& params) {
    const double tau = params.tau;
    const LogValue kernel = q_kernel(z, q, params);
    const double expo = -z * z / (2.0 * (1.0 + tau)) * (1.0 + q / (1.0 + q)) -
                        0.5 * (std::log(q) + std::log1p(q)) +
                        (0.5 * params.n - 1.0) * (std::log(q) - std::log(q + 1.0 + tau));
    const LogValue pref =
        LogValue::from_real(1.0 / (2.0 * (1.0 + tau) * std::sqrt(2.0 * M_PI)));
    return (pref * LogValue::exp_of(expo) * kernel).to_real();
}

double jpdf_finite_t(double z, double t, const EllipticParams& params) {
    if (params.tau >= 1.0) throw DomainError("the t-density requires tau < 1");
    if (!(t > 0.0)) throw DomainError("the t-density requires t > 0");
    const double scale = 1.0 - params.tau;
    return jpdf_finite(z, t / scale, params) / scale;
}

}  // namespace ovlab
