#include "ovlab/airy_deformed.hpp"

#include <cmath>
#include <complex>

#include "ovlab/quadrature.hpp"

namespace ovlab {
namespace {

using cplx = std::complex<double>;

AiryValue deformed(double zeta, double beta, int k, bool use_bi) {
    if (k < 0 || k > 3) throw DomainError("deformed Airy derivative order must be in {0,1,2,3}");
    const double arg = zeta + 0.25 * beta * beta;
    const double shift = 0.5 * beta * zeta + beta * beta * beta / 12.0;
    const AiryPair p = use_bi ? airy_bi_pair(arg) : airy_ai_pair(arg);
    const LogValue scale = LogValue::exp_of(shift);
    const LogValue v0 = p.value * scale;
    if (k == 0) return v0;
    const LogValue v1 = v0.scaled(0.5 * beta) + p.deriv * scale;
    switch (k) {
        case 1: return v1;
        case 2: return v1.scaled(beta) + v0.scaled(zeta);
        default: return v1.scaled(beta * beta + zeta) + v0.scaled(beta * zeta + 1.0);
    }
}

// Magnitude of the contour integrand along a ray from `origin` at the given
// angle.
ComplexPath::Envelope ray_envelope(cplx origin, double b2, double zeta, double angle) {
    return [=](double r) {
        const cplx u = origin + std::polar(r, angle);
        const cplx f = u * u * u / 3.0 + 0.5 * b2 * u * u - u * zeta;
        return std::exp(f.real());
    };
}

double ai_b(double p, double b) { return ai_def(p, {b * b}, 0).to_real(); }
double ai_b_prime(double p, double b) { return ai_def(p, {b * b}, 1).to_real(); }

// Upper cut for the Hi_b integrand exp(zeta*u - b^2 u^2/2 - u^3/3) on u >= 0.
double hi_upper_cut(double zeta, double b) {
    // Peak exponent at the stationary point of zeta*u - b^2 u^2/2 - u^3/3.
    const double b2 = b * b;
    double peak = 0.0;
    if (zeta > 0.0) {
        const double u0 = 2.0 * zeta / (b2 + std::sqrt(b2 * b2 + 4.0 * zeta));
        peak = zeta * u0 - 0.5 * b2 * u0 * u0 - u0 * u0 * u0 / 3.0;
    }
    // March out until the exponent drops 60 below the peak (e^-60 ~ 9e-27).
    double u = 1.0;
    while (zeta * u - 0.5 * b2 * u * u - u * u * u / 3.0 > peak - 60.0) u *= 1.5;
    return u;
}

}  // namespace

AiryValue ai_def(double zeta, DeformParam beta, int derivative) {
    return deformed(zeta, beta.beta, derivative, false);
}

AiryValue bi_def(double zeta, DeformParam beta, int derivative) {
    return deformed(zeta, beta.beta, derivative, true);
}

double ai_def_contour(double zeta, double b) {
    const double b2 = b * b;
    const double disc = b2 * b2 + 4.0 * zeta;
    // Real saddle of u^3/3 + b^2 u^2/2 - u*zeta when it exists. Otherwise the
    // saddles sit at -b^2/2 +- i sqrt(-disc)/2, and the vertical line through
    // them carries constant |integrand| with stationary phase exactly at the
    // saddles, so the crossing segment is stretched to just past both.
    double x0, h = 1e-30;
    if (disc >= 0.0) {
        x0 = (zeta > 0.0) ? 2.0 * zeta / (b2 + std::sqrt(disc))
                          : 0.5 * (std::sqrt(disc) - b2);
    } else {
        x0 = -0.5 * b2;
        h = 0.5 * std::sqrt(-disc) + 1.0;
    }
    auto f = [=](cplx u) { return std::exp(u * u * u / 3.0 + 0.5 * b2 * u * u - u * zeta); };
    const cplx lo(x0, -h), hi(x0, h);
    auto path = ComplexPath::polyline({lo, hi});
    path.prepend_ray(-M_PI / 3.0, ray_envelope(lo, b2, zeta, -M_PI / 3.0))
        .append_ray(M_PI / 3.0, ray_envelope(hi, b2, zeta, M_PI / 3.0));
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-20;
    cfg.max_subdivisions = 8000;
    const cplx val = integrate_complex(f, path, cfg) / cplx(0.0, 2.0 * M_PI);
    return val.real();
}

double tail_sq(double zeta, double b) {
    auto f = [=](double p) {
        const double v = ai_b(p, b);
        return v * v;
    };
    return integrate(f, zeta, kInf);
}

double cum_ai(double zeta, double b) {
    return 1.0 - integrate([=](double p) { return ai_b(p, b); }, zeta, kInf);
}

double cum_bi(double zeta, double b) {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 20000;
    if (b == 0.0) {
        // The oscillatory left tail of Bi averages to zero, so the whole
        // integral reduces to the finite piece from the origin.
        auto f = [](double p) { return airy_bi(p, 0).to_real(); };
        if (zeta >= 0.0) return integrate(f, 0.0, zeta, cfg);
        return -integrate(f, zeta, 0.0, cfg);
    }
    // Shift to v = p + b^4/4:
    //   int_-inf^zeta Bi_b = e^{-b^6/24} int_-inf^{zeta + b^4/4} e^{b^2 v/2} Bi(v) dv.
    const double b2 = b * b;
    const double upper = zeta + 0.25 * b2 * b2;
    // On the left |Bi(v)| stays below 1, so the integrand is bounded by
    // e^{b^2 v/2}; cut where that has dropped 60 e-folds below the peak
    // magnitude (attained at the right endpoint).
    const double cap = 0.5 * b2 * upper + (upper > 0.0 ? airy_bi(upper, 0).log_abs() : 0.0);
    double lower = std::min(upper, 0.0);
    while (0.5 * b2 * lower > cap - 60.0) lower -= std::max(1.0, 8.0 / b2);
    auto f = [=](double v) { return std::exp(0.5 * b2 * v) * airy_bi(v, 0).to_real(); };
    const double body = integrate(f, lower, upper, cfg);
    return std::exp(-b2 * b2 * b2 / 24.0) * body;
}

double hi_def_direct(double zeta, double b) {
    const double b2 = b * b;
    auto f = [=](double u) { return std::exp(zeta * u - 0.5 * b2 * u * u - u * u * u / 3.0); };
    return integrate(f, 0.0, hi_upper_cut(zeta, b)) / M_PI;
}

double hi_def_closed(double zeta, double b) {
    const double mb2 = -b * b;
    const double bi_m = bi_def(zeta, {mb2}, 0).to_real();
    const double ai_m = ai_def(zeta, {mb2}, 0).to_real();
    return bi_m * cum_ai(zeta, b) - ai_m * cum_bi(zeta, b);
}

MomentTriple moments(double zeta, double b, int k) {
    if (k < 0 || k > 6) throw DomainError("moment order must be in [0, 6]");
    MomentTriple m;
    auto pow_k = [k](double p) {
        double r = 1.0;
        for (int i = 0; i < k; ++i) r *= p;
        return r;
    };
    m.a_k = integrate([&](double p) {
        const double d = ai_b_prime(p + zeta, b);
        return pow_k(p) * d * d;
    }, 0.0, kInf);
    m.b_k = integrate([&](double p) {
        const double v = ai_b(p + zeta, b);
        return pow_k(p) * v * v;
    }, 0.0, kInf);
    m.c_k = integrate([&](double p) {
        return pow_k(p) * ai_b_prime(p + zeta, b) * ai_b(p + zeta, b);
    }, 0.0, kInf);
    return m;
}

namespace detail {

double hi_def_direct_prime(double zeta, double b) {
    const double b2 = b * b;
    auto f = [=](double u) {
        return u * std::exp(zeta * u - 0.5 * b2 * u * u - u * u * u / 3.0);
    };
    return integrate(f, 0.0, hi_upper_cut(zeta, b)) / M_PI;
}

}  // namespace detail

}  // namespace ovlab
