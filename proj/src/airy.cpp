#include "ovlab/airy.hpp"

#include <cmath>

namespace ovlab {
namespace {

// Compensated double-double arithmetic (Dekker/Knuth style). The Maclaurin
// branch needs ~26 digits at the switch point |x| = 9; double-double's 32
// leave the final values good to better than 1e-13 there.
struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div_d(DD a, double b) {
    const double q1 = a.hi / b;
    DD r = dd_sub(a, two_prod(q1, b));
    const double q2 = (r.hi + r.lo) / b;
    return quick_two_sum(q1, q2);
}

inline DD dd_from(double x) { return {x, 0.0}; }

inline DD dd_sqrt(DD a) {
    const double x = std::sqrt(a.hi);
    DD e = dd_sub(a, dd_mul(dd_from(x), dd_from(x)));
    return quick_two_sum(x, (e.hi + e.lo) / (2.0 * x));
}

// Series constants to double-double precision.
// AI0 = Ai(0) = 3^{-2/3}/Gamma(2/3), AIP0 = Ai'(0) = -3^{-1/3}/Gamma(1/3).
constexpr DD kAi0 = {0.3550280538878172, 2.05233632436212e-17};
constexpr DD kAip0 = {-0.2588194037928068, 2.522243111610832e-17};
constexpr double kSqrt3 = 1.7320508075688772;
constexpr DD kTwoPi = {6.283185307179586, 2.4492935982947064e-16};
constexpr double kQuarterPi = 0.7853981633974483;

constexpr double kSwitch = 9.0;

struct SeriesSums {
    DD f, g, fp, gp;  // f, g of the Maclaurin basis and their derivatives
};

// Maclaurin basis: Ai = AI0*f + AIP0*g, Bi = sqrt(3)*(AI0*f - AIP0*g).
// Term recurrences follow from c_{n+3} = c_n/((n+3)(n+2)).
SeriesSums maclaurin(double x) {
    const DD x3 = dd_mul(dd_mul(dd_from(x), dd_from(x)), dd_from(x));
    SeriesSums s;
    DD a = dd_from(1.0);             // f terms
    DD b = dd_from(x);               // g terms
    DD v = dd_div_d(dd_mul(dd_from(x), dd_from(x)), 2.0);  // f' terms
    DD w = dd_from(1.0);             // g' terms
    s.f = a;
    s.g = b;
    s.fp = v;
    s.gp = w;
    for (int k = 0; k < 200; ++k) {
        a = dd_div_d(dd_mul(a, x3), (3.0 * k + 2.0) * (3.0 * k + 3.0));
        b = dd_div_d(dd_mul(b, x3), (3.0 * k + 3.0) * (3.0 * k + 4.0));
        v = dd_div_d(dd_mul(v, x3), (3.0 * k + 3.0) * (3.0 * k + 5.0));
        w = dd_div_d(dd_mul(w, x3), (3.0 * k + 1.0) * (3.0 * k + 3.0));
        s.f = dd_add(s.f, a);
        s.g = dd_add(s.g, b);
        s.fp = dd_add(s.fp, v);
        s.gp = dd_add(s.gp, w);
        const double biggest =
            std::max(std::max(std::fabs(a.hi), std::fabs(b.hi)),
                     std::max(std::fabs(v.hi), std::fabs(w.hi)));
        const double scale =
            std::max(std::max(std::fabs(s.f.hi), std::fabs(s.g.hi)), 1.0);
        if (biggest < 1e-38 * scale) break;
    }
    return s;
}

struct AirySet {
    LogValue ai, aip, bi, bip;
};

AirySet from_series(double x) {
    const SeriesSums s = maclaurin(x);
    auto comb = [](DD c1, DD s1, DD c2, DD s2) {
        const DD r = dd_add(dd_mul(c1, s1), dd_mul(c2, s2));
        return LogValue::from_real(r.hi + r.lo);
    };
    AirySet out;
    out.ai = comb(kAi0, s.f, kAip0, s.g);
    out.aip = comb(kAi0, s.fp, kAip0, s.gp);
    const DD nAip0 = dd_neg(kAip0);
    const auto bi_raw = dd_add(dd_mul(kAi0, s.f), dd_mul(nAip0, s.g));
    const auto bip_raw = dd_add(dd_mul(kAi0, s.fp), dd_mul(nAip0, s.gp));
    out.bi = LogValue::from_real((bi_raw.hi + bi_raw.lo)).scaled(kSqrt3);
    out.bip = LogValue::from_real((bip_raw.hi + bip_raw.lo)).scaled(kSqrt3);
    return out;
}

// xi = (2/3) x^{3/2} for x > 0, in double-double so that exponent
// combinations like b^6/12 - xi cancel to full double accuracy.
DD xi_of(double x) {
    const DD x2 = dd_mul(dd_from(x), dd_from(x));
    const DD x3 = dd_mul(x2, dd_from(x));
    return dd_div_d(dd_mul_d(dd_sqrt(x3), 2.0), 3.0);
}

// Poincare series u_k (for Ai/Bi) and v_k (for the derivatives), summed to
// the smallest term. At |x| >= 9 the smallest term is below 3e-16 relative.
struct AsymptoticSums {
    double u_alt, v_alt;    // sum (-1)^k u_k xi^-k, same with v_k
    double u_pos, v_pos;    // sum u_k xi^-k, same with v_k
    double u_even, u_odd;   // even/odd splits of the alternating u series
    double v_even, v_odd;
};

AsymptoticSums asymptotic_sums(double xi) {
    AsymptoticSums s{};
    double u = 1.0, term = 1.0;
    double su_alt = 0.0, su_pos = 0.0, sv_alt = 0.0, sv_pos = 0.0;
    double su_even = 0.0, su_odd = 0.0, sv_even = 0.0, sv_odd = 0.0;
    double prev = 1e300;
    for (int k = 0;; ++k) {
        if (k > 0) {
            const double kk = k;
            u *= (6.0 * kk - 5.0) * (6.0 * kk - 3.0) * (6.0 * kk - 1.0) /
                 (216.0 * kk * (2.0 * kk - 1.0));
            term = u / std::pow(xi, kk);
        }
        if (std::fabs(term) >= prev || k > 60) break;  // smallest-term truncation
        prev = std::fabs(term);
        const double v = (k == 0) ? 1.0 : term * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        su_alt += sgn * term;
        su_pos += term;
        sv_alt += sgn * v;
        sv_pos += v;
        if (k % 2 == 0) {
            su_even += (k % 4 == 0 ? 1.0 : -1.0) * term;
            sv_even += (k % 4 == 0 ? 1.0 : -1.0) * v;
        } else {
            su_odd += (k % 4 == 1 ? 1.0 : -1.0) * term;
            sv_odd += (k % 4 == 1 ? 1.0 : -1.0) * v;
        }
    }
    s.u_alt = su_alt;
    s.v_alt = sv_alt;
    s.u_pos = su_pos;
    s.v_pos = sv_pos;
    s.u_even = su_even;
    s.u_odd = su_odd;
    s.v_even = sv_even;
    s.v_odd = sv_odd;
    return s;
}

AirySet from_asymptotic_positive(double x) {
    const DD xi = xi_of(x);
    const double lxi = xi.hi + xi.lo;
    const AsymptoticSums s = asymptotic_sums(lxi);
    const double lq = 0.25 * std::log(x);      // log x^{1/4}
    const double lsp = 0.5 * std::log(M_PI);   // log sqrt(pi)

    AirySet out;
    out.ai = LogValue::from_real(0.5 * s.u_alt) * LogValue::exp_of(-lxi - lq - lsp);
    out.aip = LogValue::from_real(-0.5 * s.v_alt) * LogValue::exp_of(-lxi + lq - lsp);
    out.bi = LogValue::from_real(s.u_pos) * LogValue::exp_of(lxi - lq - lsp);
    out.bip = LogValue::from_real(s.v_pos) * LogValue::exp_of(lxi + lq - lsp);
    return out;
}

AirySet from_asymptotic_negative(double x) {
    const double z = -x;
    const DD xi = xi_of(z);
    const AsymptoticSums s = asymptotic_sums(xi.hi + xi.lo);

    // omega = xi - pi/4 reduced mod 2pi in double-double; xi can reach ~2e3
    // within the accuracy-guaranteed range and far beyond it harmlessly.
    const double n = std::floor((xi.hi + xi.lo) / kTwoPi.hi);
    DD om = dd_sub(xi, dd_mul_d(kTwoPi, n));
    om = dd_sub(om, dd_from(kQuarterPi));
    const double omega = om.hi + om.lo;
    const double c = std::cos(omega), sn = std::sin(omega);

    const double pre = 1.0 / (std::sqrt(M_PI) * std::pow(z, 0.25));
    const double dpre = std::pow(z, 0.25) / std::sqrt(M_PI);

    AirySet out;
    out.ai = LogValue::from_real(pre * (c * s.u_even + sn * s.u_odd));
    out.aip = LogValue::from_real(dpre * (sn * s.v_even - c * s.v_odd));
    out.bi = LogValue::from_real(pre * (-sn * s.u_even + c * s.u_odd));
    out.bip = LogValue::from_real(dpre * (c * s.v_even + sn * s.v_odd));
    return out;
}

AirySet evaluate(double x) {
    if (std::fabs(x) <= kSwitch) return from_series(x);
    if (x > 0.0) return from_asymptotic_positive(x);
    return from_asymptotic_negative(x);
}

}  // namespace

AiryValue airy_ai(double x, int derivative) {
    const AirySet s = evaluate(x);
    return derivative == 0 ? s.ai : s.aip;
}

AiryValue airy_bi(double x, int derivative) {
    const AirySet s = evaluate(x);
    return derivative == 0 ? s.bi : s.bip;
}

AiryPair airy_ai_pair(double x) {
    const AirySet s = evaluate(x);
    return {s.ai, s.aip};
}

AiryPair airy_bi_pair(double x) {
    const AirySet s = evaluate(x);
    return {s.bi, s.bip};
}

namespace detail {

AiryPair airy_ai_series(double x) {
    const AirySet s = from_series(x);
    return {s.ai, s.aip};
}

AiryPair airy_ai_asymptotic(double x) {
    const AirySet s = x > 0.0 ? from_asymptotic_positive(x) : from_asymptotic_negative(x);
    return {s.ai, s.aip};
}

AiryPair airy_bi_series(double x) {
    const AirySet s = from_series(x);
    return {s.bi, s.bip};
}

AiryPair airy_bi_asymptotic(double x) {
    const AirySet s = x > 0.0 ? from_asymptotic_positive(x) : from_asymptotic_negative(x);
    return {s.bi, s.bip};
}

}  // namespace detail

}  // namespace ovlab
