#include "ovlab/asymptotics.hpp"

#include <cmath>

#include "ovlab/errors.hpp"
#include "ovlab/quadrature.hpp"

namespace ovlab {

TQuadruple t_quadruple(double zeta, double b) {
    if (!(b > 0.0)) throw DomainError("the coefficient quadruple requires b > 0");
    const double b2 = b * b;
    const double b4 = b2 * b2;
    TQuadruple out;
    const double j = tail_sq(zeta, b);
    // The t3 integrand collapses through the product structure of Ai_b to
    // exp(b^2 p + b^6/6) [Ai'^2 - x Ai^2](p + b^4/4), and [Ai'^2 - x Ai^2]
    // is itself the right tail integral of Ai^2, so integrating by parts
    // against the exponential leaves only boundary terms:
    //   b^2 t3 = tail_sq(zeta, b) - e^{b^2 zeta + b^6/6} [Ai'^2 - x Ai^2](x0)
    // with x0 = zeta + b^4/4. A direct quadrature of the integrand loses
    // roughly b^6/12 decimal ulps to cancellation per point; this form does
    // not. The bracket stays in LogValue because the exponential in front
    // overflows on its own for b beyond about 3.
    const double x0 = zeta + 0.25 * b4;
    const LogValue j0 =
        airy_ai(x0, 1).squared() - airy_ai(x0, 0).squared().scaled(x0);
    const LogValue corr = j0 * LogValue::exp_of(b2 * zeta + b2 * b4 / 6.0);
    out.t3 = (LogValue::from_real(j) - corr).to_real() / b2;
    const double a0 = ai_def(zeta, {b2}, 0).to_real();
    const double a1 = ai_def(zeta, {b2}, 1).to_real();
    out.t2 = b2 * out.t3 + j;
    out.t1 = -zeta * out.t3 + 0.5 * a0 * a0 + b2 * j;
    out.t0 = -out.t3 + 0.5 * b2 * a0 * a0 - 0.5 * a0 * a1 - zeta * j;
    return out;
}

double jpdf_edge(const TQuadruple& quad, const EdgeCoords& coords) {
    if (!(coords.t > 0.0)) throw DomainError("the edge jpdf requires t > 0");
    if (!(coords.b > 0.0))
        throw DomainError(
            "b = 0 collapses the overlap law to a point mass at t = 0; "
            "the edge jpdf requires b > 0");
    const double t = coords.t;
    const double b2 = coords.b * coords.b;
    const double b6 = b2 * b2 * b2;
    const double step = std::log(b2) - std::log(t);
    const LogValue w0 = LogValue::from_real(quad.t0);
    const LogValue w1 = LogValue::from_real(quad.t1) * LogValue::exp_of(step);
    const LogValue w2 = LogValue::from_real(quad.t2) * LogValue::exp_of(2.0 * step);
    const LogValue w3 = LogValue::from_real(quad.t3) * LogValue::exp_of(3.0 * step);
    const LogValue bracket = (w0 + w1) + (w2 + w3);
    const double expo =
        b2 * coords.zeta / t - 0.5 * b6 / (t * t) - b6 / (3.0 * t * t * t);
    return (bracket * LogValue::exp_of(std::log(b2) - 2.0 * std::log(t) + expo))
        .to_real();
}

double jpdf_edge(const EdgeCoords& coords) {
    return jpdf_edge(t_quadruple(coords.zeta, coords.b), coords);
}

double edge_density(double zeta, double b) {
    if (!(b >= 0.0)) throw DomainError("the edge density requires b >= 0");
    const double ai = ai_def(zeta, {b * b}, 0).to_real();
    return tail_sq(zeta, b) + 0.5 * ai * cum_ai(zeta, b);
}

double cond_density(double t, double zeta, double b) {
    const double dens = edge_density(zeta, b);
    if (!(dens > 1e-14))
        throw DomainError("conditioning needs a nonvanishing eigenvalue density");
    return jpdf_edge({zeta, t, b}) / dens;
}

double bulk_weak_jpdf(double w, double t, double a) {
    if (!(w > 0.0) || !(t > 0.0) || !(a > 0.0))
        throw DomainError("the bulk jpdf requires w > 0, t > 0, a > 0");
    const double big_a = a * a * w;
    const double inner =
        integrate([=](double s) { return std::exp(-0.5 * big_a * s * s); }, 0.0, 1.0);
    const double bracket = (2.0 / big_a - 1.0 / t) * std::exp(-0.5 * big_a) +
                           (1.0 + 1.0 / t - 2.0 / big_a) * inner;
    return big_a * std::sqrt(w) / (2.0 * M_PI * t * t) *
           std::exp(-0.5 * big_a / t) * bracket;
}

double strong_jpdf(const StrongCoords& coords) {
    const double d = coords.delta;
    const double s = coords.sigma;
    if (!(s > 0.0)) throw DomainError("the strong jpdf requires sigma > 0");
    const double tail = std::sqrt(0.5 * M_PI) * std::erfc(d * std::sqrt(2.0));
    return std::exp(d / s - 0.25 / (s * s)) / (4.0 * M_PI * s * s) *
           (std::exp(-2.0 * d * d) + (1.0 / s - 2.0 * d) * tail);
}

BulkCoords bulk_coords(double a, double w, double nu) {
    if (!(a > 0.0) || !(w > 0.0) || !(nu > 0.0))
        throw DomainError("bulk coordinates require a > 0, w > 0, nu > 0");
    return {a, w, nu, a * a * w};
}

EdgeCoords edge_coords(const BulkCoords& bulk, double t) {
    return {-bulk.nu * bulk.nu * bulk.w, t, bulk.a / (bulk.nu * std::sqrt(2.0))};
}

EdgeCoords edge_coords(const StrongCoords& strong, double b) {
    const double root2 = std::sqrt(2.0);
    return {root2 * b * strong.delta, root2 * b * b * b * strong.sigma, b};
}

}  // namespace ovlab
