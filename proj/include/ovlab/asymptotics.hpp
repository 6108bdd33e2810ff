#pragma once

#include "ovlab/airy_deformed.hpp"

namespace ovlab {

// Coordinates of the edge weak non-normality regime: spectral window zeta on
// the N^{-1/6} scale around the edge, shifted overlap t = O_kk - 1, and the
// non-normality parameter b fixed by (1 - tau) N^{1/3} = b^2.
struct EdgeCoords {
    double zeta = 0.0;
    double t = 1.0;
    double b = 1.0;
};

// The four coefficient functions multiplying 1, b^2/t, b^4/t^2, b^6/t^3 in
// the edge jpdf bracket. All four decay to 0 as zeta -> +inf; t3 >= 0.
struct TQuadruple {
    double t0 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
};

// t3 = int_zeta^inf [Ai_b'(p)^2 - b^2 Ai_b(p) Ai_b'(p) - p Ai_b(p)^2] dp
// (the second derivative eliminated through the Ai_b differential equation),
// evaluated in the closed boundary-term form obtained by parts, which stays
// accurate at large b where the raw integrand cancels catastrophically;
// t2 = b^2 t3 + J, t1 = -zeta t3 + Ai_b^2(zeta)/2 + b^2 J, and
// t0 = -t3 + b^2 Ai_b^2(zeta)/2 - Ai_b(zeta) Ai_b'(zeta)/2 - zeta J,
// with J = tail_sq(zeta, b). Throws DomainError for b <= 0.
TQuadruple t_quadruple(double zeta, double b);

// Edge jpdf (b^2/t^2) [t0 + b^2 t1/t + b^4 t2/t^2 + b^6 t3/t^3]
// exp(b^2 zeta/t - b^6/(2t^2) - b^6/(3t^3)). The bracket is summed pairwise
// in LogValue because t0 and the t1 term can cancel near the left shoulder;
// the value underflows to an exact 0 as t -> 0+. Throws DomainError for
// t <= 0 and for b <= 0 (at b = 0 the overlap marginal collapses to a point
// mass at t = 0, which a pointwise density cannot represent).
double jpdf_edge(const EdgeCoords& coords);

// Same density from a precomputed quadruple, for sweeps over t at one zeta.
double jpdf_edge(const TQuadruple& quad, const EdgeCoords& coords);

// Eigenvalue density at the edge: tail_sq + Ai_b * cum_ai / 2. This is the
// t-marginal of jpdf_edge. Accepts b = 0.
double edge_density(double zeta, double b);

// jpdf_edge / edge_density at fixed zeta. Throws DomainError where the
// eigenvalue density is below the quadrature noise floor.
double cond_density(double t, double zeta, double b);

// Bulk weak non-normality limit, with A = a^2 w:
//   (A sqrt(w) / (2 pi t^2)) e^{-A/(2t)} [ (2/A - 1/t) e^{-A/2}
//       + (1 + 1/t - 2/A) int_0^1 e^{-A s^2/2} ds ].
double bulk_weak_jpdf(double w, double t, double a);

// Strong non-normality coordinates: zeta = sqrt(2) b delta and
// t = sqrt(2) b^3 sigma as b -> inf.
struct StrongCoords {
    double delta = 0.0;
    double sigma = 1.0;
};

// Strong non-normality limit:
//   1/(4 pi sigma^2) e^{delta/sigma - 1/(4 sigma^2)}
//       (e^{-2 delta^2} + (1/sigma - 2 delta) int_{2 delta}^inf e^{-p^2/2} dp).
// Throws DomainError for sigma <= 0.
double strong_jpdf(const StrongCoords& coords);

// Bulk weak non-normality parameterization: asymmetry a with
// 1 - tau = a^2 / (2N), depth w with zeta = -nu^2 w, bridge parameter nu
// with b = a / (nu sqrt(2)), and the shorthand big_a = a^2 w.
struct BulkCoords {
    double a = 1.0;
    double w = 1.0;
    double nu = 1.0;
    double big_a = 1.0;
};

BulkCoords bulk_coords(double a, double w, double nu);

// Views of the bulk and strong parameterizations in edge coordinates, used
// to bridge the regimes numerically.
EdgeCoords edge_coords(const BulkCoords& bulk, double t);
EdgeCoords edge_coords(const StrongCoords& strong, double b);

}  // namespace ovlab
