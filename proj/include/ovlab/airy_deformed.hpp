#pragma once

#include "ovlab/airy.hpp"

namespace ovlab {

// Squared deformation parameter of the generalized Airy function
//   A_[beta](zeta) = exp(beta*zeta/2 + beta^3/12) * Ai(zeta + beta^2/4).
// beta = b^2 gives Ai_b; beta = -b^2 gives the rotated companion that enters
// the Scorer closed form (the square of an imaginary deformation is real).
struct DeformParam {
    double beta = 0.0;
};

// A_[beta]^(k)(zeta) for k in {0,1,2,3}. k <= 1 comes from the closed form
// above by the product rule; k = 2 uses y'' = beta*y' + zeta*y and k = 3 its
// derivative y''' = (beta^2 + zeta)*y' + (beta*zeta + 1)*y.
// Throws DomainError for k outside {0,1,2,3}.
AiryValue ai_def(double zeta, DeformParam beta, int derivative = 0);
AiryValue bi_def(double zeta, DeformParam beta, int derivative = 0);

// Independent oracle for ai_def: (2*pi*i)^{-1} int exp(u^3/3 + b^2 u^2/2
// - u*zeta) du along the two rays from infinity at angle -pi/3 up to
// infinity at angle +pi/3, crossing the real axis near the saddle point.
// Intended for |b| <= 3, |zeta| <= 10; plain double throughout.
double ai_def_contour(double zeta, double b);

// J(zeta, b) = int_zeta^inf Ai_b(p)^2 dp.
double tail_sq(double zeta, double b);

// K(zeta, b) = int_-inf^zeta Ai_b(p) dp, computed as 1 minus the right tail
// (Ai_b integrates to 1 over the whole line for every b >= 0).
double cum_ai(double zeta, double b);

// int_-inf^zeta Bi_b(p) dp. For b = 0 the left tail is regularized to zero,
// so the value is int_0^zeta Bi; for b > 0 the integrand decays like
// exp(b^2 p/2)|p|^{-1/4} on the left and the integral converges classically.
// Small b (below roughly 0.4) makes the truncated range so long that the
// quadrature budget can run out; that surfaces as QuadratureError.
double cum_bi(double zeta, double b);

// Hi_b(zeta) = pi^{-1} int_0^inf exp(zeta*u - b^2 u^2/2 - u^3/3) du.
double hi_def_direct(double zeta, double b);

// The same function assembled from the solution basis:
// Bi_[-b^2](zeta)*cum_ai(zeta,b) - Ai_[-b^2](zeta)*cum_bi(zeta,b).
double hi_def_closed(double zeta, double b);

// Moment integrals over the right tail shifted to zeta:
//   a_k = int_0^inf p^k Ai_b'(p+zeta)^2 dp
//   b_k = int_0^inf p^k Ai_b(p+zeta)^2 dp
//   c_k = int_0^inf p^k Ai_b'(p+zeta) Ai_b(p+zeta) dp
struct MomentTriple {
    double a_k = 0.0;
    double b_k = 0.0;
    double c_k = 0.0;
};

// Throws DomainError for k < 0 or k > 6.
MomentTriple moments(double zeta, double b, int k);

namespace detail {
// d/dzeta of hi_def_direct, via the u-weighted integrand. Used by tests to
// check the Wronskian-style bridge between Hi_b and the cumulative Ai_b.
double hi_def_direct_prime(double zeta, double b);
}  // namespace detail

}  // namespace ovlab
