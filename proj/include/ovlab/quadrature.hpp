#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "ovlab/errors.hpp"

namespace ovlab {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    // Semi-infinite tails are cut where the integrand magnitude falls below
    // this threshold relative to the observed peak, after decay has set in.
    double truncation_threshold = 1e-18;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Adaptive Gauss-Kronrod (G7/K15) integration of f over (a, b).
// b may be +infinity, in which case |f| must eventually decay monotonically;
// the tail is truncated per cfg.truncation_threshold.
// Throws QuadratureError when the tolerance target is unreachable within
// cfg.max_subdivisions, DomainError when f produces NaN.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// Contour through the complex plane: optional incoming ray (traversed from
// infinity to its endpoint), straight segments, optional outgoing ray.
// Rays carry a caller-supplied decay certificate: an upper bound on |f| at
// arc length r along the ray, eventually decreasing in r.
class ComplexPath {
public:
    using Envelope = std::function<double(double)>;

    // Open polygonal chain through the given vertices (at least two).
    static ComplexPath polyline(std::vector<std::complex<double>> vertices);

    // Counterclockwise circle, represented by an inscribed regular polygon.
    // Identical to the circular contour for integrands analytic in the
    // annulus between polygon and circle (every use here qualifies).
    static ComplexPath circle(std::complex<double> center, double radius, int sides = 16);

    // Incoming ray ending at the first vertex; travel direction is from
    // infinity at angle `angle` toward the vertex.
    ComplexPath& prepend_ray(double angle, Envelope envelope);

    // Outgoing ray from the last vertex toward infinity at angle `angle`.
    ComplexPath& append_ray(double angle, Envelope envelope);

    const std::vector<std::complex<double>>& vertices() const { return vertices_; }
    bool has_leading_ray() const { return has_leading_; }
    bool has_trailing_ray() const { return has_trailing_; }
    double leading_angle() const { return leading_angle_; }
    double trailing_angle() const { return trailing_angle_; }
    const Envelope& leading_envelope() const { return leading_env_; }
    const Envelope& trailing_envelope() const { return trailing_env_; }

private:
    ComplexPath() = default;

    std::vector<std::complex<double>> vertices_;
    bool has_leading_ = false;
    bool has_trailing_ = false;
    double leading_angle_ = 0.0;
    double trailing_angle_ = 0.0;
    Envelope leading_env_;
    Envelope trailing_env_;
};

// Contour integral of f along the path, segment by segment.
std::complex<double> integrate_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const ComplexPath& path, const QuadratureConfig& cfg = {});

// Central finite difference; step eps^(1/3)*max(1,|x|) for order 1 and
// eps^(1/4)*max(1,|x|) for order 2.
double finite_diff(const std::function<double(double)>& f, double x, int order);

}  // namespace ovlab
