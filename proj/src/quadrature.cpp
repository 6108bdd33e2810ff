#include "ovlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace ovlab {
namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1], positive half.
// Even xgk indices are the Kronrod extension, odd ones the Gauss points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = 2.220446049250313e-16;

template <class T>
double norm_of(T v) {
    return std::abs(v);
}

template <class T>
struct RuleResult {
    T integral{};
    double abserr = 0.0;
};

// One K15 application with the QUADPACK error rescaling.
template <class T, class F>
RuleResult<T> gk15(const F& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    T fv1[8], fv2[8];
    const T fc = f(centr);
    T resg = fc * kWg[3];
    T resk = fc * kWgk[7];
    double resabs = norm_of(resk);
    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        const T v1 = f(centr - absc);
        const T v2 = f(centr + absc);
        fv1[j] = v1;
        fv2[j] = v2;
        const T fsum = v1 + v2;
        if (j % 2 == 1) resg += fsum * kWg[j / 2];
        resk += fsum * kWgk[j];
        resabs += kWgk[j] * (norm_of(v1) + norm_of(v2));
    }
    const T reskh = resk * 0.5;
    double resasc = kWgk[7] * norm_of(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (norm_of(fv1[j] - reskh) + norm_of(fv2[j] - reskh));

    RuleResult<T> out;
    out.integral = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double err = norm_of((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > 0.0) err = std::max(err, 50.0 * kEps * resabs);
    if (std::isnan(norm_of(out.integral)) || std::isnan(err))
        throw DomainError("integrand returned NaN");
    out.abserr = err;
    return out;
}

template <class T>
struct Interval {
    double a, b;
    T integral;
    double err;
    bool splittable;
};

template <class T>
struct ErrOrder {
    bool operator()(const Interval<T>& x, const Interval<T>& y) const {
        // Frozen intervals sink to the bottom of the heap.
        if (x.splittable != y.splittable) return !x.splittable;
        return x.err < y.err;
    }
};

// Globally adaptive bisection over a finite interval.
template <class T, class F>
T adaptive(const F& f, double a, double b, const QuadratureConfig& cfg) {
    if (a == b) return T{};
    std::priority_queue<Interval<T>, std::vector<Interval<T>>, ErrOrder<T>> heap;
    auto first = gk15<T>(f, a, b);
    T total = first.integral;
    double errsum = first.abserr;
    heap.push({a, b, first.integral, first.abserr, true});

    const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
    int splits = 0;
    while (true) {
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * norm_of(total));
        if (errsum <= target) return total;
        const Interval<T> worst = heap.top();
        if (!worst.splittable)
            throw QuadratureError("quadrature stalled on roundoff-limited intervals",
                                  norm_of(total), errsum);
        if (splits >= cfg.max_subdivisions)
            throw QuadratureError("quadrature did not converge within subdivision budget",
                                  norm_of(total), errsum);
        heap.pop();
        ++splits;
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = gk15<T>(f, worst.a, mid);
        auto right = gk15<T>(f, mid, worst.b);
        const bool can_split = (worst.b - worst.a) > 200.0 * kEps * scale;
        total = total - worst.integral + left.integral + right.integral;
        errsum = errsum - worst.err + left.abserr + right.abserr;
        heap.push({worst.a, mid, left.integral, left.abserr, can_split});
        heap.push({mid, worst.b, right.integral, right.abserr, can_split});
    }
}

// Scans geometrically growing blocks to locate where the integrand has
// peaked and decayed below the relative truncation threshold.
double find_tail_cut(const std::function<double(double)>& f, double a,
                     const QuadratureConfig& cfg) {
    constexpr int kProbes = 8;
    constexpr int kMaxBlocks = 220;
    double x0 = a;
    double len = 1.0;
    double peak = 0.0;
    bool decaying = false;
    for (int blk = 0; blk < kMaxBlocks; ++blk) {
        double block_max = 0.0;
        for (int j = 0; j < kProbes; ++j) {
            // Offset dodges integrand zeros that sit on a regular grid.
            const double x = x0 + len * (j + 0.381966) / kProbes;
            const double v = std::fabs(f(x));
            if (std::isnan(v)) throw DomainError("integrand returned NaN");
            block_max = std::max(block_max, v);
        }
        peak = std::max(peak, block_max);
        if (peak > 0.0) {
            if (block_max < 1e-3 * peak) decaying = true;
            if (decaying && block_max <= cfg.truncation_threshold * peak) return x0 + len;
        } else if (blk >= 8) {
            return x0 + len;  // identically negligible tail
        }
        x0 += len;
        len *= 1.5;
    }
    throw QuadratureError("semi-infinite integrand shows no decay", 0.0, kInf);
}

std::complex<double> segment_integral(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> z0, std::complex<double> z1, const QuadratureConfig& cfg) {
    const std::complex<double> d = z1 - z0;
    auto g = [&](double s) { return f(z0 + s * d); };
    return d * adaptive<std::complex<double>>(g, 0.0, 1.0, cfg);
}

// Cut length for a ray using its decay certificate, mirroring the real
// semi-infinite truncation policy.
double ray_cut(const ComplexPath::Envelope& env, const QuadratureConfig& cfg) {
    constexpr int kMaxBlocks = 200;
    double r0 = 0.0;
    double len = 1.0;
    double peak = 0.0;
    bool decaying = false;
    for (int blk = 0; blk < kMaxBlocks; ++blk) {
        double block_max = 0.0;
        for (int j = 0; j < 4; ++j)
            block_max = std::max(block_max, env(r0 + len * (j + 0.5) / 4.0));
        if (std::isnan(block_max)) throw DomainError("ray envelope returned NaN");
        peak = std::max(peak, block_max);
        if (peak > 0.0) {
            if (block_max < 1e-3 * peak) decaying = true;
            if (decaying && block_max <= cfg.truncation_threshold * peak) return r0 + len;
        } else if (blk >= 8) {
            return r0 + len;
        }
        r0 += len;
        len *= 1.5;
    }
    throw QuadratureError("ray envelope shows no decay", 0.0, kInf);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg) {
    if (std::isnan(a) || std::isnan(b)) throw DomainError("integration limit is NaN");
    if (std::isinf(b)) {
        const double cut = find_tail_cut(f, a, cfg);
        return adaptive<double>(f, a, cut, cfg);
    }
    return adaptive<double>(f, a, b, cfg);
}

ComplexPath ComplexPath::polyline(std::vector<std::complex<double>> vertices) {
    if (vertices.size() < 2) throw DomainError("polyline needs at least two vertices");
    ComplexPath p;
    p.vertices_ = std::move(vertices);
    return p;
}

ComplexPath ComplexPath::circle(std::complex<double> center, double radius, int sides) {
    if (!(radius > 0.0) || sides < 3) throw DomainError("invalid circle contour");
    std::vector<std::complex<double>> v;
    v.reserve(sides + 1);
    for (int k = 0; k <= sides; ++k) {
        const double th = 2.0 * M_PI * k / sides;
        v.emplace_back(center + radius * std::complex<double>(std::cos(th), std::sin(th)));
    }
    ComplexPath p;
    p.vertices_ = std::move(v);
    return p;
}

ComplexPath& ComplexPath::prepend_ray(double angle, Envelope envelope) {
    if (has_leading_) throw DomainError("path already has a leading ray");
    has_leading_ = true;
    leading_angle_ = angle;
    leading_env_ = std::move(envelope);
    return *this;
}

ComplexPath& ComplexPath::append_ray(double angle, Envelope envelope) {
    if (has_trailing_) throw DomainError("path already has a trailing ray");
    has_trailing_ = true;
    trailing_angle_ = angle;
    trailing_env_ = std::move(envelope);
    return *this;
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const ComplexPath& path, const QuadratureConfig& cfg) {
    std::complex<double> total = 0.0;
    const auto& v = path.vertices();

    if (path.has_leading_ray()) {
        const std::complex<double> dir = std::polar(1.0, path.leading_angle());
        const double cut = ray_cut(path.leading_envelope(), cfg);
        // Traversal runs from infinity toward the vertex: negated outward integral.
        total -= segment_integral(f, v.front(), v.front() + cut * dir, cfg);
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        total += segment_integral(f, v[i], v[i + 1], cfg);
    if (path.has_trailing_ray()) {
        const std::complex<double> dir = std::polar(1.0, path.trailing_angle());
        const double cut = ray_cut(path.trailing_envelope(), cfg);
        total += segment_integral(f, v.back(), v.back() + cut * dir, cfg);
    }
    return total;
}

double finite_diff(const std::function<double(double)>& f, double x, int order) {
    const double s = std::max(1.0, std::fabs(x));
    if (order == 1) {
        const double h = std::cbrt(kEps) * s;
        return (f(x + h) - f(x - h)) / (2.0 * h);
    }
    if (order == 2) {
        const double h = std::pow(kEps, 0.25) * s;
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    }
    throw DomainError("finite_diff order must be 1 or 2");
}

}  // namespace ovlab
