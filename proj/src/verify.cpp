#include "ovlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "ovlab/airy_deformed.hpp"
#include "ovlab/finite_n.hpp"
#include "ovlab/quadrature.hpp"

namespace ovlab {

namespace {

struct Point {
    double zeta, b;
};

// Deviation in the style |x - y| / (1 + max(|x|, |y|)): absolute near zero,
// relative for large magnitudes.
double deviation(double x, double y) {
    return std::fabs(x - y) / (1.0 + std::max(std::fabs(x), std::fabs(y)));
}

CheckResult airy_wronskian(bool quick) {
    CheckResult out{"airy wronskian", true, 0.0, 1e-12, ""};
    const std::vector<double> grid =
        quick ? std::vector<double>{1.0}
              : std::vector<double>{-12.0, -6.0, -2.0, 0.0, 1.0, 4.0, 9.0};
    for (double x : grid) {
        const double w = airy_ai(x, 0).to_real() * airy_bi(x, 1).to_real() -
                         airy_ai(x, 1).to_real() * airy_bi(x, 0).to_real();
        out.worst = std::max(out.worst, std::fabs(M_PI * w - 1.0));
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult deformed_products(bool quick) {
    CheckResult out{"deformed airy product relations", true, 0.0, 1e-10, ""};
    const std::vector<Point> grid =
        quick ? std::vector<Point>{{1.0, 1.0}}
              : [] {
                    std::vector<Point> g;
                    for (double z : {-2.0, -0.5, 0.0, 1.0, 2.0})
                        for (double b : {0.5, 1.0, 1.5}) g.push_back({z, b});
                    return g;
                }();
    for (const Point p : grid) {
        const double b2 = p.b * p.b;
        const double arg = p.zeta + 0.25 * b2 * b2;
        const double ai0 = airy_ai(arg, 0).to_real();
        const double bi0 = airy_bi(arg, 0).to_real();
        const double am = ai_def(p.zeta, {-b2}, 0).to_real();
        const double ap = ai_def(p.zeta, {b2}, 0).to_real();
        const double bm = bi_def(p.zeta, {-b2}, 0).to_real();
        const double bp = bi_def(p.zeta, {b2}, 0).to_real();
        out.worst = std::max({out.worst, deviation(am * bp, ai0 * bi0),
                              deviation(bm * ap, ai0 * bi0)});
        const double scale = std::max({std::fabs(ai0), std::fabs(bi0), 1.0});
        const double r1 = ai_def(p.zeta, {-b2}, 1).to_real() * bp + 0.5 * b2 * am * bp -
                          airy_ai(arg, 1).to_real() * bi0;
        const double r2 = bi_def(p.zeta, {-b2}, 1).to_real() * ap + 0.5 * b2 * bm * ap -
                          airy_bi(arg, 1).to_real() * ai0;
        out.worst = std::max({out.worst, std::fabs(r1) / (scale * scale),
                              std::fabs(r2) / (scale * scale)});
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult contour_route(bool quick) {
    CheckResult out{"deformed airy contour route", true, 0.0, 1e-9, ""};
    const std::vector<Point> grid =
        quick ? std::vector<Point>{{1.0, 1.0}}
              : std::vector<Point>{{0.0, 0.0}, {1.0, 1.0},   {-3.0, 0.5}, {4.0, 2.0},
                                   {-6.0, 1.5}, {8.0, 2.5},  {-9.0, 1.0}, {10.0, 3.0}};
    for (const Point p : grid) {
        const double closed = ai_def(p.zeta, {p.b * p.b}, 0).to_real();
        out.worst = std::max(out.worst, deviation(ai_def_contour(p.zeta, p.b), closed));
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult heat_flow(bool quick) {
    CheckResult out{"deformed airy heat flow", true, 0.0, 1e-5, ""};
    const std::vector<Point> grid =
        quick ? std::vector<Point>{{0.0, 0.5}}
              : [] {
                    std::vector<Point> g;
                    for (double z : {-2.0, 0.0, 2.0})
                        for (double eta : {0.25, 0.5, 1.0}) g.push_back({z, eta});
                    return g;
                }();
    for (const Point p : grid) {
        const double eta = p.b;
        auto in_eta = [&](double e) { return ai_def(p.zeta, {2.0 * e}, 0).to_real(); };
        auto in_zeta = [&](double x) { return ai_def(x, {2.0 * eta}, 0).to_real(); };
        out.worst = std::max(out.worst, std::fabs(finite_diff(in_eta, eta, 1) -
                                                  finite_diff(in_zeta, p.zeta, 2)));
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult scorer_closed_form(bool quick) {
    CheckResult out{"scorer closed form vs direct", true, 0.0, 1e-8, ""};
    const std::vector<Point> grid =
        quick ? std::vector<Point>{{0.0, 0.8}}
              : [] {
                    std::vector<Point> g;
                    for (double z : {-4.0, -2.0, 0.0, 1.0, 2.0})
                        for (double b : {0.0, 0.8, 1.5}) g.push_back({z, b});
                    return g;
                }();
    for (const Point p : grid)
        out.worst = std::max(out.worst, deviation(hi_def_closed(p.zeta, p.b),
                                                  hi_def_direct(p.zeta, p.b)));
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult scorer_ode(bool quick) {
    CheckResult out{"scorer inhomogeneous ode", true, 0.0, 1e-6, ""};
    const std::vector<Point> grid = quick
                                        ? std::vector<Point>{{1.3, 0.8}}
                                        : std::vector<Point>{{1.3, 0.8},
                                                             {-1.0, 0.5},
                                                             {0.0, 1.2},
                                                             {2.0, 0.0}};
    for (const Point p : grid) {
        auto f = [&](double x) { return hi_def_direct(x, p.b); };
        const double resid = finite_diff(f, p.zeta, 2) +
                             p.b * p.b * finite_diff(f, p.zeta, 1) -
                             p.zeta * hi_def_direct(p.zeta, p.b) - 1.0 / M_PI;
        out.worst = std::max(out.worst, std::fabs(resid));
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult moment_rows(bool quick) {
    CheckResult out{"moment recurrence rows", true, 0.0, 1e-8, ""};
    const std::vector<Point> grid =
        quick ? std::vector<Point>{{0.0, 1.0}}
              : std::vector<Point>{{-2.0, 0.4}, {0.0, 1.0}, {0.5, 0.7}, {-1.0, 1.2}};
    for (const Point p : grid) {
        const double z = p.zeta, b2 = p.b * p.b;
        const MomentTriple m0 = moments(z, p.b, 0);
        const MomentTriple m1 = moments(z, p.b, 1);
        const MomentTriple m2 = moments(z, p.b, 2);
        // Rows from differentiating Ai_b^2, Ai_b'^2, and Ai_b Ai_b' under
        // the k-th moment.
        const double row_sq = 2.0 * m1.c_k + m0.b_k;
        const double row_dsq = 2.0 * b2 * m1.a_k + m0.a_k + 2.0 * z * m1.c_k - 2.0 * m1.b_k;
        const double row_mix = m2.b_k + m1.a_k + z * m1.b_k + b2 * m1.c_k + m0.c_k;
        out.worst = std::max({out.worst, std::fabs(row_sq), std::fabs(row_dsq),
                              std::fabs(row_mix)});
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult contour_oracle(bool quick) {
    CheckResult out{"finite-size sums vs contour oracle", true, 0.0, 1e-7, ""};
    struct Triple {
        int n;
        double tau, frac;
    };
    std::vector<Triple> grid;
    if (quick) {
        grid.push_back({6, 0.7, 0.5});
    } else {
        for (int n = 1; n <= 12; ++n)
            for (double tau : {0.3, 0.7, 0.99})
                for (double frac : {0.0, 0.5, 1.9}) grid.push_back({n, tau, frac});
    }
    for (const Triple t : grid) {
        const EllipticParams pr{t.n, t.tau};
        const double z = t.frac * std::sqrt(double(t.n));
        const TildeSums sums = tilde_sums(z, pr);
        const TildeReal via = tilde_sums_contour(z, pr, default_contour(z, pr));
        out.worst = std::max({out.worst, deviation(via.p, sums.p.to_real()),
                              deviation(via.r, sums.r.to_real()),
                              deviation(via.s, sums.s.to_real())});
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult marginal_identity(bool quick, const VerifyHooks& hooks) {
    CheckResult out{"edge-marginal integration identity", true, 0.0, 1e-6, ""};
    const auto quadruple = hooks.quadruple
                               ? hooks.quadruple
                               : [](double z, double b) { return t_quadruple(z, b); };
    std::vector<Point> grid;
    if (quick) {
        grid.push_back({-2.0, 0.6});
    } else {
        for (double z : {-4.0, -2.0, 0.0, 2.0})
            for (double b : {0.3, 0.6, 1.0, 2.0}) grid.push_back({z, b});
    }
    for (const Point p : grid) {
        const TQuadruple quad = quadruple(p.zeta, p.b);
        const double b2 = p.b * p.b;
        auto in_u = [&](double u) {
            return jpdf_edge(quad, {p.zeta, b2 / u, p.b}) * b2 / (u * u);
        };
        const double marginal = integrate(in_u, 0.0, kInf);
        const double rho = edge_density(p.zeta, p.b);
        const double dev = std::fabs(marginal - rho) / (1.0 + rho);
        if (dev > out.worst) {
            out.worst = dev;
            if (dev > out.tolerance) {
                out.note = "t-marginal of the edge jpdf drifted from the eigenvalue density";
            }
        }
    }
    out.passed = out.worst <= out.tolerance;
    return out;
}

CheckResult bridge_limits(bool quick) {
    CheckResult out{"asymptotic bridge limits", true, 0.0, 0.10, ""};
    // Strong limit at (delta, sigma) = (-0.5, 0.4): the rescaled edge law
    // approaches it as b grows, within ten percent by b = 8.
    const double strong_target = strong_jpdf({-0.5, 0.4});
    double prev = kInf;
    bool monotone = true;
    const std::vector<double> bs = quick ? std::vector<double>{8.0}
                                         : std::vector<double>{4.0, 6.0, 8.0};
    double last_dev = 0.0;
    for (double b : bs) {
        const double bridged =
            2.0 * std::pow(b, 4) * jpdf_edge(edge_coords(StrongCoords{-0.5, 0.4}, b));
        last_dev = std::fabs(bridged - strong_target) / strong_target;
        monotone = monotone && last_dev < prev;
        prev = last_dev;
    }
    out.worst = last_dev;
    if (!monotone) out.note = "strong-limit deviation failed to decrease in b";

    // Bulk limit at (w, t, a) = (1, 1, sqrt(2)): deviation decreasing in nu.
    const double bulk_target = bulk_weak_jpdf(1.0, 1.0, std::sqrt(2.0));
    prev = kInf;
    const std::vector<double> nus = quick ? std::vector<double>{4.0, 8.0}
                                          : std::vector<double>{4.0, 6.0, 8.0};
    for (double nu : nus) {
        const BulkCoords bulk = bulk_coords(std::sqrt(2.0), 1.0, nu);
        const double dev = std::fabs(jpdf_edge(edge_coords(bulk, 1.0)) / nu - bulk_target);
        if (!(dev < prev)) {
            monotone = false;
            out.note = "bulk-limit deviation failed to decrease in nu";
        }
        prev = dev;
    }
    out.passed = monotone && last_dev <= out.tolerance;
    return out;
}

}  // namespace

std::vector<CheckResult> run_verification(bool quick, const VerifyHooks& hooks) {
    std::vector<CheckResult> results;
    results.push_back(airy_wronskian(quick));
    results.push_back(deformed_products(quick));
    results.push_back(contour_route(quick));
    results.push_back(heat_flow(quick));
    results.push_back(scorer_closed_form(quick));
    results.push_back(scorer_ode(quick));
    results.push_back(moment_rows(quick));
    results.push_back(contour_oracle(quick));
    results.push_back(marginal_identity(quick, hooks));
    results.push_back(bridge_limits(quick));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
}

void print_report(const std::vector<CheckResult>& results, std::ostream& os) {
    os << std::left << std::setw(42) << "check" << std::setw(8) << "status"
       << std::setw(14) << "worst" << "tolerance\n";
    for (const CheckResult& r : results) {
        os << std::left << std::setw(42) << r.name << std::setw(8)
           << (r.passed ? "pass" : "FAIL") << std::setw(14) << std::scientific
           << std::setprecision(2) << r.worst << r.tolerance << std::defaultfloat;
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << "\n";
    }
}

}  // namespace ovlab
