#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ovlab/airy_deformed.hpp"
#include "ovlab/quadrature.hpp"

using namespace ovlab;

namespace {

double rel_diff(double a, double b) {
    return std::fabs(a - b) / std::max(std::fabs(b), 1e-300);
}

double aib(double p, double b) { return ai_def(p, {b * b}, 0).to_real(); }

}  // namespace

TEST_CASE("deformation reduces to the plain Airy functions at beta = 0") {
    CHECK(ai_def(1.2, {0.0}, 0).to_real() ==
          doctest::Approx(0.10612576226331255).epsilon(1e-13));
    for (double z : {-3.0, -0.7, 0.0, 1.4, 4.0}) {
        for (int k : {0, 1}) {
            CHECK(ai_def(z, {0.0}, k).to_real() ==
                  doctest::Approx(airy_ai(z, k).to_real()).epsilon(1e-14));
            CHECK(bi_def(z, {0.0}, k).to_real() ==
                  doctest::Approx(airy_bi(z, k).to_real()).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS((void)ai_def(0.0, {1.0}, 4), DomainError);
    CHECK_THROWS_AS((void)ai_def(0.0, {1.0}, -1), DomainError);
}

TEST_CASE("closed form matches the shifted product at beta = 1") {
    for (double z : {-2.0, 0.0, 2.0}) {
        const double rhs = std::exp(0.5 * z + 1.0 / 12.0) * airy_ai(z + 0.25, 0).to_real();
        CHECK(ai_def(z, {1.0}, 0).to_real() == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("derivatives satisfy the deformed equation") {
    // y'' = beta*y' + zeta*y, checked at the point where it is pure y'.
    const DeformParam beta{4.0};
    const double lhs = ai_def(0.0, beta, 2).to_real();
    const double rhs = 4.0 * ai_def(0.0, beta, 1).to_real();
    CHECK(std::fabs(lhs - rhs) < 1e-10);

    // Each derivative order also matches a finite difference of the previous.
    for (double z : {-1.0, 0.5, 2.0}) {
        for (double b2 : {0.25, 1.0, 2.25}) {
            for (int k : {1, 2, 3}) {
                auto lower = [&](double x) { return ai_def(x, {b2}, k - 1).to_real(); };
                const double fd = finite_diff(lower, z, 1);
                CHECK(ai_def(z, {b2}, k).to_real() == doctest::Approx(fd).epsilon(2e-6));
            }
        }
    }
}

TEST_CASE("contour oracle agrees with the closed form") {
    CHECK(ai_def_contour(0.0, 0.0) ==
          doctest::Approx(airy_ai(0.0, 0).to_real()).epsilon(1e-9));
    struct Case {
        double zeta, b;
    };
    for (const Case c : {Case{1.0, 1.0}, Case{-3.0, 0.5}, Case{4.0, 2.0}, Case{-6.0, 1.5}}) {
        const double closed = ai_def(c.zeta, {c.b * c.b}, 0).to_real();
        CHECK(ai_def_contour(c.zeta, c.b) == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("tail integrals") {
    CHECK(std::fabs(tail_sq(40.0, 0.0)) < 1e-12);

    // Antiderivative of Ai^2 is zeta*Ai^2 - Ai'^2: evaluating the bracket at
    // the endpoints gives an independent value for the tail integral.
    const double at0 = 0.0 - std::pow(airy_ai(0.0, 1).to_real(), 2);
    const double at40 = 40.0 * std::pow(airy_ai(40.0, 0).to_real(), 2) -
                        std::pow(airy_ai(40.0, 1).to_real(), 2);
    CHECK(tail_sq(0.0, 0.0) == doctest::Approx(at40 - at0).epsilon(1e-10));
    CHECK(tail_sq(0.0, 0.0) == doctest::Approx(0.06698748377966397).epsilon(1e-10));

    CHECK(cum_ai(40.0, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(cum_ai(0.0, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Scorer function both ways") {
    CHECK(hi_def_direct(0.0, 0.0) ==
          doctest::Approx(0.40995108496400049).epsilon(1e-10));
    // For large b the Gaussian factor dominates the integrand.
    CHECK(hi_def_direct(0.0, 5.0) ==
          doctest::Approx(0.0797884560803).epsilon(0.01));
    // Inhomogeneous equation Hi'' + b^2 Hi' - zeta*Hi = 1/pi.
    {
        const double z = 1.3, b = 0.8;
        auto f = [&](double x) { return hi_def_direct(x, b); };
        const double resid = finite_diff(f, z, 2) + b * b * finite_diff(f, z, 1) -
                             z * hi_def_direct(z, b) - 1.0 / M_PI;
        CHECK(std::fabs(resid) < 1e-6);
    }
    struct Case {
        double zeta, b;
    };
    for (const Case c : {Case{-2.0, 0.0}, Case{0.0, 0.0}, Case{2.0, 0.0},
                         Case{1.0, 1.0}, Case{-4.0, 1.5}}) {
        CHECK(hi_def_closed(c.zeta, c.b) ==
              doctest::Approx(hi_def_direct(c.zeta, c.b)).epsilon(1e-8));
    }
}

TEST_CASE("Scorer bridge to the cumulative integral") {
    // pi*(Ai_b*Hi_b' + b^2*Ai_b*Hi_b - Ai_b'*Hi_b) integrates the first-order
    // equation obeyed by the Wronskian-like pairing of Hi_b with Ai_[-b^2].
    struct Case {
        double zeta, b;
    };
    for (const Case c : {Case{0.5, 1.2}, Case{-1.0, 0.9}}) {
        const double b2 = c.b * c.b;
        const double ai = aib(c.zeta, c.b);
        const double aip = ai_def(c.zeta, {b2}, 1).to_real();
        const double hi = hi_def_direct(c.zeta, c.b);
        const double hip = detail::hi_def_direct_prime(c.zeta, c.b);
        const double lhs = M_PI * (ai * hip + b2 * ai * hi - aip * hi);
        CHECK(lhs == doctest::Approx(cum_ai(c.zeta, c.b)).epsilon(1e-8));
    }
}

TEST_CASE("moment recurrences") {
    {
        const auto m0 = moments(0.0, 1.0, 0);
        const auto m1 = moments(0.0, 1.0, 1);
        CHECK(std::fabs(m1.c_k + 0.5 * m0.b_k) < 1e-8);
    }
    {
        // Integrating d/dp[Ai_b'^2] by parts against p^k gives
        // 2b^2 a_k = -k a_{k-1} - 2 zeta c_k + (k+1) b_k.
        const double z = 0.5, b = 0.7;
        const auto m0 = moments(z, b, 0);
        const auto m1 = moments(z, b, 1);
        CHECK(std::fabs(2.0 * b * b * m1.a_k + m0.a_k + 2.0 * z * m1.c_k - 2.0 * m1.b_k) < 1e-8);
        const auto m2 = moments(z, b, 2);
        CHECK(std::fabs(2.0 * b * b * m2.a_k + 2.0 * m1.a_k + 2.0 * z * m2.c_k - 3.0 * m2.b_k) < 1e-8);
    }
    {
        const double z = -1.0, b = 1.2;
        const auto m0 = moments(z, b, 0);
        const auto m1 = moments(z, b, 1);
        const auto m2 = moments(z, b, 2);
        CHECK(std::fabs(m2.b_k + m1.a_k + z * m1.b_k + b * b * m1.c_k + m0.c_k) < 1e-8);
    }
    CHECK_THROWS_AS((void)moments(0.0, 1.0, 7), DomainError);
}

TEST_CASE("opposite deformations multiply to the undeformed product") {
    for (double z : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
        for (double b : {0.5, 1.0, 1.5}) {
            const double b2 = b * b;
            const double arg = z + 0.25 * b2 * b2;
            const double ai0 = airy_ai(arg, 0).to_real();
            const double bi0 = airy_bi(arg, 0).to_real();
            const double am = ai_def(z, {-b2}, 0).to_real();
            const double ap = ai_def(z, {b2}, 0).to_real();
            const double bm = bi_def(z, {-b2}, 0).to_real();
            const double bp = bi_def(z, {b2}, 0).to_real();
            CHECK(am * bp == doctest::Approx(ai0 * bi0).epsilon(1e-12));
            CHECK(bm * ap == doctest::Approx(ai0 * bi0).epsilon(1e-12));
            CHECK(am * ap == doctest::Approx(ai0 * ai0).epsilon(1e-12));
            CHECK(bm * bp == doctest::Approx(bi0 * bi0).epsilon(1e-12));

            // First-derivative pairing: the exponential prefactors cancel and
            // leave the undeformed derivative against the undeformed value.
            const double scale = std::max({std::fabs(ai0), std::fabs(bi0), 1.0});
            const double r1 = ai_def(z, {-b2}, 1).to_real() * bp +
                              0.5 * b2 * am * bp - airy_ai(arg, 1).to_real() * bi0;
            const double r2 = bi_def(z, {-b2}, 1).to_real() * ap +
                              0.5 * b2 * bm * ap - airy_bi(arg, 1).to_real() * ai0;
            CHECK(std::fabs(r1) / (scale * scale) < 1e-10);
            CHECK(std::fabs(r2) / (scale * scale) < 1e-10);
        }
    }
}

TEST_CASE("heat flow of the deformed family") {
    // phi(zeta, eta) = exp(zeta*eta + 2*eta^3/3)*Ai(zeta + eta^2) is the
    // beta = 2*eta member, and the family solves d_eta phi = d_zetazeta phi.
    for (double z : {-2.0, 0.0, 2.0}) {
        for (double eta : {0.25, 0.5, 1.0}) {
            auto in_eta = [&](double e) { return ai_def(z, {2.0 * e}, 0).to_real(); };
            auto in_zeta = [&](double x) { return ai_def(x, {2.0 * eta}, 0).to_real(); };
            const double resid = finite_diff(in_eta, eta, 1) - finite_diff(in_zeta, z, 2);
            CHECK(std::fabs(resid) < 1e-5);
        }
    }
}

TEST_CASE("tail envelopes") {
    // Left tail: oscillation under a Gaussian-damped envelope.
    {
        const double nu = 8.0, a = 1.0;
        const double b2 = a * a / (2.0 * nu);
        const double env = std::exp(-a * a / 4.0) / std::sqrt(M_PI * nu);
        CHECK(std::fabs(ai_def(-nu * nu, {b2}, 0).to_real()) < 1.2 * env);
    }
    // Right tail at b = 10: exponents of order 8e4 cancel in the log domain
    // and leave a Gaussian profile in delta.
    {
        const double b = 10.0, delta = 0.3;
        const AiryValue v = ai_def(std::sqrt(2.0) * b * delta, {b * b}, 0);
        const double log_ratio =
            std::log(b * std::sqrt(2.0 * M_PI)) + v.log_abs() + delta * delta;
        CHECK(v.sign() == 1);
        CHECK(std::fabs(log_ratio) < std::log(1.15));
    }
}
