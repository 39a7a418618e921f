#include "../support/fixtures.hpp"

#include "curvehedge/analytics.hpp"
#include "curvehedge/arbitrage.hpp"
#include "curvehedge/errors.hpp"
#include "curvehedge/extrapolation.hpp"
#include "curvehedge/quadrature.hpp"
#include "curvehedge/smith_wilson.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace curvehedge;
using namespace curvehedge::testing;

TEST_CASE("method spec validation") {
    MethodSpec s = make_spec(MethodKind::M5_SFSA);
    s.kappa = 5.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    MethodSpec m3 = make_spec(MethodKind::M3);
    m3.ufr.reset();
    CHECK_THROWS_AS(ExtrapolatedCurve(ForwardCurve::flat(0.03), m3), DomainError);
    MethodSpec neg = make_spec(MethodKind::M2);
    neg.tau = -1.0;
    CHECK_THROWS_AS(neg.validate(), DomainError);
    CHECK(method_kind_from_string("M5_SFSA") == MethodKind::M5_SFSA);
    CHECK_THROWS(method_kind_from_string("M7"));
}

TEST_CASE("method closed forms") {
    const ForwardCurve flat3 = ForwardCurve::flat(0.03);
    SUBCASE("M3 on a flat curve") {
        const ExtrapolatedCurve c(flat3, make_spec(MethodKind::M3));
        CHECK(c.zero_yield(20.0) == doctest::Approx(0.036).epsilon(1e-14));
        CHECK(forward_of_extrapolated(c, 35.0).value == doctest::Approx(0.042).epsilon(1e-14));
    }
    SUBCASE("M2 keeps z_tau") {
        const ForwardCurve z = smooth_curve();
        const ExtrapolatedCurve c(z, make_spec(MethodKind::M2));
        for (double t : {11.0, 50.0, 200.0}) {
            CHECK(c.zero_yield(t) == doctest::Approx(z.zero_yield(10.0)).epsilon(1e-14));
            CHECK(c.discount(t) == doctest::Approx(std::pow(z.discount(10.0), t / 10.0)).epsilon(1e-13));
        }
    }
    SUBCASE("M1 jumps to the predetermined yield") {
        const ExtrapolatedCurve c(flat3, make_spec(MethodKind::M1));
        CHECK(c.zero_yield(10.0) == doctest::Approx(0.03));
        CHECK(c.zero_yield(10.0 + 1e-9) == doctest::Approx(0.042));
    }
    SUBCASE("M4 holds f_tau") {
        const ForwardCurve z = smooth_curve();
        const ExtrapolatedCurve c(z, make_spec(MethodKind::M4));
        CHECK(c.f_tau() == doctest::Approx(z.forward_left(10.0)).epsilon(1e-15));
        CHECK(forward_of_extrapolated(c, 40.0).value == doctest::Approx(z.forward_left(10.0)).epsilon(1e-14));
    }
    SUBCASE("M5 with flat z equal to the ufr is flat") {
        MethodSpec s = make_spec(MethodKind::M5_SFSA);
        s.ufr = 0.03;
        const ExtrapolatedCurve c(flat3, s);
        for (double t : {5.0, 12.0, 20.0, 90.0}) CHECK(c.zero_yield(t) == doctest::Approx(0.03).epsilon(1e-13));
    }
    SUBCASE("M6 with f_tau = ufr reduces to M3") {
        MethodSpec s = make_spec(MethodKind::M6_SW_continuous);
        s.ufr = 0.03;
        const ExtrapolatedCurve c(flat3, s);
        for (double t : {12.0, 40.0, 150.0}) {
            CHECK(c.discount(t) == doctest::Approx(std::exp(-0.03 * (t - 10.0)) * flat3.discount(10.0)).epsilon(1e-14));
            CHECK(forward_of_extrapolated(c, t).value == doctest::Approx(0.03).epsilon(1e-13));
        }
    }
}

TEST_CASE("M5 against brute-force integration of its forward definition") {
    // z linear in t, so f = d(t z)/dt is linear too.
    std::vector<double> t, f;
    for (int i = 0; i <= 80; ++i) {
        t.push_back(i * 2.5);
        f.push_back(0.01 + 2.0 * 0.001 * t.back());  // z_t = 0.01 + 0.001 t
    }
    const ForwardCurve z(TimeGrid(t), f);
    MethodSpec s = make_spec(MethodKind::M5_SFSA);
    const ExtrapolatedCurve c(z, s);
    const double tau = 10.0, kappa = 20.0, ufr = 0.042;
    // fbar_t = f_t phased into the ufr on (tau, kappa], then ufr; f_t = 0.01 + 0.002 t.
    auto fbar = [&](double s) {
        if (s <= tau) return z.forward(s);
        if (s <= kappa) return ((kappa - s) * (0.01 + 0.002 * s) + (s - tau) * ufr) / (kappa - tau);
        return ufr;
    };
    for (double u : {15.0, 25.0}) {
        const std::vector<double> br{tau, kappa};
        const double brute = integrate_piecewise(fbar, 0.0, u, br, {1e-13, 0.0, 40, 1L << 18}) / u;
        CHECK(std::abs(c.zero_yield(u) - brute) < 1e-9);
    }
}

TEST_CASE("continuity at tau and kappa, and the M5 forward identity") {
    const ForwardCurve z = smooth_curve();
    for (MethodKind k : {MethodKind::M2, MethodKind::M3, MethodKind::M4, MethodKind::M5_SFSA,
                         MethodKind::M6_SW_continuous}) {
        const ExtrapolatedCurve c(z, make_spec(k));
        CHECK(std::abs(c.zero_yield(10.0) - c.zero_yield(10.0 + 1e-10)) < 1e-10);
    }
    const ExtrapolatedCurve m5(z, make_spec(MethodKind::M5_SFSA));
    CHECK(std::abs(forward_of_extrapolated(m5, 20.0 - 1e-9).value - forward_of_extrapolated(m5, 20.0 + 1e-9).value) <
          1e-8);
    CHECK(std::abs(forward_of_extrapolated(m5, 10.0 - 1e-9).value - forward_of_extrapolated(m5, 10.0 + 1e-9).value) <
          1e-8);
    const double h = 1e-5;
    for (double t : {11.0, 14.3, 19.0, 23.0, 70.0}) {
        const double fd = (m5.integrated_forward(t + h) - m5.integrated_forward(t - h)) / (2 * h);
        const double expected =
            t <= 20.0 ? ((20.0 - t) * z.forward(t) + (t - 10.0) * 0.042) / 10.0 : 0.042;
        CHECK(std::abs(fd - expected) < 1e-6);
    }
}

TEST_CASE("offset commutes with discounting below tau") {
    const ForwardCurve z = smooth_curve();
    MethodSpec s = make_spec(MethodKind::M5_SFSA);
    s.offset = 0.005;
    const ExtrapolatedCurve c(z, s);
    for (double t : {1.0, 5.5, 10.0}) CHECK(c.discount(t) == doctest::Approx(std::exp(-0.005 * t) * z.discount(t)).epsilon(1e-13));
}

TEST_CASE("Smith-Wilson forward tends monotonically to the ufr") {
    const ForwardCurve z = smooth_curve();
    for (double ufr : {0.042, 0.02}) {
        MethodSpec s = make_spec(MethodKind::M6_SW_continuous);
        s.ufr = ufr;
        const ExtrapolatedCurve c(z, s);
        double prev = forward_of_extrapolated(c, 10.0 + 1e-9).value;
        const double sign = ufr > prev ? 1.0 : -1.0;
        for (double t = 10.5; t <= 200.0; t += 0.5) {
            const double f = forward_of_extrapolated(c, t).value;
            CHECK(sign * (f - prev) >= -1e-15);
            CHECK(sign * (ufr - f) >= -1e-12);
            prev = f;
        }
    }
}

TEST_CASE("Wilson kernel") {
    CHECK(sw_kernel(0.0, 7.0, 0.042, 0.1) == 0.0);
    CHECK(sw_kernel(1.0, 1.0, 0.0, 1.0) == doctest::Approx(1.0 - 0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-15));
    CHECK(sw_kernel(1.0, 1.0, 0.0, 1.0) == doctest::Approx(0.567667).epsilon(1e-6));
    std::mt19937_64 rng(8);
    for (int k = 0; k < 100; ++k) {
        const double s = uniform(rng, 0, 50), t = uniform(rng, 0, 50);
        CHECK(sw_kernel(s, t, 0.03, 0.2) == sw_kernel(t, s, 0.03, 0.2));
        const double h = 1e-6;
        if (std::abs(s - t) > 1e-3)
            CHECK(sw_kernel_ds(s, t, 0.03, 0.2) ==
                  doctest::Approx((sw_kernel(s + h, t, 0.03, 0.2) - sw_kernel(s - h, t, 0.03, 0.2)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("discrete Smith-Wilson fit") {
    const double ufr = 0.042, alpha = 0.1;
    SUBCASE("observation equal to the prior mean") {
        const std::vector<double> n{10.0}, p{std::exp(-ufr * 10.0)};
        const SwDiscreteFit fit = sw_fit_discrete(n, p, ufr, alpha);
        CHECK(std::abs(fit.zeta()[0]) < 1e-14);
        CHECK(fit.discount(37.0) == doctest::Approx(std::exp(-ufr * 37.0)).epsilon(1e-14));
    }
    SUBCASE("single zero-yield bond") {
        const double t1 = 10.0;
        const std::vector<double> n{t1}, p{1.0};
        const SwDiscreteFit fit = sw_fit_discrete(n, p, ufr, alpha);
        const double zeta = std::exp(ufr * t1) * (std::exp(ufr * t1) - 1.0) /
                            (alpha * t1 - std::exp(-alpha * t1) * std::sinh(alpha * t1));
        CHECK(fit.zeta()[0] == doctest::Approx(zeta).epsilon(1e-13));
        CHECK(fit.discount(t1) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(fit.discount_derivative(0.0) > 0.0);
    }
    SUBCASE("node reproduction") {
        const ForwardCurve z = smooth_curve();
        const std::vector<double> n{1.0, 3.0, 5.0, 10.0, 20.0};
        std::vector<double> p;
        for (double t : n) p.push_back(z.discount(t));
        const SwDiscreteFit fit = sw_fit_discrete(n, p, ufr, alpha);
        for (std::size_t i = 0; i < n.size(); ++i) CHECK(fit.discount(n[i]) == doctest::Approx(p[i]).epsilon(1e-10));
        // Affine weights reproduce the fit.
        const std::vector<double> beta = fit.price_weights(33.0);
        double v = std::exp(-ufr * 33.0);
        for (std::size_t i = 0; i < n.size(); ++i) v += beta[i] * (p[i] - std::exp(-ufr * n[i]));
        CHECK(v == doctest::Approx(fit.discount(33.0)).epsilon(1e-12));
    }
    SUBCASE("ill-conditioned nodes are refused") {
        const std::vector<double> n{5.0, 5.0 + 1e-7}, p{0.9, 0.9};
        CHECK_THROWS_AS(sw_fit_discrete(n, p, ufr, alpha), CalibrationError);
    }
}

TEST_CASE("alpha calibration") {
    const ForwardCurve z = smooth_curve();
    const double f_tau = z.forward_left(10.0);
    SUBCASE("generic case is the smallest admissible alpha") {
        const double eps = 1e-4;
        const double a = sw_alpha_calibrate(z, 10.0, 60.0, 0.042, eps);
        CHECK(sw_forward_gap(f_tau, 0.042, a, 50.0) <= eps + 1e-12);
        CHECK(sw_forward_gap(f_tau, 0.042, 0.9 * a, 50.0) > eps);
        MethodSpec s = make_spec(MethodKind::M6_SW_continuous);
        s.alpha.reset();
        s.kappa = 60.0;
        s.epsilon = eps;
        CHECK(ExtrapolatedCurve(z, s).spec().alpha_value() == doctest::Approx(a).epsilon(1e-12));
    }
    SUBCASE("lower bound already satisfies the criterion") {
        const double ufr = f_tau + 2e-3;
        const double eps = sw_forward_gap(f_tau, ufr, 1e-4, 50.0);
        REQUIRE(eps < 2e-3);
        CHECK(sw_alpha_calibrate(z, 10.0, 60.0, ufr, eps) == 1e-4);
    }
    SUBCASE("degenerate and unattainable cases") {
        CHECK_THROWS_AS(sw_alpha_calibrate(z, 10.0, 60.0, f_tau, 1e-4), NotWellDefinedError);
        CHECK_THROWS_AS(sw_alpha_calibrate(z, 10.0, 11.0, 0.2, 1e-9, {1e-4, 0.01}), CalibrationError);
    }
}

TEST_CASE("arbitrage scan") {
    SUBCASE("M3 with non-negative forwards is clean") {
        const ExtrapolatedCurve c(smooth_curve(), make_spec(MethodKind::M3));
        CHECK(arbitrage_scan(c).empty());
    }
    SUBCASE("single bond has negative short forwards") {
        const std::vector<double> n{10.0}, p{1.0};
        const DefectReport r = arbitrage_scan(sw_fit_discrete(n, p, 0.042, 0.1), 0.01, 0.0, 20.0);
        REQUIRE(r.has(DefectKind::negative_forward));
        CHECK(r.intervals.front().a == 0.0);
    }
    SUBCASE("continuous Smith-Wilson above ufr + alpha") {
        const ExtrapolatedCurve c(ForwardCurve::flat(0.2), make_spec(MethodKind::M6_SW_continuous));
        CHECK(c.defective());
        CHECK(arbitrage_scan(c).has(DefectKind::nonpositive_discount));
        CHECK(forward_of_extrapolated(c, 150.0).defective);
        CHECK_FALSE(ExtrapolatedCurve(ForwardCurve::flat(0.03), make_spec(MethodKind::M6_SW_continuous)).defective());
    }
}

TEST_CASE("discrete Smith-Wilson approaches the continuous curve") {
    const ForwardCurve z = smooth_curve(0.125);
    const ExtrapolatedCurve cont(z, make_spec(MethodKind::M6_SW_continuous));
    double prev = 1.0;
    for (int n : {25, 50, 100, 200, 400}) {
        MethodSpec d = make_spec(MethodKind::M6_SW_discrete);
        for (int i = 1; i <= n; ++i) d.sw_nodes.push_back(10.0 * i / n);
        const ExtrapolatedCurve disc(z, d);
        double e = 0.0;
        for (double t = 10.1; t <= 200.0; t += 0.1) e = std::max(e, std::abs(disc.discount(t) - cont.discount(t)));
        CHECK(e < prev);
        prev = e;
    }
}
