#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gsqg/errors.hpp"
#include "gsqg/illposed.hpp"
#include "gsqg/scenario.hpp"
#include "support.hpp"

using namespace gsqg;

namespace {

const Params kQuarter(0.25, 0.5);

// Coarse lattice used where the reference resolution is not needed.
ScalarField coarse_datum(const BlowupScenario& sc) {
    return build_blowup_datum(sc, 0.5 * sc.epsilon(), blowup_grid(0.05, 4.0, 4.0));
}

}  // namespace

TEST(Blowup, ClosedFormEndpoints) {
    for (double e : {0.01, 0.05, 0.1}) {
        const BlowupScenario sc(e, kQuarter);
        EXPECT_NEAR(sc.T_eps(), 25.0 * std::pow(3 * e, 0.5), 1e-14);
        EXPECT_NEAR(sc.X(0.0), 3 * e, 1e-15);
        EXPECT_EQ(sc.X(sc.T_eps()), 0.0);
        EXPECT_EQ(sc.X(2 * sc.T_eps()), 0.0);
    }
}

TEST(Blowup, XMatchesOdeIntegration) {
    for (double a : {0.1, 0.25, 0.4}) {
        const BlowupScenario sc(0.05, Params(a, 0.0));
        const double T = 0.9 * sc.T_eps();
        auto rhs = [a](Vec2 x) { return Vec2{-std::pow(x.x1, 1 - 2 * a) / (50 * a), 0.0}; };
        double worst = 0.0;
        Vec2 x{3 * 0.05, 0.0};
        const int chunks = 20;
        for (int k = 1; k <= chunks; ++k) {
            x = oracle::rk4(rhs, x, T / chunks, 5000);
            worst = std::max(worst, std::abs(x.x1 - sc.X(T * k / chunks)));
        }
        EXPECT_LE(worst, 1e-8) << a;
    }
}

TEST(Blowup, DerivativeByFiniteDifferences) {
    const BlowupScenario sc(0.05, kQuarter);
    for (double f : {0.0, 0.3, 0.6, 0.9}) {
        const double t = f * sc.T_eps(), d = 1e-6 * sc.T_eps();
        const double fd = (sc.X(t + d) - sc.X(std::max(0.0, t - d))) / (t + d - std::max(0.0, t - d));
        EXPECT_NEAR(sc.dX_dt(t), fd, 1e-6 * std::abs(fd) + 1e-9);
        EXPECT_NEAR(sc.dX_dt(t), -std::pow(sc.X(t), 0.5) / 12.5, 1e-14);
    }
}

TEST(Blowup, RejectsBadGeometry) {
    EXPECT_THROW(BlowupScenario(0.5, kQuarter), ValidationError);
    const BlowupScenario sc(0.05, kQuarter);
    EXPECT_THROW(build_blowup_datum(sc, 0.05, blowup_grid(0.05)), GeometryError);
    EXPECT_THROW(build_blowup_datum(sc, 0.0, blowup_grid(0.05)), GeometryError);
}

TEST(Trapezoid, MembershipAndDistance) {
    const Trapezoid L{0.2, 1.0};
    EXPECT_TRUE(L.contains({0.5, 0.3}));
    EXPECT_FALSE(L.contains({0.5, 0.6}));
    EXPECT_FALSE(L.contains({0.1, 0.05}));
    EXPECT_FALSE(L.contains({1.2, 0.1}));
    EXPECT_FALSE(L.contains({0.5, 0.0}));
    EXPECT_EQ(L.distance({0.5, 0.3}), 0.0);
    EXPECT_NEAR(L.distance({0.1, 0.05}), 0.1, 1e-15);
    EXPECT_NEAR(L.distance({1.5, 0.5}), 0.5, 1e-15);
    // above the diagonal: distance to the line x2 = x1
    EXPECT_NEAR(L.distance({0.5, 0.7}), 0.2 / std::sqrt(2.0), 1e-15);
}

TEST(BlowupDatum, PointValues) {
    const BlowupScenario sc(0.05, kQuarter);
    for (double w : {0.01, 0.04}) {
        EXPECT_EQ(blowup_profile(sc, w, 1.0, 1.0), 1.0);
        EXPECT_EQ(blowup_profile(sc, w, 0.025, 1.0), 0.0);
    }
    const ScalarField f = coarse_datum(sc);
    EXPECT_NEAR(f.value(1.0, 1.0), 1.0, 1e-15);
    EXPECT_EQ(f.value(0.025, 1.0), 0.0);
    EXPECT_TRUE(f.parity().odd_x1);
    EXPECT_TRUE(f.parity().odd_x2);
    EXPECT_NEAR(f.value(-1.0, 1.0), -1.0, 1e-15);
    EXPECT_NEAR(f.value(-1.0, -1.0), 1.0, 1e-15);
}

TEST(BlowupDatum, Sandwich) {
    const BlowupScenario sc(0.05, kQuarter);
    const ScalarField f = coarse_datum(sc);
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> U(0.0, 3.5);
    const Box om = sc.omega(), omp = sc.omega_prime();
    auto inside = [](const Box& b, double x1, double x2) { return x1 > b.a1 && x1 < b.b1 && x2 > b.a2 && x2 < b.b2; };
    long bad = 0;
    for (int k = 0; k < 10000; ++k) {
        const double x1 = U(rng), x2 = U(rng);
        const double lo = inside(omp, x1, x2) ? 1.0 : 0.0, hi = inside(om, x1, x2) ? 1.0 : 0.0;
        for (double v : {blowup_profile(sc, 0.01, x1, x2), blowup_profile(sc, 0.04, x1, x2), f.value(x1, x2)})
            if (v < lo - 1e-14 || v > hi + 1e-14) ++bad;
    }
    EXPECT_EQ(bad, 0);
}

TEST(Barrier, ProbesMatchPolarOracleAndSigns) {
    const BlowupScenario sc(0.05, kQuarter);
    const ScalarField f = coarse_datum(sc);
    const KernelParams kp(0.25);
    const QuadConfig qc;
    const auto rep = barrier_check(f, sc, 0.0, kp, qc, 5);
    ASSERT_EQ(rep.I.size(), 5u);
    ASSERT_EQ(rep.J.size(), 5u);
    const double X0 = 0.15;
    EXPECT_NEAR(rep.X, X0, 1e-15);
    EXPECT_NEAR(rep.threshold, std::pow(X0, 0.5) / 11.25, 1e-15);
    EXPECT_TRUE(rep.ok());

    // midpoint of I_0 and the corner (X_0, X_0) against independent polar-coordinate quadrature
    const Vec2 mid{X0, 0.5 * X0}, corner{X0, X0};
    const Vec2 um = oracle::polar_velocity(f, 0.25, mid, 6.0, 1e-8);
    const Vec2 uc = oracle::polar_velocity(f, 0.25, corner, 6.0, 1e-8);
    const auto vm = velocity_quarter_at(f, kp, mid, qc);
    const auto vc = velocity_quarter_at(f, kp, corner, qc);
    EXPECT_NEAR(vm.u.x1, um.x1, 1e-6);
    EXPECT_NEAR(vc.u.x2, uc.x2, 1e-6);
    EXPECT_LE(um.x1, -rep.threshold + vm.err_est);
    EXPECT_GE(uc.x2, -vc.err_est);
    // the report carries the same numbers at its own probes
    for (const auto& p : rep.I) EXPECT_NEAR(p.margin, p.u.x1 + rep.threshold, 1e-15);
    for (const auto& p : rep.J) EXPECT_EQ(p.margin, p.u.x2);
}

TEST(Barrier, QuarterFormEqualsImageForm) {
    const BlowupScenario sc(0.05, kQuarter);
    const ScalarField f = coarse_datum(sc);
    const KernelParams kp(0.25);
    const QuadConfig qc;
    for (int k = 0; k < 6; ++k) {
        const Vec2 x{0.15 + 0.3 * k, 0.1 + 0.25 * k};
        const Vec2 a = velocity_quarter_at(f, kp, x, qc).u, b = velocity_at(f, kp, x, qc).u;
        EXPECT_NEAR(a.x1, b.x1, 1e-5);
        EXPECT_NEAR(a.x2, b.x2, 1e-5);
    }
}

TEST(Containment, InitialState) {
    const BlowupScenario sc(0.05, kQuarter);
    const ScalarField f = coarse_datum(sc);
    const auto pts = containment_monitor({{0.0, f}}, sc);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_TRUE(pts[0].contained);
    EXPECT_FALSE(pts[0].level_set_empty);
    EXPECT_GE(pts[0].d, sc.epsilon() - f.grid().h);
    EXPECT_NEAR(pts[0].X, 0.15, 1e-15);
}

TEST(Containment, DetectsEmptyLevelSet) {
    const BlowupScenario sc(0.05, kQuarter);
    ScalarField f = coarse_datum(sc);
    for (auto& v : f.values()) v *= 0.5;
    const auto pts = containment_monitor({{0.0, f}}, sc);
    EXPECT_TRUE(pts[0].level_set_empty);
    EXPECT_FALSE(pts[0].contained);
}

TEST(IllposedLow, CapsAndDerivedSequences) {
    const IllposedSpecLow d(Params(0.25, 0.25), 0.5, 4);
    for (int n = 1; n <= 4; ++n) {
        EXPECT_DOUBLE_EQ(d.a_n(n), 0.5 * std::exp2(-8.0 * n / 0.25));
        EXPECT_LE(d.a_n(n), std::exp2(-4.0 * n - 1));
        EXPECT_DOUBLE_EQ(d.b_n(n), std::exp2(-2.0 * n) * d.a_n(n));
        const Vec2 c = d.cap_center(n);
        EXPECT_EQ(d.stretched_value(c.x1, c.x2), 1.0 + d.a_n(n));
        // caps are disjoint: the next centre lies outside this cap's support
        if (n < 4) {
            EXPECT_LT(d.cap_center(n + 1).x2 + d.a_n(n + 1), c.x2 - d.a_n(n));
        }
    }
    EXPECT_THROW(IllposedSpecLow(Params(0.25, 0.5), 0.5, 4), ValidationError);
}

TEST(IllposedLow, StretchedLipschitzAndNorm) {
    const IllposedSpecLow d(Params(0.25, 0.25), 0.5, 4);
    double L = 0.0;
    const double s = 0.013;
    for (double x1 = -2.0; x1 <= 2.0; x1 += s)
        for (double x2 = s; x2 <= 2.0; x2 += s) {
            const double v = d.stretched_value(x1, x2);
            L = std::max({L, std::abs(d.stretched_value(x1 + s, x2) - v) / s,
                          std::abs(d.stretched_value(x1, x2 + s) - v) / s});
        }
    EXPECT_LE(L, 1.0 + 1e-9);
    const ScalarField f = build_illposed_low(d, 0.05);
    EXPECT_FALSE(f.parity().odd_x1);
    EXPECT_TRUE(f.parity().odd_x2);
    const WNorm w = wbeta_norm(f, d.params);
    EXPECT_TRUE(std::isfinite(w.sup_norm));
    EXPECT_TRUE(std::isfinite(w.seminorm));
}

TEST(IllposedHigh, ProbeValuesAndTruncation) {
    const IllposedSpecHigh d(Params(0.25, 0.75), 5.0, 3);
    const Vec2 y = d.probe(), yp = d.probe_prime();
    EXPECT_NEAR(d.value(y.x1, y.x2), d.a_n(3) / 3.0, 1e-12);
    EXPECT_EQ(d.value(yp.x1, yp.x2), 0.0);
    // a longer truncation differs by at most the next cap height
    const IllposedSpecHigh longer(Params(0.25, 0.75), 5.0, 6);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-3.0, 1.0), V(0.0, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 20000; ++k) {
        const double x1 = U(rng), x2 = V(rng);
        worst = std::max(worst, std::abs(longer.stretched_value(x1, x2) - d.stretched_value(x1, x2)));
    }
    EXPECT_LE(worst, d.a_n(4) / 4.0 + 1e-15);
    // cap peaks sit right of the pyramid, so the value there is the cap height alone
    for (int n = 1; n <= 6; ++n) {
        const Vec2 c = longer.cap_center(n);
        EXPECT_NEAR(longer.stretched_value(c.x1, c.x2), longer.a_n(n) / n, 1e-9 * longer.a_n(n));
    }
}

TEST(Shear, InitialQuotientAndGapDirection) {
    const IllposedSpecLow d(Params(0.25, 0.25), 0.5, 4);
    const KernelParams kp(0.25);
    const QuadConfig qc;
    const ShearSeries s = shear_diagnostic(d, 3, kp, qc, ShearOptions{0.01, 1e-3});
    ASSERT_GE(s.samples.size(), 2u);
    EXPECT_LE(s.quotient0, 1.0 + 1e-6);
    EXPECT_NEAR(s.samples.front().gap.x1, 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(s.delta_theta, d.a_n(3));

    // sign oracle: the rate of change of the horizontal gap is grad u1 . gap at the track start, by central
    // differences of the adaptive velocity on the sampled field
    const ScalarField f = build_illposed_low(d, 0.02);
    const Vec2 y = d.probe(3), g0 = s.samples.front().gap;
    const double h = 0.25 * y.x2;
    auto u1 = [&](Vec2 x) { return velocity_at(f, kp, x, qc).u.x1; };
    const double d1 = (u1(y + Vec2{h, 0}) - u1(y - Vec2{h, 0})) / (2 * h);
    const double d2 = (u1(y + Vec2{0, h}) - u1(y - Vec2{0, h})) / (2 * h);
    const double rate = d1 * g0.x1 + d2 * g0.x2;
    EXPECT_LT(rate, 0.0);
    EXPECT_LT(s.samples[1].gap.x1, g0.x1);
    EXPECT_NEAR((s.samples[1].gap.x1 - g0.x1) / (s.samples[1].t - s.samples[0].t), rate, 0.05 * std::abs(rate));
}
