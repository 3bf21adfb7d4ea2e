#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gsqg/errors.hpp"
#include "gsqg/kernels.hpp"

using namespace gsqg;

namespace {

// Direct arithmetic: y_perp / |y|^{2+2a}
Vec2 direct(double a, Vec2 y) {
    const double r = std::hypot(y.x1, y.x2);
    return Vec2{y.x2, -y.x1} * std::pow(r, -2.0 - 2.0 * a);
}

// Four image terms written out by hand, x - R y for the reflections of y across both axes.
Vec2 four_terms(double a, Vec2 x, Vec2 y) {
    return direct(a, x - y) - direct(a, {x.x1 + y.x1, x.x2 - y.x2}) - direct(a, {x.x1 - y.x1, x.x2 + y.x2}) +
           direct(a, x + y);
}

}  // namespace

TEST(Kernels, FreeKernelExamples) {
    const KernelParams kp(0.25);
    const Vec2 a = free_kernel(kp, {1.0, 0.0});
    EXPECT_DOUBLE_EQ(a.x1, 0.0);
    EXPECT_DOUBLE_EQ(a.x2, -1.0);
    const Vec2 b = free_kernel(kp, {0.0, 2.0});
    EXPECT_NEAR(b.x1, 2.0 / std::pow(2.0, 2.5), 1e-15);
    EXPECT_NEAR(b.x1, 0.35355, 1e-5);
    EXPECT_DOUBLE_EQ(b.x2, 0.0);
}

TEST(Kernels, FreeKernelIsOdd) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (double a : {0.0, 0.1, 0.25, 0.45}) {
        const KernelParams kp(a);
        for (int k = 0; k < 100; ++k) {
            const Vec2 y{U(rng), U(rng)};
            const Vec2 p = free_kernel(kp, y), m = free_kernel(kp, -y);
            EXPECT_DOUBLE_EQ(p.x1, -m.x1);
            EXPECT_DOUBLE_EQ(p.x2, -m.x2);
            const Vec2 d = direct(a, y);
            EXPECT_NEAR(p.x1, d.x1, 1e-13 * std::abs(d.x1) + 1e-300);
            EXPECT_NEAR(p.x2, d.x2, 1e-13 * std::abs(d.x2) + 1e-300);
        }
    }
}

TEST(Kernels, FreeKernelDivergenceFree) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> R(1.0, 4.0), T(0.0, 2.0 * M_PI);
    const KernelParams kp(0.3);
    const double h = 1e-4;
    for (int k = 0; k < 100; ++k) {
        const double r = R(rng), t = T(rng);
        const Vec2 y{r * std::cos(t), r * std::sin(t)};
        const double div = (free_kernel(kp, y + Vec2{h, 0}).x1 - free_kernel(kp, y - Vec2{h, 0}).x1 +
                            free_kernel(kp, y + Vec2{0, h}).x2 - free_kernel(kp, y - Vec2{0, h}).x2) /
                           (2 * h);
        EXPECT_LE(std::abs(div), 1e-6);
    }
}

TEST(Kernels, SingularPointIsReported) {
    EXPECT_THROW(free_kernel(KernelParams(0.25), {0.0, 0.0}), SingularityError);
    // regularized kernel is finite there
    EXPECT_NO_THROW(free_kernel(KernelParams(0.25, 0.1, 0.05), {0.0, 0.0}));
    EXPECT_THROW(KernelParams(0.25, 0.1, 0.2), ValidationError);
}

TEST(Kernels, HalfplaneKernel) {
    const KernelParams kp(0.25);
    // x on the boundary: second component vanishes
    EXPECT_DOUBLE_EQ(halfplane_kernel(kp, {0.0, 0.0}, {0.0, 1.0}).x2, 0.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-3.0, 3.0), P(0.01, 3.0);
    for (int k = 0; k < 100; ++k) {
        const Vec2 x{U(rng), 0.0}, y{U(rng), P(rng)};
        EXPECT_NEAR(halfplane_kernel(kp, x, y).x2, 0.0, 1e-15);
        // y on the boundary: y = ybar and the kernel vanishes
        const Vec2 z = halfplane_kernel(kp, {U(rng), P(rng)}, {U(rng), 0.0});
        EXPECT_EQ(z.x1, 0.0);
        EXPECT_EQ(z.x2, 0.0);
    }
    const Vec2 v = halfplane_kernel(kp, {1.0, 1.0}, {0.0, 2.0});
    const Vec2 o = direct(0.25, {1.0, -1.0}) - direct(0.25, {1.0, 3.0});
    EXPECT_NEAR(v.x1, o.x1, 1e-15);
    EXPECT_NEAR(v.x2, o.x2, 1e-15);
}

TEST(Kernels, QuarterKernelsMatchFourTermArithmetic) {
    const KernelParams kp(0.25);
    const Vec2 x{1.0, 1.0};
    EXPECT_NEAR(k1(kp, x, {2.0, 0.5}), four_terms(0.25, x, {2.0, 0.5}).x1, 1e-15);
    EXPECT_NEAR(k2(kp, x, {0.5, 2.0}), four_terms(0.25, x, {0.5, 2.0}).x2, 1e-15);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.01, 3.0);
    for (int k = 0; k < 200; ++k) {
        const Vec2 a{U(rng), U(rng)}, b{U(rng), U(rng)};
        const Vec2 o = four_terms(0.3, a, b);
        const Vec2 im = image_kernel(KernelParams(0.3), a, b, true, true);
        EXPECT_NEAR(k1(KernelParams(0.3), a, b), o.x1, 1e-12 * (1 + std::abs(o.x1)));
        EXPECT_NEAR(k2(KernelParams(0.3), a, b), o.x2, 1e-12 * (1 + std::abs(o.x2)));
        EXPECT_NEAR(im.x1, o.x1, 1e-12 * (1 + std::abs(o.x1)));
        EXPECT_NEAR(im.x2, o.x2, 1e-12 * (1 + std::abs(o.x2)));
    }
}

TEST(Kernels, ImageKernelSingleParity) {
    const KernelParams kp(0.2);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.01, 3.0);
    for (int k = 0; k < 100; ++k) {
        const Vec2 x{U(rng), U(rng)}, y{U(rng), U(rng)};
        const Vec2 h2 = image_kernel(kp, x, y, false, true);
        const Vec2 ref = halfplane_kernel(kp, x, y);
        EXPECT_NEAR(h2.x1, ref.x1, 1e-12 * (1 + std::abs(ref.x1)));
        EXPECT_NEAR(h2.x2, ref.x2, 1e-12 * (1 + std::abs(ref.x2)));
        const Vec2 h1 = image_kernel(kp, x, y, true, false);
        const Vec2 ref1 = direct(0.2, x - y) - direct(0.2, {x.x1 + y.x1, x.x2 - y.x2});
        EXPECT_NEAR(h1.x1, ref1.x1, 1e-12 * (1 + std::abs(ref1.x1)));
        EXPECT_NEAR(h1.x2, ref1.x2, 1e-12 * (1 + std::abs(ref1.x2)));
    }
}

// K1 > 0 on L'''_x = {0 < x1 - y1 <= x2 - y2 <= x2 <= x1}
TEST(Kernels, K1PositiveOnTriangleBelowDiagonal) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (double a : {0.0, 0.1, 0.25, 0.4}) {
        const KernelParams kp(a);
        long violations = 0;
        for (int k = 0; k < 100000; ++k) {
            const double x1 = 0.01 + 3.0 * U(rng);
            const double x2 = x1 * (0.01 + 0.99 * U(rng));
            const double dy2 = x2 * (0.01 + 0.99 * U(rng));       // x2 - y2 in (0, x2]
            const double dy1 = dy2 * (0.01 + 0.99 * U(rng));      // x1 - y1 in (0, x2 - y2]
            const Vec2 x{x1, x2}, y{x1 - dy1, x2 - dy2};
            if (!(y.x1 > 0.0 && y.x2 > 0.0)) continue;
            if (!(k1(kp, x, y) > 0.0)) ++violations;
        }
        EXPECT_EQ(violations, 0) << "alpha " << a;
    }
}

TEST(Kernels, K1NonPositiveAboveTarget) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0.01, 3.0);
    const KernelParams kp(0.25);
    for (int k = 0; k < 10000; ++k) {
        const Vec2 x{U(rng), U(rng)};
        const Vec2 y{U(rng), x.x2 + U(rng)};
        EXPECT_LE(k1(kp, x, y), 0.0);
    }
}

TEST(Kernels, K2SignStructure) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> U(0.01, 3.0);
    const KernelParams kp(0.25);
    long negative_right = 0, positive_left = 0;
    for (int k = 0; k < 100000; ++k) {
        const Vec2 x{U(rng), U(rng)};
        const Vec2 right{x.x1 + U(rng) - 0.01, U(rng)};
        if (k2(kp, x, right) < 0.0) ++negative_right;
        // y1 <= x1: the sum of the first two terms is a lower bound for min{K2, 0}
        const Vec2 left{x.x1 * U(rng) / 3.0, U(rng)};
        const double w = -2.5;
        const double first_two = (left.x1 - x.x1) * (std::pow(norm(x - left), w) -
                                                     std::pow(std::hypot(x.x1 - left.x1, x.x2 + left.x2), w));
        if (k2(kp, x, left) < first_two - 1e-12 * std::abs(first_two) || first_two > 0.0) ++positive_left;
    }
    EXPECT_EQ(negative_right, 0);
    EXPECT_EQ(positive_left, 0);
}

TEST(Kernels, RegularizedKernelMatchesExactOutsideCutoff) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> T(0.0, 2.0 * M_PI);
    for (double c : {0.2, 0.1, 0.05}) {
        const KernelParams reg(0.25, c, c / 2);
        const KernelParams exact(0.25);
        for (int k = 0; k < 50; ++k) {
            const double t = T(rng), r = c * 1.01 + 0.5 * k / 50.0;
            const Vec2 y{r * std::cos(t), r * std::sin(t)};
            const Vec2 a = free_kernel(reg, y), b = free_kernel(exact, y);
            EXPECT_DOUBLE_EQ(a.x1, b.x1);
            EXPECT_DOUBLE_EQ(a.x2, b.x2);
        }
        // and stays a perpendicular gradient of a radial profile: y . K(y) = 0
        const Vec2 y{0.7 * c, 0.3 * c};
        EXPECT_NEAR(dot(y, free_kernel(reg, y)), 0.0, 1e-12);
        EXPECT_GE(cutoff_profile(reg, 0.0), 0.0);
        EXPECT_LE(cutoff_profile(reg, c), 1.0);
    }
}
