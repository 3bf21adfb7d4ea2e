#include "gsqg/kernels.hpp"

#include <cmath>
#include <string>

#include "gsqg/errors.hpp"

namespace gsqg {

KernelParams::KernelParams(double a, double rc, double w) : alpha(a), cutoff_radius(rc), mollifier_width(w) {
    if (!(a >= 0.0 && a < 0.5)) throw ValidationError("kernel: alpha must lie in [0, 1/2)");
    if (!(rc >= 0.0) || !(w >= 0.0)) throw ValidationError("kernel: cutoff and width must be non-negative");
    if (w > rc) throw ValidationError("kernel: mollifier_width must not exceed cutoff_radius");
}

double cutoff_profile(const KernelParams& kp, double r) {
    if (!kp.regularized() || r >= kp.cutoff_radius) return 1.0;
    const double inner = kp.cutoff_radius - kp.mollifier_width;
    if (r <= inner) return 0.0;
    const double t = (r - inner) / kp.mollifier_width;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

namespace {

// |y|^{-2-2a} times the cutoff; throws at the origin for the exact kernel.
inline double radial_factor(const KernelParams& kp, double r2) {
    if (r2 == 0.0) {
        if (!kp.regularized()) throw SingularityError("kernel evaluated at its singular point");
        return 0.0;
    }
    const double base = std::pow(r2, -1.0 - kp.alpha);
    if (!kp.regularized()) return base;
    return base * cutoff_profile(kp, std::sqrt(r2));
}

inline Vec2 free_term(const KernelParams& kp, double y1, double y2) {
    const double f = radial_factor(kp, y1 * y1 + y2 * y2);
    return {y2 * f, -y1 * f};
}

}  // namespace

Vec2 free_kernel(const KernelParams& kp, const Vec2& y) { return free_term(kp, y.x1, y.x2); }

Vec2 halfplane_kernel(const KernelParams& kp, const Vec2& x, const Vec2& y) {
    if (x == y && !kp.regularized()) throw SingularityError("halfplane_kernel: x = y");
    if (y.x2 == 0.0) return {0.0, 0.0};
    return free_term(kp, x.x1 - y.x1, x.x2 - y.x2) - free_term(kp, x.x1 - y.x1, x.x2 + y.x2);
}

Vec2 quarter_kernel_diff(const KernelParams& kp, const Vec2& dm, const Vec2& dp) {
    const double d1m = dm.x1, d1p = dp.x1, d2m = dm.x2, d2p = dp.x2;
    const double fmm = radial_factor(kp, d1m * d1m + d2m * d2m), fpm = radial_factor(kp, d1p * d1p + d2m * d2m);
    const double fmp = radial_factor(kp, d1m * d1m + d2p * d2p), fpp = radial_factor(kp, d1p * d1p + d2p * d2p);
    // (y1 - x1) = -d1m, (y1 + x1) = d1p
    return {d2m * fmm - d2m * fpm - d2p * fmp + d2p * fpp, -d1m * fmm + d1m * fmp + d1p * fpm - d1p * fpp};
}

double k1(const KernelParams& kp, const Vec2& x, const Vec2& y) { return quarter_kernel_diff(kp, x - y, x + y).x1; }

double k2(const KernelParams& kp, const Vec2& x, const Vec2& y) { return quarter_kernel_diff(kp, x - y, x + y).x2; }

Vec2 image_kernel_diff(const KernelParams& kp, const Vec2& dm, const Vec2& dp, bool odd_x1, bool odd_x2) {
    Vec2 u = free_term(kp, dm.x1, dm.x2);
    if (odd_x2) u -= free_term(kp, dm.x1, dp.x2);
    if (odd_x1) {
        u -= free_term(kp, dp.x1, dm.x2);
        if (odd_x2) u += free_term(kp, dp.x1, dp.x2);
    }
    return u;
}

Vec2 image_kernel(const KernelParams& kp, const Vec2& x, const Vec2& y, bool odd_x1, bool odd_x2) {
    return image_kernel_diff(kp, x - y, x + y, odd_x1, odd_x2);
}

}  // namespace gsqg
