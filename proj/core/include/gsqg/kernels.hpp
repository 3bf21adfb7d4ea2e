#pragma once

#include "gsqg/vec2.hpp"

namespace gsqg {

// cutoff_radius = 0 selects the exact singular kernel. Otherwise the kernel is multiplied by a
// C^2 ramp that is 0 for |y| <= cutoff_radius - mollifier_width and 1 for |y| >= cutoff_radius.
struct KernelParams {
    KernelParams() = default;
    KernelParams(double alpha, double cutoff_radius = 0.0, double mollifier_width = 0.0);

    double alpha = 0.25;
    double cutoff_radius = 0.0;
    double mollifier_width = 0.0;

    bool regularized() const { return cutoff_radius > 0.0; }
};

// Ramp value chi(r) in [0, 1].
double cutoff_profile(const KernelParams& kp, double r);

// y^perp / |y|^{2+2 alpha}
Vec2 free_kernel(const KernelParams& kp, const Vec2& y);
// (x-y)^perp/|x-y|^{2+2a} - (x-ybar)^perp/|x-ybar|^{2+2a}, ybar = (y1, -y2)
Vec2 halfplane_kernel(const KernelParams& kp, const Vec2& x, const Vec2& y);
// Quarter-plane kernels for data odd in both variables; u1 = int K1 theta, u2 = int K2 theta over D+.
double k1(const KernelParams& kp, const Vec2& x, const Vec2& y);
double k2(const KernelParams& kp, const Vec2& x, const Vec2& y);

// Sum over the parity images of y:  sum_R s_R K(x - R y).
Vec2 image_kernel(const KernelParams& kp, const Vec2& x, const Vec2& y, bool odd_x1, bool odd_x2);

// The same two kernels written in dm = x - y and dp = x + y, for callers that know x - y more
// accurately than x and y themselves.
Vec2 image_kernel_diff(const KernelParams& kp, const Vec2& dm, const Vec2& dp, bool odd_x1, bool odd_x2);
Vec2 quarter_kernel_diff(const KernelParams& kp, const Vec2& dm, const Vec2& dp);  // (K1, K2)

}  // namespace gsqg
