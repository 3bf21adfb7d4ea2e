#pragma once

#include <utility>
#include <vector>

#include "gsqg/errors.hpp"
#include "gsqg/field.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/params.hpp"
#include "gsqg/vec2.hpp"

namespace gsqg {

struct QuadConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double split_radius = 0.05;
    int max_subdivisions = 40000;
    double fd_step = 1e-3;

    void validate() const;
};

struct VelocityResult {
    Vec2 u;
    double err_est = 0.0;
    int subdivisions = 0;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, VelocityResult partial_result)
        : Error(what), partial(partial_result) {}
    VelocityResult partial;
};

// combined: one integral over the stored support with the summed image kernel.
// separate: each reflected copy of the support integrated on its own with the free kernel.
enum class ImageMode { combined, separate };

VelocityResult velocity_at(const ScalarField& field, const KernelParams& kp, const Vec2& x, const QuadConfig& qc,
                           ImageMode mode = ImageMode::combined);

// Same velocity for data odd in both variables, written with K1, K2 over the open quadrant.
VelocityResult velocity_quarter_at(const ScalarField& field, const KernelParams& kp, const Vec2& x,
                                   const QuadConfig& qc);

// u at many targets; parallel over targets, results in input order.
std::vector<VelocityResult> velocity_batch(const ScalarField& field, const KernelParams& kp,
                                           const std::vector<Vec2>& xs, const QuadConfig& qc,
                                           ImageMode mode = ImageMode::combined);

// (u1(x1, lambda(x2)), u2(x1, lambda(x2)) / kappa(lambda(x2)))
VelocityResult stretched_velocity_at(const ScalarField& field, const KernelParams& kp, const Vec2& x,
                                     const QuadConfig& qc, const StretchMap& map);

struct GradientDiagnostic {
    Vec2 x;
    double d1u1 = 0.0, d1u2 = 0.0, d2u1 = 0.0, d2u2 = 0.0;
    double w_d1u2 = 1.0;  // max{x2^{2a-1}, 1}
    double w_d2u1 = 1.0;  // min{x2^{2a}, 1}
    double fd_err = 0.0;    // largest Richardson difference over the four partials
    double quad_err = 0.0;  // quadrature error propagated through the stencil
    bool one_sided = false;

    double weighted_d1u2() const { return w_d1u2 * d1u2; }
    double weighted_d2u1() const { return w_d2u1 * d2u1; }
    double divergence() const { return d1u1 + d2u2; }
};

GradientDiagnostic gradient_diag(const ScalarField& field, const KernelParams& kp, const Vec2& x,
                                 const QuadConfig& qc);

struct Divergence {
    double value = 0.0;
    double budget = 0.0;  // finite-difference plus quadrature error bound
};

Divergence divergence_at(const ScalarField& field, const KernelParams& kp, const Vec2& x, const QuadConfig& qc);

// max |u(x) - u(x')| / |x - x'|^{1-2a} over the given pairs
double holder_seminorm_sample(const ScalarField& field, const KernelParams& kp, const QuadConfig& qc,
                              const std::vector<std::pair<Vec2, Vec2>>& pairs);

}  // namespace gsqg
