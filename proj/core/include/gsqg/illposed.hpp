#pragma once

#include <string>
#include <vector>

#include "gsqg/field.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/params.hpp"
#include "gsqg/vec2.hpp"
#include "gsqg/velocity.hpp"

namespace gsqg {

// beta < 2 alpha: plateau phi_0 with a jump at the boundary plus caps a_n phi_1((x - (0, 2^{-4n}))/a_n),
// composed with Lambda_beta^{-1}.
struct IllposedSpecLow {
    IllposedSpecLow(Params params, double a, int n_max);

    Params params;
    double a;
    int n_max;

    double a_n(int n) const;  // a 2^{-8n/(1-2a)^2}
    double b_n(int n) const;  // 2^{-2(2a+b)n/(1-b)} a_n
    Vec2 cap_center(int n) const { return {0.0, std::ldexp(1.0, -4 * n)}; }  // stretched coordinates
    Vec2 probe(int n) const;        // y_n  = (0, lambda(2^{-4n}))
    Vec2 probe_prime(int n) const;  // y_n' = (a_n, lambda(2^{-4n}) - 2 b_n)

    // theta~_0 (stretched coordinates) and theta_0 = theta~_0 o Lambda^{-1}, upper half-plane.
    double stretched_value(double x1, double x2) const;
    double value(double x1, double x2) const;
};

// beta in (1 - 2 alpha, 1) with beta >= 2 alpha: Lipschitz pyramid on [-3, 0] x [0, 3] plus caps
// (a_n/n) phi_1 centred at (lambda(2^{-4n}), 2^{-4n}) in stretched coordinates, truncated at n0.
struct IllposedSpecHigh {
    IllposedSpecHigh(Params params, double gamma, int n0);

    Params params;
    double gamma;
    int n0;

    double a_n(int n) const { return std::exp2(-gamma * n); }
    Vec2 cap_center(int n) const;  // stretched coordinates
    Vec2 probe() const;            // y  = (lambda(2^{-4 n0}), lambda(2^{-4 n0}))
    Vec2 probe_prime() const;      // y' = (lambda(2^{-4 n0}) + 2 a/n0^2, lambda(2^{-4 n0} - a))

    double stretched_value(double x1, double x2) const;
    double value(double x1, double x2) const;  // phi_0 + phi_inf o Lambda^{-1}
};

// Grid samples (odd in x2 only). Caps narrower than two cells cannot be resolved and are left out;
// their velocity contribution is O(a_n^{2-2a}).
ScalarField build_illposed_low(const IllposedSpecLow& data, double h);
ScalarField build_illposed_high(const IllposedSpecHigh& data, double h);

struct ShearSample {
    double t = 0.0;
    Vec2 z;        // track of the first probe
    Vec2 gap;      // (z' - z) in units of the cap scale
    double quotient = 0.0;  // |theta~ difference| / |Lambda^{-1} z' - Lambda^{-1} z|
};

struct ShearSeries {
    std::string kind;  // "low" | "high"
    int n = 0;
    double scale = 0.0;        // a_n: the gap is linearised and stored in these units
    double delta_theta = 0.0;  // |theta_0(y) - theta_0(y')|
    std::vector<ShearSample> samples;
    double crossing_time = -1.0;  // first time the shrinking gap component changes sign
    double quotient0 = 0.0;
    double quotient_at_crossing = 0.0;
};

struct ShearOptions {
    double T = 0.1;
    double dt = 1e-3;
};

// Pair separation under the frozen t = 0 velocity. The pair distance is far below double-precision
// resolution of the positions, so the gap g = z' - z is evolved by its linearisation
// g' = grad u(z) g along the track z of y_n (or y).
ShearSeries shear_diagnostic(const IllposedSpecLow& data, int n, const KernelParams& kp, const QuadConfig& qc,
                             const ShearOptions& opt);
ShearSeries shear_diagnostic(const IllposedSpecHigh& data, const KernelParams& kp, const QuadConfig& qc,
                             const ShearOptions& opt);

}  // namespace gsqg
