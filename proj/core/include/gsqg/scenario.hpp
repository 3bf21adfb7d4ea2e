#pragma once

#include <string>
#include <vector>

#include "gsqg/field.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/params.hpp"
#include "gsqg/vec2.hpp"
#include "gsqg/velocity.hpp"

namespace gsqg {

// Blow-up setup: theta_0 = 1 on (2e, 2) x (0, 2), 0 off (e, 3) x (0, 3), odd in both variables.
class BlowupScenario {
public:
    BlowupScenario(double epsilon, Params params, double eps_prime = 0.15);

    double epsilon() const { return eps_; }
    double eps_prime() const { return eps_prime_; }
    const Params& params() const { return params_; }
    double alpha() const { return params_.alpha(); }

    // 25 (3e)^{2a}
    double T_eps() const;
    // [(3e)^{2a} - t/25]^{1/(2a)}, clamped to 0 past T_eps
    double X(double t) const;
    // -(50a)^{-1} X_t^{1-2a}
    double dX_dt(double t) const;

    Box omega() const { return Box{eps_, 3.0, 0.0, 3.0}; }
    Box omega_prime() const { return Box{2.0 * eps_, 2.0, 0.0, 2.0}; }

private:
    double eps_;
    double eps_prime_;
    Params params_;
};

// L = {x1 in (X, 1), x2 in (0, x1)}
struct Trapezoid {
    double X = 0.0;
    double right = 1.0;

    bool contains(const Vec2& p) const { return p.x1 > X && p.x1 < right && p.x2 > 0.0 && p.x2 < p.x1; }
    // Euclidean distance to the closed trapezoid (0 inside).
    double distance(const Vec2& p) const;
};

// Lattice [0, lx] x [0, ly] with spacing h; h should divide epsilon so the plateau edges sit on
// grid lines and the bilinear interpolant keeps the sandwich chi_{Omega'} <= theta <= chi_Omega.
GridSpec blowup_grid(double h, double lx = 4.0, double ly = 4.0);

// Continuous datum (cubic C^1 ramps of width w on [2e - w, 2e] and [2, 2 + w]).
double blowup_profile(const BlowupScenario& sc, double smoothing_width, double x1, double x2);

ScalarField build_blowup_datum(const BlowupScenario& sc, double smoothing_width, const GridSpec& grid);

struct ProbeValue {
    Vec2 x;
    Vec2 u;
    double err = 0.0;
    double margin = 0.0;  // I_t: u1 + (45a)^{-1} X^{1-2a}; J_t: u2
};

struct BarrierReport {
    double t = 0.0;
    double X = 0.0;
    double threshold = 0.0;  // (45a)^{-1} X^{1-2a}
    std::vector<ProbeValue> I;
    std::vector<ProbeValue> J;
    double max_margin_I = 0.0;  // should be <= err
    double min_u2_J = 0.0;      // should be >= -err
    bool I_ok = false;
    bool J_ok = false;
    bool ok() const { return I_ok && J_ok; }
};

// Probe I_t = {(X_t, s) | s in [0, X_t]} and J_t = {(s, s) | s in [X_t, e']}.
BarrierReport barrier_check(const ScalarField& field, const BlowupScenario& sc, double t, const KernelParams& kp,
                            const QuadConfig& qc, int probes_per_segment = 64);

struct ContainmentPoint {
    double t = 0.0;
    double X = 0.0;
    double d = 0.0;          // distance from {theta < level} in D+ to L_t
    bool contained = false;  // every lattice node inside L_t has theta >= level
    bool level_set_empty = false;
};

// d(t) for every snapshot; level = 1 - tol_level.
std::vector<ContainmentPoint> containment_monitor(const std::vector<std::pair<double, ScalarField>>& snapshots,
                                                  const BlowupScenario& sc, double level = 0.999);

}  // namespace gsqg
