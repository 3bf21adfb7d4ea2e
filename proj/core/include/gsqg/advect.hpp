#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gsqg/field.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/vec2.hpp"
#include "gsqg/velocity.hpp"

namespace gsqg {

struct ParticleSet {
    std::vector<std::string> labels;
    std::vector<Vec2> initial;
    std::vector<Vec2> position;
    std::vector<double> value;  // carried theta
    std::vector<char> exited;

    void add(std::string label, const Vec2& x, double theta);
    std::size_t size() const { return position.size(); }
};

enum class FieldUpdate { frozen, recomputed };
// Velocity used by frozen-mode particles: adaptive quadrature at every stage, or the FFT node
// velocities interpolated bilinearly.
enum class FrozenSource { quadrature, grid };

struct AdvectOptions {
    double T = 0.0;
    double dt = 0.0;
    FieldUpdate mode = FieldUpdate::frozen;
    FrozenSource frozen_source = FrozenSource::grid;
    int snapshot_every = 0;  // steps between stored fields (recomputed mode; 0 = start and end only)
};

struct StepStats {
    double t = 0.0;
    double sup = 0.0;
    double mass = 0.0;
    double max_speed = 0.0;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<std::vector<Vec2>> positions;  // [time][particle]
    std::vector<std::pair<double, ScalarField>> snapshots;
    std::vector<StepStats> stats;
    std::vector<std::string> warnings;
    std::vector<std::pair<std::size_t, double>> exits;  // particle index, time
    std::size_t cfl_violations = 0;
    std::size_t edge_losses = 0;  // steps where mass reached a non-axis lattice edge
    ScalarField final_field;
};

// Transport theta_0 and the particles to time T.
//  frozen:      particles follow the t = 0 velocity with RK4; theta is not evolved.
//  recomputed:  each step computes node velocities from the current field, moves particles with
//               RK4 in that velocity and updates theta semi-Lagrangian (midpoint backtrace,
//               bilinear interpolation with the parity of theta).
TrajectoryRecord advect(const ScalarField& field0, const KernelParams& kp, const QuadConfig& qc,
                        ParticleSet& particles, const AdvectOptions& opt);

}  // namespace gsqg
