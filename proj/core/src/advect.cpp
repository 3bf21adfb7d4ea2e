#include "gsqg/advect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

#include "gsqg/errors.hpp"
#include "gsqg/grid_velocity.hpp"
#include "gsqg/parallel.hpp"

namespace gsqg {

void ParticleSet::add(std::string label, const Vec2& x, double theta) {
    labels.push_back(std::move(label));
    initial.push_back(x);
    position.push_back(x);
    value.push_back(theta);
    exited.push_back(0);
}

namespace {

using VelocityFn = std::function<Vec2(const Vec2&)>;

Vec2 rk4(const VelocityFn& u, const Vec2& x, double dt) {
    const Vec2 k1 = u(x);
    const Vec2 k2 = u(x + k1 * (0.5 * dt));
    const Vec2 k3 = u(x + k2 * (0.5 * dt));
    const Vec2 k4 = u(x + k3 * dt);
    return x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

bool outside(const GridSpec& g, Parity par, const Vec2& x) {
    const double lo1 = par.odd_x1 ? -g.x1_max() : g.x0;
    const double lo2 = par.odd_x2 ? -g.x2_max() : g.y0;
    return x.x1 < lo1 || x.x1 > g.x1_max() || x.x2 < lo2 || x.x2 > g.x2_max();
}

// Starting in the open quadrant, a trajectory never crosses an axis: clamp round-off crossings.
Vec2 keep_side(const Vec2& from, Vec2 to) {
    if (from.x1 >= 0.0 && to.x1 < 0.0) to.x1 = 0.0;
    if (from.x2 >= 0.0 && to.x2 < 0.0) to.x2 = 0.0;
    return to;
}

void move_particles(ParticleSet& ps, const VelocityFn& u, const GridSpec& g, Parity par, double dt, double t_end,
                    TrajectoryRecord& rec) {
    parallel_for(ps.size(), [&](std::size_t k) {
        if (ps.exited[k]) return;
        const Vec2 x = ps.position[k];
        ps.position[k] = keep_side(x, rk4(u, x, dt));
    });
    for (std::size_t k = 0; k < ps.size(); ++k)
        if (!ps.exited[k] && outside(g, par, ps.position[k])) {
            ps.exited[k] = 1;
            rec.exits.emplace_back(k, t_end);
        }
}

StepStats stats_of(double t, const ScalarField& f, const std::vector<Vec2>* u) {
    StepStats s;
    s.t = t;
    s.sup = f.sup_abs();
    s.mass = f.l1_mass();
    if (u)
        for (const Vec2& v : *u) s.max_speed = std::max(s.max_speed, norm(v));
    return s;
}

}  // namespace

TrajectoryRecord advect(const ScalarField& field0, const KernelParams& kp, const QuadConfig& qc,
                        ParticleSet& particles, const AdvectOptions& opt) {
    if (!(opt.dt > 0.0)) throw ValidationError("advect: dt must be positive");
    if (!(opt.T >= opt.dt)) throw ValidationError("advect: T must be >= dt");
    qc.validate();

    const GridSpec& g = field0.grid();
    const Parity par = field0.parity();
    const int steps = static_cast<int>(std::ceil(opt.T / opt.dt - 1e-9));

    TrajectoryRecord rec;
    rec.times.push_back(0.0);
    rec.positions.push_back(particles.position);
    rec.snapshots.emplace_back(0.0, field0);

    for (std::size_t k = 0; k < particles.size(); ++k)
        if (outside(g, par, particles.position[k])) {
            particles.exited[k] = 1;
            rec.exits.emplace_back(k, 0.0);
        }

    if (opt.mode == FieldUpdate::frozen) {
        std::unique_ptr<GridVelocity> gv;
        std::vector<Vec2> nodes;
        VelocityFn u;
        if (opt.frozen_source == FrozenSource::grid) {
            gv = std::make_unique<GridVelocity>(g, par, kp);
            nodes = gv->compute(field0);
            u = [&](const Vec2& x) { return interpolate_velocity(g, par, nodes, x); };
            rec.stats.push_back(stats_of(0.0, field0, &nodes));
        } else {
            u = [&](const Vec2& x) { return velocity_at(field0, kp, x, qc).u; };
            rec.stats.push_back(stats_of(0.0, field0, nullptr));
        }
        double t = 0.0;
        for (int s = 0; s < steps; ++s) {
            const double dt = std::min(opt.dt, opt.T - t);
            move_particles(particles, u, g, par, dt, t + dt, rec);
            t += dt;
            rec.times.push_back(t);
            rec.positions.push_back(particles.position);
        }
        rec.final_field = field0;
        return rec;
    }

    GridVelocity gv(g, par, kp);
    ScalarField theta = field0;
    ScalarField next = field0;
    rec.stats.push_back(stats_of(0.0, theta, nullptr));
    double t = 0.0;
    for (int s = 0; s < steps; ++s) {
        const double dt = std::min(opt.dt, opt.T - t);
        const std::vector<Vec2> nodes = gv.compute(theta);
        double vmax = 0.0;
        for (const Vec2& v : nodes) vmax = std::max(vmax, magnitude(v));
        rec.stats.back().max_speed = vmax;
        if (vmax * dt > g.h) {
            ++rec.cfl_violations;
            if (rec.cfl_violations == 1)
                rec.warnings.push_back("CFL: max|u| dt = " + std::to_string(vmax * dt) + " exceeds h = " +
                                       std::to_string(g.h) + " at t = " + std::to_string(t));
        }
        const VelocityFn u = [&](const Vec2& x) { return interpolate_velocity(g, par, nodes, x); };
        move_particles(particles, u, g, par, dt, t + dt, rec);

        // semi-Lagrangian update, midpoint backtrace
        parallel_for(g.ny, [&](std::size_t j) {
            for (std::size_t i = 0; i < g.nx; ++i) {
                const Vec2 x{g.x1_at(i), g.x2_at(j)};
                const Vec2 u0 = nodes[j * g.nx + i];
                const Vec2 xm = keep_side(x, x - u0 * (0.5 * dt));
                const Vec2 xd = keep_side(x, x - u(xm) * dt);
                next.at(i, j) = theta.value(xd);
            }
        });
        // lattice edges that are not parity axes must stay empty
        bool lost = false;
        auto clear = [&](std::size_t i, std::size_t j) {
            if (std::abs(next.at(i, j)) > 1e-12) lost = true;
            next.at(i, j) = 0.0;
        };
        for (std::size_t i = 0; i < g.nx; ++i) {
            clear(i, g.ny - 1);
            if (!par.odd_x2) clear(i, 0);
        }
        for (std::size_t j = 0; j < g.ny; ++j) {
            clear(g.nx - 1, j);
            if (!par.odd_x1) clear(0, j);
        }
        if (lost) ++rec.edge_losses;
        std::swap(theta, next);
        t += dt;

        rec.times.push_back(t);
        rec.positions.push_back(particles.position);
        rec.stats.push_back(stats_of(t, theta, nullptr));
        const bool last = s + 1 == steps;
        if (last || (opt.snapshot_every > 0 && (s + 1) % opt.snapshot_every == 0)) rec.snapshots.emplace_back(t, theta);
    }
    if (rec.edge_losses > 0)
        rec.warnings.push_back("mass reached the lattice edge in " + std::to_string(rec.edge_losses) + " steps");
    rec.final_field = theta;
    return rec;
}

}  // namespace gsqg
