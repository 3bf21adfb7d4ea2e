#include "gsqg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsqg/errors.hpp"
#include "gsqg/parallel.hpp"

namespace gsqg {

BlowupScenario::BlowupScenario(double epsilon, Params params, double eps_prime)
    : eps_(epsilon), eps_prime_(eps_prime), params_(params) {
    // the t = 0 sign scans use e up to 0.1; the construction itself only needs 2e < 2
    if (!(epsilon > 0.0 && epsilon <= 0.1)) throw ValidationError("blowup: epsilon must lie in (0, 0.1]");
    if (!(eps_prime > 0.0 && eps_prime < 1.0)) throw ValidationError("blowup: eps_prime must lie in (0, 1)");
}

double BlowupScenario::T_eps() const { return 25.0 * std::pow(3.0 * eps_, 2.0 * alpha()); }

double BlowupScenario::X(double t) const {
    const double a2 = 2.0 * alpha();
    const double base = std::pow(3.0 * eps_, a2) - t / 25.0;
    return base <= 0.0 ? 0.0 : std::pow(base, 1.0 / a2);
}

double BlowupScenario::dX_dt(double t) const {
    return -std::pow(X(t), 1.0 - 2.0 * alpha()) / (50.0 * alpha());
}

double Trapezoid::distance(const Vec2& p) const {
    if (contains(p)) return 0.0;
    // vertices (X,0), (right,0), (right,right), (X,X)
    const Vec2 v[4] = {{X, 0.0}, {right, 0.0}, {right, right}, {X, X}};
    // on the closure counts as distance 0
    if (p.x1 >= X && p.x1 <= right && p.x2 >= 0.0 && p.x2 <= p.x1) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
        const Vec2 a = v[k], b = v[(k + 1) % 4];
        const Vec2 ab = b - a;
        const double len2 = dot(ab, ab);
        const double s = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, norm(p - (a + ab * s)));
    }
    return best;
}

GridSpec blowup_grid(double h, double lx, double ly) { return GridSpec::covering(0.0, 0.0, lx, ly, h); }

namespace {

// C^1 cubic ramp: 0 at t <= 0, 1 at t >= 1
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

}  // namespace

double blowup_profile(const BlowupScenario& sc, double w, double x1, double x2) {
    const double e = sc.epsilon();
    if (x1 <= e || x1 >= 3.0 || x2 < 0.0 || x2 >= 3.0) return 0.0;
    const double r1 = smooth_step((x1 - (2.0 * e - w)) / w) * smooth_step((2.0 + w - x1) / w);
    const double r2 = smooth_step((2.0 + w - x2) / w);
    return r1 * r2;
}

ScalarField build_blowup_datum(const BlowupScenario& sc, double smoothing_width, const GridSpec& grid) {
    if (!(smoothing_width > 0.0) || smoothing_width >= sc.epsilon())
        throw GeometryError("blowup datum: smoothing width must lie in (0, epsilon)");
    if (grid.x0 != 0.0 || grid.y0 != 0.0) throw GeometryError("blowup datum: lattice must start at the origin");
    if (grid.x1_max() <= 3.0 || grid.x2_max() <= 3.0)
        throw GeometryError("blowup datum: lattice must extend beyond Omega = (e, 3) x (0, 3)");
    return ScalarField::sample(grid, Parity{true, true}, sc.omega(),
                               [&](double x1, double x2) { return blowup_profile(sc, smoothing_width, x1, x2); });
}

BarrierReport barrier_check(const ScalarField& field, const BlowupScenario& sc, double t, const KernelParams& kp,
                            const QuadConfig& qc, int probes_per_segment) {
    if (!(t >= 0.0 && t < sc.T_eps())) throw DomainError("barrier_check: t must lie in [0, T_eps)");
    if (probes_per_segment < 2) throw ValidationError("barrier_check: need at least two probes per segment");
    BarrierReport rep;
    rep.t = t;
    rep.X = sc.X(t);
    const double a = sc.alpha();
    rep.threshold = std::pow(rep.X, 1.0 - 2.0 * a) / (45.0 * a);

    const int n = probes_per_segment;
    std::vector<Vec2> pts;
    for (int k = 0; k < n; ++k) pts.push_back({rep.X, rep.X * k / (n - 1)});
    const double top = std::max(sc.eps_prime(), rep.X);
    for (int k = 0; k < n; ++k) {
        const double s = rep.X + (top - rep.X) * k / (n - 1);
        pts.push_back({s, s});
    }
    const auto res = velocity_batch(field, kp, pts, qc);

    rep.max_margin_I = -std::numeric_limits<double>::infinity();
    rep.min_u2_J = std::numeric_limits<double>::infinity();
    rep.I_ok = rep.J_ok = true;
    for (int k = 0; k < 2 * n; ++k) {
        ProbeValue pv{pts[k], res[k].u, res[k].err_est, 0.0};
        if (k < n) {
            pv.margin = pv.u.x1 + rep.threshold;
            rep.max_margin_I = std::max(rep.max_margin_I, pv.margin);
            if (pv.margin > pv.err) rep.I_ok = false;
            rep.I.push_back(pv);
        } else {
            pv.margin = pv.u.x2;
            rep.min_u2_J = std::min(rep.min_u2_J, pv.margin);
            if (pv.margin < -pv.err) rep.J_ok = false;
            rep.J.push_back(pv);
        }
    }
    return rep;
}

std::vector<ContainmentPoint> containment_monitor(const std::vector<std::pair<double, ScalarField>>& snapshots,
                                                  const BlowupScenario& sc, double level) {
    std::vector<ContainmentPoint> out(snapshots.size());
    parallel_for(snapshots.size(), [&](std::size_t k) {
        const auto& [t, f] = snapshots[k];
        const GridSpec& g = f.grid();
        ContainmentPoint cp;
        cp.t = t;
        cp.X = sc.X(t);
        const Trapezoid L{cp.X, 1.0};
        double d = std::numeric_limits<double>::infinity();
        bool any_level = false;
        cp.contained = true;
        // nodes on the axes are not in the open quadrant
        for (std::size_t j = 1; j < g.ny; ++j)
            for (std::size_t i = 1; i < g.nx; ++i) {
                const Vec2 p{g.x1_at(i), g.x2_at(j)};
                const double v = f.at(i, j);
                if (v >= level) {
                    any_level = true;
                    continue;
                }
                const double dist = L.distance(p);
                d = std::min(d, dist);
                if (L.contains(p)) cp.contained = false;
            }
        // the lattice edge bounds the complement from outside as well
        cp.d = d;
        cp.level_set_empty = !any_level;
        out[k] = cp;
    });
    return out;
}

}  // namespace gsqg
