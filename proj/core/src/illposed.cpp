#include "gsqg/illposed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsqg/errors.hpp"

namespace gsqg {

namespace {

double phi1(double d1, double d2) { return std::max(0.0, 1.0 - std::hypot(d1, d2)); }

struct Mat2 {
    double a11, a12, a21, a22;
    Vec2 operator*(const Vec2& v) const { return {a11 * v.x1 + a12 * v.x2, a21 * v.x1 + a22 * v.x2}; }
};

Mat2 velocity_gradient(const ScalarField& field, const KernelParams& kp, const Vec2& z, QuadConfig qc) {
    qc.fd_step = std::min(qc.fd_step, 0.25 * z.x2);
    const auto g = gradient_diag(field, kp, z, qc);
    return {g.d1u1, g.d2u1, g.d1u2, g.d2u2};
}

double quotient(const StretchMap& map, double ratio, const Vec2& z, const Vec2& gap) {
    // Lambda^{-1}(z') - Lambda^{-1}(z) to first order in the gap
    const double v = lambda_beta_inv_prime(map, z.x2) * gap.x2;
    const double d = std::hypot(gap.x1, v);
    return d > 0.0 ? ratio / d : std::numeric_limits<double>::infinity();
}

// component: 0 -> watch gap.x1, 1 -> watch gap.x2
ShearSeries run_shear(const ScalarField& field, const KernelParams& kp, const QuadConfig& qc, const StretchMap& map,
                      Vec2 z, Vec2 gap, double ratio, int component, const ShearOptions& opt) {
    if (!(opt.dt > 0.0) || !(opt.T >= opt.dt)) throw ValidationError("shear_diagnostic: need dt > 0 and T >= dt");
    ShearSeries s;
    auto watched = [component](const Vec2& g) { return component == 0 ? g.x1 : g.x2; };
    const double sign0 = std::copysign(1.0, watched(gap));
    s.quotient0 = quotient(map, ratio, z, gap);
    s.samples.push_back({0.0, z, gap, s.quotient0});
    const int steps = static_cast<int>(std::ceil(opt.T / opt.dt - 1e-9));
    for (int k = 0; k < steps; ++k) {
        const double t = k * opt.dt;
        // midpoint rule for the track; the gradient is frozen over the step for the gap
        const Vec2 u0 = velocity_at(field, kp, z, qc).u;
        const Vec2 zm = z + u0 * (0.5 * opt.dt);
        const Vec2 um = velocity_at(field, kp, zm, qc).u;
        const Mat2 G = velocity_gradient(field, kp, zm, qc);
        const Vec2 gm = gap + (G * gap) * (0.5 * opt.dt);
        const Vec2 g1 = gap + (G * gm) * opt.dt;
        const Vec2 z1 = z + um * opt.dt;
        if (!(z1.x2 > 0.0)) throw DomainError("shear_diagnostic: track reached the boundary");
        const double t1 = t + opt.dt;
        if (s.crossing_time < 0.0 && std::copysign(1.0, watched(g1)) != sign0) {
            const double w0 = watched(gap), w1 = watched(g1);
            const double f = w0 / (w0 - w1);
            s.crossing_time = t + f * opt.dt;
            const Vec2 gc = gap + (g1 - gap) * f;
            const Vec2 zc = z + (z1 - z) * f;
            s.quotient_at_crossing = quotient(map, ratio, zc, gc);
        }
        z = z1;
        gap = g1;
        s.samples.push_back({t1, z, gap, quotient(map, ratio, z, gap)});
    }
    return s;
}

}  // namespace

IllposedSpecLow::IllposedSpecLow(Params p, double a_, int n_max_) : params(p), a(a_), n_max(n_max_) {
    if (!(p.beta() < 2.0 * p.alpha())) throw ValidationError("illposed-low: need beta < 2 alpha");
    const double b = p.beta();
    const double amax = std::pow(1.0 - b, 1.0 / (1.0 - b));
    if (!(a > 0.0 && a <= amax)) throw ValidationError("illposed-low: need a in (0, (1-beta)^{1/(1-beta)}]");
    if (n_max < 1 || n_max > 12) throw ValidationError("illposed-low: n_max must lie in [1, 12]");
    for (int n = 1; n <= n_max; ++n)
        if (a_n(n) > std::ldexp(1.0, -4 * n - 1)) throw GeometryError("illposed-low: caps overlap (a too large)");
}

double IllposedSpecLow::a_n(int n) const {
    const double d = 1.0 - 2.0 * params.alpha();
    return a * std::exp2(-8.0 * n / (d * d));
}

double IllposedSpecLow::b_n(int n) const {
    const double b = params.beta();
    return std::exp2(-2.0 * (2.0 * params.alpha() + b) * n / (1.0 - b)) * a_n(n);
}

Vec2 IllposedSpecLow::probe(int n) const {
    const StretchMap m(params.beta());
    return {0.0, lambda_beta(m, std::ldexp(1.0, -4 * n))};
}

Vec2 IllposedSpecLow::probe_prime(int n) const {
    const StretchMap m(params.beta());
    return {a_n(n), lambda_beta(m, std::ldexp(1.0, -4 * n)) - 2.0 * b_n(n)};
}

double IllposedSpecLow::stretched_value(double x1, double x2) const {
    if (x2 <= 0.0) return 0.0;
    const double top = 2.0 + 1.0 / (1.0 - params.beta());
    if (x1 <= -3.0 || x1 >= 3.0 || x2 >= top) return 0.0;
    double v = std::min({1.0, x1 + 3.0, 3.0 - x1, x2 + 1.0, top - x2});
    for (int n = 1; n <= n_max; ++n) {
        const double an = a_n(n);
        const Vec2 c = cap_center(n);
        v += an * phi1((x1 - c.x1) / an, (x2 - c.x2) / an);
    }
    return v;
}

double IllposedSpecLow::value(double x1, double x2) const {
    if (x2 <= 0.0) return x2 == 0.0 ? stretched_value(x1, 1e-300) : 0.0;
    return stretched_value(x1, lambda_beta_inv(StretchMap(params.beta()), x2));
}

IllposedSpecHigh::IllposedSpecHigh(Params p, double gamma_, int n0_) : params(p), gamma(gamma_), n0(n0_) {
    const double a = p.alpha(), b = p.beta();
    if (!(b > 1.0 - 2.0 * a && b >= 2.0 * a)) throw ValidationError("illposed-high: need beta > 1-2 alpha, >= 2 alpha");
    if (n0 < 1 || n0 > 12) throw ValidationError("illposed-high: n0 must lie in [1, 12]");
    if (!(gamma >= 5.0)) throw ValidationError("illposed-high: gamma must be >= 5 so that a_n <= 2^{-4n-1}");
}

Vec2 IllposedSpecHigh::cap_center(int n) const {
    const double s = std::ldexp(1.0, -4 * n);
    return {lambda_beta(StretchMap(params.beta()), s), s};
}

Vec2 IllposedSpecHigh::probe() const {
    const double l = lambda_beta(StretchMap(params.beta()), std::ldexp(1.0, -4 * n0));
    return {l, l};
}

Vec2 IllposedSpecHigh::probe_prime() const {
    const StretchMap m(params.beta());
    const double s = std::ldexp(1.0, -4 * n0), an = a_n(n0);
    return {lambda_beta(m, s) + 2.0 * an / (n0 * n0), lambda_beta(m, s - an)};
}

double IllposedSpecHigh::stretched_value(double x1, double x2) const {
    const StretchMap m(params.beta());
    return value(x1, lambda_beta(m, std::max(0.0, x2)));
}

double IllposedSpecHigh::value(double x1, double x2) const {
    if (x2 < 0.0) return 0.0;
    double v = 0.0;
    if (x1 > -3.0 && x1 < 0.0 && x2 < 3.0) v = std::clamp(std::min({x1 + 3.0, -x1, x2, 3.0 - x2}), 0.0, 1.0);
    const double s2 = lambda_beta_inv(StretchMap(params.beta()), x2);
    for (int n = 1; n <= n0; ++n) {
        const double an = a_n(n);
        const Vec2 c = cap_center(n);
        v += an / n * phi1((x1 - c.x1) / an, (s2 - c.x2) / an);
    }
    return v;
}

ScalarField build_illposed_low(const IllposedSpecLow& data, double h) {
    const GridSpec g = GridSpec::covering(-3.0, 0.0, 6.0, 3.0 + h, h);
    // drop caps that the lattice cannot carry
    IllposedSpecLow resolved = data;
    resolved.n_max = 0;
    for (int n = 1; n <= data.n_max; ++n)
        if (data.a_n(n) >= 2.0 * h) resolved.n_max = n;
    auto fn = [&](double x1, double x2) { return resolved.value(x1, x2); };
    return ScalarField::sample(g, Parity{false, true}, Box{-3.0, 3.0, 0.0, 3.0}, fn);
}

ScalarField build_illposed_high(const IllposedSpecHigh& data, double h) {
    const GridSpec g = GridSpec::covering(-3.0, 0.0, 4.0 + h, 3.0 + h, h);
    IllposedSpecHigh resolved = data;
    resolved.n0 = 0;
    for (int n = 1; n <= data.n0; ++n)
        if (data.a_n(n) >= 2.0 * h) resolved.n0 = n;
    return ScalarField::sample(g, Parity{false, true}, Box{-3.0, 1.0, 0.0, 3.0},
                               [&](double x1, double x2) { return resolved.value(x1, x2); });
}

ShearSeries shear_diagnostic(const IllposedSpecLow& data, int n, const KernelParams& kp, const QuadConfig& qc,
                             const ShearOptions& opt) {
    if (n < 1 || n > data.n_max) throw ValidationError("shear_diagnostic: n must lie in [1, n_max]");
    const ScalarField field = build_illposed_low(data, 0.02);
    const StretchMap map(data.params.beta());
    const double an = data.a_n(n);
    const Vec2 gap{1.0, -2.0 * data.b_n(n) / an};
    ShearSeries s = run_shear(field, kp, qc, map, data.probe(n), gap, 1.0, 0, opt);
    s.kind = "low";
    s.n = n;
    s.scale = an;
    s.delta_theta = an;
    return s;
}

ShearSeries shear_diagnostic(const IllposedSpecHigh& data, const KernelParams& kp, const QuadConfig& qc,
                             const ShearOptions& opt) {
    const ScalarField field = build_illposed_high(data, 0.02);
    const StretchMap map(data.params.beta());
    const int n = data.n0;
    const double an = data.a_n(n);
    const double s0 = std::ldexp(1.0, -4 * n);
    const Vec2 gap{2.0 / (n * n), -lambda_beta_prime(map, s0)};
    ShearSeries s = run_shear(field, kp, qc, map, data.probe(), gap, 1.0 / n, 1, opt);
    s.kind = "high";
    s.n = n;
    s.scale = an;
    s.delta_theta = an / n;
    return s;
}

}  // namespace gsqg
