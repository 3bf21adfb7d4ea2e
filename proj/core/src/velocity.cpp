#include "gsqg/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsqg/parallel.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg {

void QuadConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ValidationError("quadrature tolerances must be positive");
    if (!(split_radius > 0.0)) throw ValidationError("split_radius must be positive");
    if (!(fd_step > 0.0)) throw ValidationError("fd_step must be positive");
    if (max_subdivisions < 1) throw ValidationError("max_subdivisions must be positive");
}

namespace {

using quad::Corner;
using quad::Piece;
using quad::Rect;

// Cover box with pieces; if x lies in the closed box it becomes a corner of up to four
// singular squares of side <= sr.
std::vector<Piece> pieces_around(const Box& box, const Vec2& x, double sr) {
    std::vector<Piece> out;
    const double tol = 1e-14 * std::max({1.0, std::abs(box.a1), std::abs(box.b1), std::abs(box.a2), std::abs(box.b2)});
    const bool inside = x.x1 >= box.a1 - tol && x.x1 <= box.b1 + tol && x.x2 >= box.a2 - tol && x.x2 <= box.b2 + tol;
    if (!inside) {
        out.push_back(Piece{Rect{box.a1, box.b1, box.a2, box.b2}, Corner::none});
        return out;
    }
    const double c1 = std::clamp(x.x1, box.a1, box.b1);
    const double c2 = std::clamp(x.x2, box.a2, box.b2);
    auto ordered = [](double p, double q) { return p < q ? std::pair{p, q} : std::pair{q, p}; };
    for (int su : {-1, 1})
        for (int sv : {-1, 1}) {
            const double eu = su > 0 ? box.b1 - c1 : c1 - box.a1;
            const double ev = sv > 0 ? box.b2 - c2 : c2 - box.a2;
            if (eu <= 0.0 || ev <= 0.0) continue;
            const double lu = std::min(sr, eu);
            const double lv = std::min(sr, ev);
            auto [u0, u1] = ordered(c1, c1 + su * lu);
            auto [v0, v1] = ordered(c2, c2 + sv * lv);
            Corner corner = su > 0 ? (sv > 0 ? Corner::u0v0 : Corner::u0v1) : (sv > 0 ? Corner::u1v0 : Corner::u1v1);
            out.push_back(Piece{Rect{u0, u1, v0, v1}, corner});
            if (eu > lu) {
                auto [a, b] = ordered(c1 + su * lu, c1 + su * eu);
                auto [c, d] = ordered(c2, c2 + sv * ev);
                out.push_back(Piece{Rect{a, b, c, d}, Corner::none});
            }
            if (ev > lv) {
                auto [a, b] = ordered(c2 + sv * lv, c2 + sv * ev);
                out.push_back(Piece{Rect{u0, u1, a, b}, Corner::none});
            }
        }
    return out;
}

quad::CubatureOptions options_for(const ScalarField& field, const KernelParams& kp, const QuadConfig& qc) {
    quad::CubatureOptions o;
    o.abs_tol = qc.abs_tol;
    o.rel_tol = qc.rel_tol;
    o.max_subdivisions = qc.max_subdivisions;
    o.power = 1.0 / (1.0 - 2.0 * kp.alpha);
    o.lines_u = quad::Lines{field.grid().x0, field.grid().h};
    o.lines_v = quad::Lines{field.grid().y0, field.grid().h};
    return o;
}

// Integrand with both call forms used by the cubature: plain (y1, y2) and Duffy nodes carrying the
// exact offset d = y - c from the singular corner c.
template <class K>
struct KernelIntegrand {
    const ScalarField& field;
    Vec2 x;
    Vec2 xc;  // x - c
    bool reflected;  // theta(y) with parity (all-plane copies) or the stored quadrant only
    K kern;          // kern(dm, dp) with dm = x - y, dp = x + y

    double theta(double y1, double y2) const {
        return reflected ? field.value(y1, y2) : field.value_unreflected(y1, y2);
    }
    Vec2 operator()(double y1, double y2) const {
        const double th = theta(y1, y2);
        if (th == 0.0) return {};
        return kern(Vec2{x.x1 - y1, x.x2 - y2}, Vec2{x.x1 + y1, x.x2 + y2}) * th;
    }
    Vec2 operator()(double y1, double y2, double d1, double d2) const {
        const double th = theta(y1, y2);
        if (th == 0.0) return {};
        return kern(Vec2{xc.x1 - d1, xc.x2 - d2}, Vec2{x.x1 + y1, x.x2 + y2}) * th;
    }
};

template <class K>
KernelIntegrand<K> make_integrand(const ScalarField& field, const Box& box, const Vec2& x, bool reflected, K kern) {
    const Vec2 c{std::clamp(x.x1, box.a1, box.b1), std::clamp(x.x2, box.a2, box.b2)};
    return KernelIntegrand<K>{field, x, x - c, reflected, kern};
}

VelocityResult finish(const quad::CubatureResult<Vec2>& r, const Vec2& x) {
    VelocityResult out{r.value, r.err, r.subdivisions};
    if (!r.converged)
        throw ConvergenceError("velocity quadrature did not converge at (" + std::to_string(x.x1) + ", " +
                                   std::to_string(x.x2) + ")",
                               out);
    return out;
}

}  // namespace

VelocityResult velocity_at(const ScalarField& field, const KernelParams& kp, const Vec2& x, const QuadConfig& qc,
                           ImageMode mode) {
    qc.validate();
    const Box support = field.effective_support();
    if (support.empty()) return {};
    const auto opt = options_for(field, kp, qc);
    const bool o1 = field.parity().odd_x1;
    const bool o2 = field.parity().odd_x2;

    if (mode == ImageMode::combined || (!o1 && !o2)) {
        auto integrand = make_integrand(field, support, x, false, [&](const Vec2& dm, const Vec2& dp) {
            return image_kernel_diff(kp, dm, dp, o1, o2);
        });
        return finish(quad::cubature<Vec2>(integrand, pieces_around(support, x, qc.split_radius), opt), x);
    }

    auto free = [&](const Vec2& dm, const Vec2&) { return free_kernel(kp, dm); };
    std::vector<Box> copies{support};
    if (o1) copies.push_back(Box{-support.b1, -support.a1, support.a2, support.b2});
    if (o2) copies.push_back(Box{support.a1, support.b1, -support.b2, -support.a2});
    if (o1 && o2) copies.push_back(Box{-support.b1, -support.a1, -support.b2, -support.a2});
    VelocityResult total;
    for (const Box& b : copies) {
        // each copy gets its own share of the error budget
        auto o = opt;
        o.abs_tol = opt.abs_tol / static_cast<double>(copies.size());
        const auto integrand = make_integrand(field, b, x, true, free);
        const auto r = finish(quad::cubature<Vec2>(integrand, pieces_around(b, x, qc.split_radius), o), x);
        total.u += r.u;
        total.err_est += r.err_est;
        total.subdivisions += r.subdivisions;
    }
    return total;
}

VelocityResult velocity_quarter_at(const ScalarField& field, const KernelParams& kp, const Vec2& x,
                                   const QuadConfig& qc) {
    qc.validate();
    if (!field.parity().odd_x1 || !field.parity().odd_x2)
        throw ValidationError("velocity_quarter_at: field must be odd in both variables");
    const Box support = field.effective_support();
    if (support.empty()) return {};
    auto integrand = make_integrand(field, support, x, false,
                                    [&](const Vec2& dm, const Vec2& dp) { return quarter_kernel_diff(kp, dm, dp); });
    return finish(quad::cubature<Vec2>(integrand, pieces_around(support, x, qc.split_radius),
                                       options_for(field, kp, qc)),
                  x);
}

std::vector<VelocityResult> velocity_batch(const ScalarField& field, const KernelParams& kp,
                                           const std::vector<Vec2>& xs, const QuadConfig& qc, ImageMode mode) {
    std::vector<VelocityResult> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t k) { out[k] = velocity_at(field, kp, xs[k], qc, mode); });
    return out;
}

VelocityResult stretched_velocity_at(const ScalarField& field, const KernelParams& kp, const Vec2& x,
                                     const QuadConfig& qc, const StretchMap& map) {
    if (!(x.x2 > 0.0)) throw DomainError("stretched_velocity_at: x2 must be positive");
    const double y2 = lambda_beta(map, x.x2);
    VelocityResult r = velocity_at(field, kp, {x.x1, y2}, qc);
    const double k = kappa_beta(map.beta, y2);
    r.u.x2 /= k;
    r.err_est = std::max(r.err_est, r.err_est / k);
    return r;
}

GradientDiagnostic gradient_diag(const ScalarField& field, const KernelParams& kp, const Vec2& x,
                                 const QuadConfig& qc) {
    qc.validate();
    const double h = qc.fd_step;
    if (!(x.x2 > h)) throw DomainError("gradient_diag: need x2 > fd_step");
    double qerr = 0.0;
    auto U = [&](double dx1, double dx2) {
        const auto r = velocity_at(field, kp, {x.x1 + dx1, x.x2 + dx2}, qc);
        qerr = std::max(qerr, r.err_est);
        return r.u;
    };
    GradientDiagnostic g;
    g.x = x;
    g.one_sided = x.x2 < 2.0 * h;

    const Vec2 e1p = U(h, 0.0), e1m = U(-h, 0.0), e1p2 = U(2 * h, 0.0), e1m2 = U(-2 * h, 0.0);
    const Vec2 d1 = (e1p - e1m) * (0.5 / h);
    const Vec2 d1_coarse = (e1p2 - e1m2) * (0.25 / h);

    Vec2 d2, d2_coarse;
    double stencil_weight;  // sum of |coefficients| / step of the x2 stencil
    if (!g.one_sided) {
        const Vec2 p = U(0.0, h), m = U(0.0, -h), p2 = U(0.0, 2 * h), m2 = U(0.0, -2 * h);
        d2 = (p - m) * (0.5 / h);
        d2_coarse = (p2 - m2) * (0.25 / h);
        stencil_weight = 1.0 / h;
    } else {
        const Vec2 c = U(0.0, 0.0), p = U(0.0, h), p2 = U(0.0, 2 * h), p4 = U(0.0, 4 * h);
        d2 = (-3.0 * c + 4.0 * p - p2) * (0.5 / h);
        d2_coarse = (-3.0 * c + 4.0 * p2 - p4) * (0.25 / h);
        stencil_weight = 4.0 / h;
    }
    g.d1u1 = d1.x1;
    g.d1u2 = d1.x2;
    g.d2u1 = d2.x1;
    g.d2u2 = d2.x2;
    g.fd_err = std::max({std::abs(d1.x1 - d1_coarse.x1), std::abs(d1.x2 - d1_coarse.x2),
                         std::abs(d2.x1 - d2_coarse.x1), std::abs(d2.x2 - d2_coarse.x2)});
    g.quad_err = qerr * std::max(1.0 / h, stencil_weight);
    const double a = kp.alpha;
    g.w_d1u2 = std::max(std::pow(x.x2, 2.0 * a - 1.0), 1.0);
    g.w_d2u1 = std::min(std::pow(x.x2, 2.0 * a), 1.0);
    return g;
}

Divergence divergence_at(const ScalarField& field, const KernelParams& kp, const Vec2& x, const QuadConfig& qc) {
    const auto g = gradient_diag(field, kp, x, qc);
    return {g.divergence(), 2.0 * (g.fd_err + g.quad_err)};
}

double holder_seminorm_sample(const ScalarField& field, const KernelParams& kp, const QuadConfig& qc,
                              const std::vector<std::pair<Vec2, Vec2>>& pairs) {
    std::vector<double> ratios(pairs.size(), 0.0);
    const double expo = 1.0 - 2.0 * kp.alpha;
    parallel_for(pairs.size(), [&](std::size_t k) {
        const auto& [p, q] = pairs[k];
        const double d = norm(p - q);
        if (!(d > 0.0)) throw ValidationError("holder_seminorm_sample: coincident pair");
        const Vec2 du = velocity_at(field, kp, p, qc).u - velocity_at(field, kp, q, qc).u;
        ratios[k] = norm(du) / std::pow(d, expo);
    });
    double m = 0.0;
    for (double r : ratios) m = std::max(m, r);
    return m;
}

}  // namespace gsqg
