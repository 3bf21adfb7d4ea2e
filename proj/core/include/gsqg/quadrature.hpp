#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "gsqg/vec2.hpp"

namespace gsqg::quad {

struct Result1D {
    double value = 0.0;
    double err = 0.0;
};

// Adaptive Gauss-Kronrod (15 point) on [a, b]; b may be +infinity.
Result1D integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12,
                   double rel_tol = 1e-13);

// Parameter rectangle [u0, u1] x [v0, v1].
struct Rect {
    double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;
    double du() const { return u1 - u0; }
    double dv() const { return v1 - v0; }
};

// Corner carrying an integrable r^{-1-2a} singularity (or none).
enum class Corner : std::uint8_t { none, u0v0, u1v0, u0v1, u1v1 };

struct Piece {
    Rect rect;
    Corner singular = Corner::none;
};

// Preferred split lines x = origin + k * step (cell faces of a bilinear field).
struct Lines {
    double origin = 0.0;
    double step = 0.0;  // 0 disables
};

struct CubatureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 20000;
    // Radial substitution r ~ s^p at singular corners; p = 1/(1-2 alpha) makes r^{-1-2a} r dr smooth.
    double power = 1.0;
    Lines lines_u;
    Lines lines_v;
};

template <class V>
struct CubatureResult {
    V value{};
    double err = 0.0;
    int subdivisions = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1].
struct Rule {
    int n;
    std::vector<double> x;
    std::vector<double> w;
};

// 4 and 7 points for regular pieces; 15 and 24 for the Duffy triangles. Their angular factor is
// only analytic, and since the corner integral shrinks like L^{1-2a}, any fixed relative error
// there decays too slowly under bisection once alpha approaches 1/2.
const Rule& rule_lo();
const Rule& rule_hi();
const Rule& rule_corner_lo();
const Rule& rule_corner_hi();

template <class V, class F>
V tensor_rule(F& f, const Rect& r, const Rule& q) {
    const double cu = 0.5 * (r.u0 + r.u1), hu = 0.5 * r.du();
    const double cv = 0.5 * (r.v0 + r.v1), hv = 0.5 * r.dv();
    V acc{};
    for (int j = 0; j < q.n; ++j) {
        const double v = cv + hv * q.x[j];
        V row{};
        for (int i = 0; i < q.n; ++i) row += q.w[i] * f(cu + hu * q.x[i], v);
        acc += q.w[j] * row;
    }
    return acc * (hu * hv);
}

// Triangle (c, p, q) with the singular vertex c: y = c + s^pw (p + t (q - p) - c), s, t in [0, 1].
template <class V, class F>
V duffy_rule(F& f, double cu, double cv, double pu, double pv, double qu, double qv, double pw, const Rule& q) {
    const double det = std::abs((pu - cu) * (qv - pv) - (pv - cv) * (qu - pu));
    V acc{};
    for (int j = 0; j < q.n; ++j) {
        const double t = 0.5 * (1.0 + q.x[j]);
        const double eu = pu + t * (qu - pu) - cu;
        const double ev = pv + t * (qv - pv) - cv;
        V row{};
        for (int i = 0; i < q.n; ++i) {
            const double s = 0.5 * (1.0 + q.x[i]);
            const double sp = std::pow(s, pw);
            const double jac = pw * sp * sp / s;  // p s^{2p-1}
            const double du = sp * eu, dv = sp * ev;
            // Near the corner cu + du loses the offset to rounding; integrands that can take it
            // receive it exactly.
            if constexpr (std::is_invocable_v<F&, double, double, double, double>)
                row += (q.w[i] * jac) * f(cu + du, cv + dv, du, dv);
            else
                row += (q.w[i] * jac) * f(cu + du, cv + dv);
        }
        acc += q.w[j] * row;
    }
    return acc * (0.25 * det);
}

template <class V, class F>
V corner_rule(F& f, const Piece& pc, double pw, const Rule& q) {
    const Rect& r = pc.rect;
    double cu = r.u0, cv = r.v0, ou = r.u1, ov = r.v1;
    switch (pc.singular) {
        case Corner::u1v0: cu = r.u1; ou = r.u0; break;
        case Corner::u0v1: cv = r.v1; ov = r.v0; break;
        case Corner::u1v1: cu = r.u1; ou = r.u0; cv = r.v1; ov = r.v0; break;
        default: break;
    }
    // far vertex (ou, ov); adjacent vertices (ou, cv) and (cu, ov)
    return duffy_rule<V>(f, cu, cv, ou, cv, ou, ov, pw, q) + duffy_rule<V>(f, cu, cv, ou, ov, cu, ov, pw, q);
}

inline double split_point(double a, double b, const Lines& lines) {
    const double mid = 0.5 * (a + b);
    if (lines.step > 0.0) {
        const double k = std::round((mid - lines.origin) / lines.step);
        const double eps = 1e-9 * lines.step;
        double best = std::numeric_limits<double>::quiet_NaN();
        for (double dk : {0.0, -1.0, 1.0}) {
            const double c = lines.origin + (k + dk) * lines.step;
            if (c > a + eps && c < b - eps && (std::isnan(best) || std::abs(c - mid) < std::abs(best - mid))) best = c;
        }
        if (!std::isnan(best)) return best;
    }
    return mid;
}

struct Node {
    Piece piece;
    double err;
    std::size_t id;
};

}  // namespace detail

// Globally adaptive cubature of f(u, v) over a union of pieces. If f also accepts (u, v, du, dv),
// Duffy nodes are passed with their exact offset (du, dv) from the singular corner. Regular pieces use tensor
// Gauss-Legendre (7 vs 4 points per axis for the error estimate); pieces flagged with a singular
// corner use a Duffy split with the radial power substitution. The worst piece is bisected,
// preferring the configured split lines, until the error budget is met.
template <class V, class F>
CubatureResult<V> cubature(F&& f, const std::vector<Piece>& pieces, const CubatureOptions& opt) {
    using detail::Node;
    const auto& lo = detail::rule_lo();
    const auto& hi = detail::rule_hi();

    std::vector<V> values;
    std::vector<double> errs;
    std::vector<char> alive;
    auto cmp = [](const Node& a, const Node& b) { return a.err < b.err || (a.err == b.err && a.id > b.id); };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);

    auto evaluate = [&](const Piece& pc) {
        V a, b;
        if (pc.singular == Corner::none) {
            a = detail::tensor_rule<V>(f, pc.rect, hi);
            b = detail::tensor_rule<V>(f, pc.rect, lo);
        } else {
            a = detail::corner_rule<V>(f, pc, opt.power, detail::rule_corner_hi());
            b = detail::corner_rule<V>(f, pc, opt.power, detail::rule_corner_lo());
        }
        const double e = magnitude(a - b);
        values.push_back(a);
        errs.push_back(e);
        alive.push_back(1);
        heap.push(Node{pc, e, values.size() - 1});
    };

    for (const auto& pc : pieces)
        if (pc.rect.du() > 0.0 && pc.rect.dv() > 0.0) evaluate(pc);

    auto totals = [&]() {
        V s{};
        double e = 0.0;
        for (std::size_t k = 0; k < values.size(); ++k)
            if (alive[k]) {
                s += values[k];
                e += errs[k];
            }
        return std::pair<V, double>{s, e};
    };

    CubatureResult<V> out;
    auto [sum, err] = totals();
    int since_refresh = 0;
    while (!heap.empty()) {
        const double tol = std::max(opt.abs_tol, opt.rel_tol * magnitude(sum));
        if (err <= tol) break;
        if (out.subdivisions >= opt.max_subdivisions) {
            out.converged = false;
            break;
        }
        Node top = heap.top();
        heap.pop();
        const Rect& r = top.piece.rect;
        const double scale = std::max({std::abs(r.u0), std::abs(r.u1), std::abs(r.v0), std::abs(r.v1), 1.0});
        if (std::max(r.du(), r.dv()) < 1e-13 * scale) continue;  // cannot refine further; error stays booked

        // Bisect only the long side of elongated pieces: pieces touching a singular corner must stay
        // near-square or their Gauss rule never resolves the nearby singularity.
        const bool cut_u = 2.0 * r.du() >= r.dv();
        const bool cut_v = 2.0 * r.dv() >= r.du();
        const double su = cut_u ? detail::split_point(r.u0, r.u1, opt.lines_u) : r.u1;
        const double sv = cut_v ? detail::split_point(r.v0, r.v1, opt.lines_v) : r.v1;
        // the singular corner point stays a corner of exactly one child
        const Corner sc = top.piece.singular;
        const bool hi_u = sc == Corner::u1v0 || sc == Corner::u1v1;
        const bool hi_v = sc == Corner::u0v1 || sc == Corner::u1v1;
        auto label = [&](bool upper_u, bool upper_v) {
            if (sc == Corner::none || upper_u != (hi_u && cut_u) || upper_v != (hi_v && cut_v)) return Corner::none;
            return sc;
        };
        std::array<Piece, 4> kids{Piece{Rect{r.u0, su, r.v0, sv}, label(false, false)},
                                  Piece{Rect{su, r.u1, r.v0, sv}, label(true, false)},
                                  Piece{Rect{r.u0, su, sv, r.v1}, label(false, true)},
                                  Piece{Rect{su, r.u1, sv, r.v1}, label(true, true)}};

        alive[top.id] = 0;
        sum -= values[top.id];
        err -= errs[top.id];
        for (const auto& k : kids) {
            if (!(k.rect.du() > 0.0 && k.rect.dv() > 0.0)) continue;
            evaluate(k);
            sum += values.back();
            err += errs.back();
        }
        ++out.subdivisions;
        if (++since_refresh == 256) {
            std::tie(sum, err) = totals();
            since_refresh = 0;
        }
    }
    std::tie(out.value, out.err) = totals();
    return out;
}

}  // namespace gsqg::quad
