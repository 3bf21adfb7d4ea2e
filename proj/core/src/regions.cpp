#include "gsqg/regions.hpp"

#include <cmath>
#include <vector>

#include "gsqg/errors.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg::region {

namespace {

using quad::Corner;
using quad::Piece;
using quad::Rect;

constexpr double kS0 = 4.0;  // where strips switch to the tail substitution

// 2a |w| / |x|^{2+2a}
double weight(double alpha, double w, double x1, double x2) {
    const double r2 = x1 * x1 + x2 * x2;
    return 2.0 * alpha * std::abs(w) * std::pow(r2, -1.0 - alpha);
}

Value accumulate(Value a, const Value& b) {
    a.value += b.value;
    a.err += b.err;
    a.converged = a.converged && b.converged;
    return a;
}

template <class F>
Value integrate(F&& f, const std::vector<Piece>& pieces, double alpha, double tol) {
    quad::CubatureOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = 1e-13;
    opt.max_subdivisions = 200000;
    opt.power = 1.0 / (1.0 - 2.0 * alpha);
    auto r = quad::cubature<double>(f, pieces, opt);
    return Value{r.value, r.err, r.converged};
}

// Strip x = m(s, t) for s in (0, inf), t in (t0, t1) with jac constant; split into (0, kS0) and a
// mapped tail. m(s, t) returns (x1, x2); w selects which coordinate weights the integrand.
template <class M>
Value strip(double alpha, M&& m, double t0, double t1, double jac, bool x1_weight, Corner corner, double tol) {
    auto integrand = [&](double s, double t) {
        const auto [x1, x2] = m(s, t);
        return jac * weight(alpha, x1_weight ? x1 : x2, x1, x2);
    };
    Value head = integrate(integrand, {Piece{Rect{0.0, kS0, t0, t1}, corner}}, alpha, 0.5 * tol);

    const double e = 1.0 / (2.0 * alpha);
    auto tail = [&](double v, double t) {
        const double s = kS0 * std::pow(v, -e);
        const double ds = kS0 * e * std::pow(v, -e - 1.0);
        return integrand(s, t) * ds;
    };
    Value tl = integrate(tail, {Piece{Rect{0.0, 1.0, t0, t1}, Corner::none}}, alpha, 0.5 * tol);
    return accumulate(head, tl);
}

struct P {
    double x1, x2;
};

void check(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ValidationError("region quadrature needs alpha in (0, 1/2)");
}

}  // namespace

Value b_minus(double alpha, double b, double tol) {
    check(alpha);
    if (b <= 0.0) return {};
    auto f = [&](double x1, double x2) { return weight(alpha, x2, x1, x2); };
    return integrate(f, {Piece{Rect{-1.0, 0.0, -b, 0.0}, Corner::u1v1}, Piece{Rect{0.0, 1.0, -b, 0.0}, Corner::u0v1}},
                     alpha, tol);
}

Value b_plus(double alpha, double b, double tol) {
    check(alpha);
    if (b <= 0.0) return {};
    auto f = [&](double x1, double x2) { return weight(alpha, x2, x1, x2); };
    return integrate(f, {Piece{Rect{-1.0, 0.0, 0.0, b}, Corner::u1v0}, Piece{Rect{0.0, 1.0, 0.0, b}, Corner::u0v0}},
                     alpha, tol);
}

Value g_b(double alpha, double tol) {
    check(alpha);
    auto m = [](double s, double t) { return P{s + t, s}; };
    return strip(alpha, m, 0.0, 2.0, 1.0, false, Corner::u0v0, tol);
}

namespace {

// x = (s - b + t, -b - s), t in (0, t1)
Value g_minus_strip(double alpha, double b, double t1, double tol) {
    auto m = [b](double s, double t) { return P{s - b + t, -b - s}; };
    if (b == 0.0) return strip(alpha, m, 0.0, t1, 1.0, false, Corner::u0v0, tol);
    // the origin sits at distance b from the edge s = 0 (at t = b); split there
    if (b < t1) {
        Value lo = strip(alpha, m, 0.0, b, 1.0, false, Corner::none, 0.5 * tol);
        Value hi = strip(alpha, m, b, t1, 1.0, false, Corner::none, 0.5 * tol);
        return accumulate(lo, hi);
    }
    return strip(alpha, m, 0.0, t1, 1.0, false, Corner::none, tol);
}

}  // namespace

Value g_b_minus(double alpha, double b, double tol) {
    check(alpha);
    return g_minus_strip(alpha, b, 2.0, tol);
}

Value g_b_star(double alpha, double b, double tol) {
    check(alpha);
    if (b <= 0.0) return {};
    return g_minus_strip(alpha, b, std::min(2.0 * b, 2.0), tol);
}

Value i_of_b(double alpha, double b, double tol) {
    Value g = g_b(alpha, tol / 3.0);
    Value gs = g_b_star(alpha, b, tol / 3.0);
    Value bm = b_minus(alpha, b, tol / 3.0);
    Value out = accumulate(g, gs);
    out.value -= bm.value;
    out.err += bm.err;
    out.converged = out.converged && bm.converged;
    return out;
}

Value v_of_b(double alpha, double b, double tol) {
    Value g = g_b(alpha, tol / 3.0);
    Value gm = g_b_minus(alpha, b, tol / 3.0);
    Value bm = b_minus(alpha, b, tol / 3.0);
    Value out = accumulate(g, gm);
    out.value -= bm.value;
    out.err += bm.err;
    out.converged = out.converged && bm.converged;
    return out;
}

Value g0(double alpha, double tol) {
    check(alpha);
    auto m = [](double s, double t) { return P{1.0 + s, t}; };
    return strip(alpha, m, -1.0, 1.0, 1.0, true, Corner::none, tol);
}

Value g0_minus(double alpha, double tol) {
    check(alpha);
    // x1 = -2 - a, a in (0, 1): x2 in (-1, a), written as x2 = -1 + w (1 + a)
    auto tri = [&](double a, double w) {
        const double x1 = -2.0 - a, x2 = -1.0 + w * (1.0 + a);
        return (1.0 + a) * weight(alpha, x1, x1, x2);
    };
    Value head = integrate(tri, {Piece{Rect{0.0, 1.0, 0.0, 1.0}, Corner::none}}, alpha, 0.5 * tol);
    auto m = [](double s, double t) { return P{-3.0 - s, t}; };
    return accumulate(head, strip(alpha, m, -1.0, 1.0, 1.0, true, Corner::none, 0.5 * tol));
}

Value b0(double alpha, double tol) {
    check(alpha);
    auto m = [](double s, double t) { return P{s, s + t}; };
    return strip(alpha, m, 0.0, 2.0, 1.0, true, Corner::u0v0, tol);
}

Value b0_minus(double alpha, double tol) {
    check(alpha);
    // x1 = -2 - a, a in (0, 1): x2 in (1, 2 + a), written as x2 = 1 + w (1 + a)
    auto tri = [&](double a, double w) {
        const double x1 = -2.0 - a, x2 = 1.0 + w * (1.0 + a);
        return (1.0 + a) * weight(alpha, x1, x1, x2);
    };
    Value head = integrate(tri, {Piece{Rect{0.0, 1.0, 0.0, 1.0}, Corner::none}}, alpha, 0.5 * tol);
    auto m = [](double s, double t) { return P{-3.0 - s, 1.0 + s + t}; };
    return accumulate(head, strip(alpha, m, 0.0, 2.0, 1.0, true, Corner::none, 0.5 * tol));
}

Value lemma43(double alpha, double tol) {
    Value pos = accumulate(g0(alpha, tol / 4.0), g0_minus(alpha, tol / 4.0));
    Value neg = accumulate(b0(alpha, tol / 4.0), b0_minus(alpha, tol / 4.0));
    pos.value -= neg.value;
    pos.err += neg.err;
    pos.converged = pos.converged && neg.converged;
    return pos;
}

}  // namespace gsqg::region
