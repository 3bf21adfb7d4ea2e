#pragma once

// Independent oracles for the test suites. Nothing here calls the library's quadrature, kernels
// or lemma code: integrals are nested 1D Gauss-Kronrod, special functions come from Boost.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "gsqg/field.hpp"
#include "gsqg/vec2.hpp"

namespace oracle {

inline double gk(const std::function<double(double)>& f, double a, double b, double tol = 1e-11) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

// int_0^s (1 + q^2)^{-a} dq = s 2F1(1/2, a; 3/2; -s^2)
inline double f_hyp(double a, double s) {
    if (s == 0.0) return 0.0;
    if (s <= 1.0) return s * boost::math::hypergeometric_pFq({0.5, a}, {1.5}, -s * s);
    // 2F1 converges slowly at large argument; split the range and substitute q = 1/v on (1, s)
    const double inner = boost::math::hypergeometric_pFq({0.5, a}, {1.5}, -1.0);
    return inner + gk([a](double v) { return std::pow(v * v + 1.0, -a) * std::pow(v, 2.0 * a - 2.0); }, 1.0 / s, 1.0);
}

// u(x) = int y_perp |y|^{-2-2a} theta(x - y) dy in polar coordinates around x. With r = t^{1/(1-2a)}
// the radial weight r^{-2a} dr becomes dt/(1-2a). Along a ray the bilinear field is smooth between
// lattice lines, so each ray is cut at its line crossings and every piece gets 8-point Gauss-Legendre;
// the angular integral is adaptive.
inline gsqg::Vec2 polar_velocity(const gsqg::ScalarField& f, double alpha, gsqg::Vec2 x, double R,
                                 double tol = 1e-10) {
    using GL = boost::math::quadrature::gauss<double, 8>;
    const double p = 1.0 / (1.0 - 2.0 * alpha);
    const auto& g = f.grid();
    auto crossings = [&](double start, double dir, double origin, std::vector<double>& out) {
        if (std::abs(dir) < 1e-300) return;
        // lattice lines origin + k h, including their reflections when origin = 0
        const double lo = std::min(start, start - R * dir), hi = std::max(start, start - R * dir);
        for (double k = std::ceil((lo - origin) / g.h); origin + k * g.h <= hi; k += 1.0) {
            const double r = (start - (origin + k * g.h)) / dir;
            if (r > 0.0 && r < R) out.push_back(r);
        }
    };
    auto ray = [&](double phi) {
        const double c = std::cos(phi), s = std::sin(phi);
        std::vector<double> rs{0.0, R};
        crossings(x.x1, c, g.x0, rs);
        crossings(x.x2, s, g.y0, rs);
        std::sort(rs.begin(), rs.end());
        double total = 0.0;
        for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
            const double ta = std::pow(rs[k], 1.0 / p), tb = std::pow(rs[k + 1], 1.0 / p);
            if (tb <= ta) continue;
            total += GL::integrate([&](double t) {
                const double r = std::pow(t, p);
                return f.value(x.x1 - r * c, x.x2 - r * s);
            }, ta, tb);
        }
        return total * p;
    };
    const double two_pi = 2.0 * std::numbers::pi;
    // e_perp = (sin, -cos)
    const double u1 = gk([&](double phi) { return std::sin(phi) * ray(phi); }, 0.0, two_pi, tol);
    const double u2 = gk([&](double phi) { return -std::cos(phi) * ray(phi); }, 0.0, two_pi, tol);
    return {u1, u2};
}

// The same integral by adaptive Gauss-Kronrod; cheap enough for use inside nested integrals.
inline double f_direct(double a, double s) {
    return gk([a](double q) { return std::pow(1.0 + q * q, -a); }, 0.0, s, 1e-13);
}

// Classical fixed-step RK4 for x' = v(x).
inline gsqg::Vec2 rk4(const std::function<gsqg::Vec2(gsqg::Vec2)>& v, gsqg::Vec2 x, double T, int steps) {
    const double dt = T / steps;
    for (int k = 0; k < steps; ++k) {
        const auto k1 = v(x);
        const auto k2 = v(x + 0.5 * dt * k1);
        const auto k3 = v(x + 0.5 * dt * k2);
        const auto k4 = v(x + dt * k3);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

// Smallest x in [lo, hi] with g(x) >= target for increasing g (plain bisection).
inline double bisect_increasing(const std::function<double(double)>& g, double target, double lo, double hi) {
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
