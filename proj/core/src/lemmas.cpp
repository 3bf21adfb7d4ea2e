#include "gsqg/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gsqg/errors.hpp"
#include "gsqg/parallel.hpp"
#include "gsqg/quadrature.hpp"
#include "gsqg/regions.hpp"

namespace gsqg::lemma {

namespace {

void require_alpha(double alpha, double hi, const char* what) {
    if (!(alpha > 0.0 && alpha <= hi)) throw ValidationError(std::string(what) + ": alpha out of range");
}

double p2(double e) { return std::pow(2.0, e); }

}  // namespace

double f_alpha(double alpha, double s) {
    if (s < 0.0) throw DomainError("f_alpha: s must be non-negative");
    if (!(alpha >= 0.0 && alpha < 0.5)) throw ValidationError("f_alpha: alpha must lie in [0, 1/2)");
    if (alpha == 0.0) return s;
    auto g = [alpha](double q) { return std::pow(q * q + 1.0, -alpha); };
    return quad::integrate(g, 0.0, s, 1e-13, 1e-14).value;
}

double mu_alpha(double alpha, double s_max) {
    if (!(alpha > 0.0 && alpha <= 0.49)) throw ValidationError("mu_alpha: alpha must lie in (0, 0.49]");
    const double a = 1.0 - 2.0 * alpha;
    // q^{-2a} - (q^2+1)^{-a} = -q^{-2a} expm1(-a log1p(q^{-2})), free of cancellation for large q
    auto gap = [alpha](double q) { return -std::pow(q, -2.0 * alpha) * std::expm1(-alpha * std::log1p(1.0 / (q * q))); };
    // s_max^{1-2a}/(1-2a) - f(s_max) is assembled as int_0^1 (closed) + int_1^{s_max} of the gap, which
    // avoids subtracting two numbers of size s_max^{1-2a}
    const double head = 1.0 / a - f_alpha(alpha, 1.0) + quad::integrate(gap, 1.0, s_max, 1e-15, 1e-14).value;
    const double tail = quad::integrate(gap, s_max, std::numeric_limits<double>::infinity(), 1e-15, 1e-14).value;
    return head + tail;
}

double mu_upper(double alpha) { return 1.0 / (1.0 - 2.0 * alpha) - f_alpha(alpha, 1.0) + alpha / (1.0 + 2.0 * alpha); }

SpecialValues special_values(double alpha, const std::vector<double>& s_points) {
    SpecialValues sv;
    sv.alpha = alpha;
    for (double s : s_points) sv.f_of[s] = f_alpha(alpha, s);
    sv.mu = mu_alpha(alpha);
    sv.mu_upper = mu_upper(alpha);
    return sv;
}

double I_of_b(double alpha, double b) {
    require_alpha(alpha, 0.49, "I_of_b");
    if (!(b > 0.0 && b <= 1.0)) throw DomainError("I_of_b: b must lie in (0, 1]");
    const double a = 1.0 - 2.0 * alpha;
    const double f1 = f_alpha(alpha, 1.0), mu = mu_alpha(alpha);
    return (p2(a) - 2.0) / a - p2(-alpha) * (f1 + mu) +
           2.0 * std::pow(b, a) * (f_alpha(alpha, 1.0 / b) + f1 - p2(-1.0 - alpha) / a + p2(-1.0 - alpha) * mu);
}

double I_one(double alpha) {
    require_alpha(alpha, 0.49, "I_one");
    const double a = 1.0 - 2.0 * alpha;
    return (4.0 - p2(-alpha)) * f_alpha(alpha, 1.0) - (2.0 + p2(-alpha) - p2(a)) / a;
}

double g_of_c(double alpha, double c) {
    require_alpha(alpha, 0.49, "g_of_c");
    if (c < 1.0) throw DomainError("g_of_c: c must be >= 1");
    const double a = 1.0 - 2.0 * alpha;
    return c / (a * std::pow(c * c + 1.0, alpha)) - f_alpha(alpha, c) - f_alpha(alpha, 1.0) + p2(-1.0 - alpha) / a -
           p2(-1.0 - alpha) * mu_alpha(alpha);
}

double g_one(double alpha) {
    require_alpha(alpha, 0.49, "g_one");
    const double a = 1.0 - 2.0 * alpha;
    return 3.0 * p2(-1.0 - alpha) / a - 2.0 * f_alpha(alpha, 1.0) - p2(-1.0 - alpha) * mu_alpha(alpha);
}

double lemma43_closed(double alpha) {
    require_alpha(alpha, 0.49, "lemma43_closed");
    const double a = 1.0 - 2.0 * alpha;
    return (2.0 - p2(a)) * f_alpha(alpha, 1.0) + p2(2.0 - 2.0 * alpha) * f_alpha(alpha, 0.5) -
           p2(a) * (1.0 - p2(-alpha)) / a;
}

double bplus_closed(double alpha, double b) {
    const double a = 1.0 - 2.0 * alpha;
    return 2.0 / a - 2.0 * std::pow(b, a) * f_alpha(alpha, 1.0 / b);
}

double gb_closed(double alpha) {
    const double a = 1.0 - 2.0 * alpha;
    return p2(a) / a - p2(-alpha) * f_alpha(alpha, 1.0) - p2(-alpha) * mu_alpha(alpha);
}

double gbplus_closed(double alpha, double b) {
    const double a = 1.0 - 2.0 * alpha;
    const double ba = std::pow(b, a);
    return 2.0 * ba * f_alpha(alpha, 1.0) - p2(-alpha) * ba / a + p2(-alpha) * ba * mu_alpha(alpha);
}

double critical_alpha_margin(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ValidationError("critical_alpha_margin: alpha must lie in (0, 1/2)");
    const double a = 1.0 - 2.0 * alpha;
    return f_alpha(alpha, 1.0) - (2.0 + p2(-alpha) - p2(a)) / (a * (4.0 - p2(-alpha)));
}

double kryz_margin(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ValidationError("kryz_margin: alpha must lie in (0, 1/2)");
    return std::pow(20.0, -alpha) / 6.0 - (1.0 / (1.0 - 2.0 * alpha) - p2(-alpha));
}

double kryz_printed(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw ValidationError("kryz_printed: alpha must lie in (0, 1/2)");
    return std::pow(20.0, -alpha) / 6.0 - 1.0 / (1.0 - 2.0 * alpha) - p2(-alpha);
}

RootResult bisect_root(const std::function<double(double)>& fn, double lo, double hi, double min_x, double max_x,
                       int iterations) {
    RootResult r;
    double flo = fn(lo), fhi = fn(hi);
    while (std::signbit(flo) == std::signbit(fhi)) {
        if (lo <= min_x && hi >= max_x) {
            r.lo = lo;
            r.hi = hi;
            return r;
        }
        const double w = hi - lo;
        lo = std::max(min_x, lo - w);
        hi = std::min(max_x, hi + w);
        flo = fn(lo);
        fhi = fn(hi);
        ++r.widenings;
    }
    for (int k = 0; k < iterations; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        ++r.iterations;
    }
    r.found = true;
    r.lo = lo;
    r.hi = hi;
    r.root = 0.5 * (lo + hi);
    r.residual = fn(r.root);
    return r;
}

RootResult first_root(const std::function<double(double)>& fn, double lo, double hi, int scan_points) {
    const double step = (hi - lo) / scan_points;
    double prev_x = lo, prev = fn(lo);
    for (int k = 1; k <= scan_points; ++k) {
        const double x = lo + k * step;
        const double v = fn(x);
        if (std::signbit(v) != std::signbit(prev)) return bisect_root(fn, prev_x, x, prev_x, x);
        prev_x = x;
        prev = v;
    }
    RootResult r;
    r.lo = lo;
    r.hi = hi;
    return r;
}

RootResult critical_alpha_root() { return bisect_root(critical_alpha_margin, 0.25, 0.28, 1e-3, 0.49); }

RootResult kryz_root() { return first_root(kryz_margin, 1e-4, 0.49); }

RootResult kryz_printed_root() { return first_root(kryz_printed, 1e-4, 0.49); }

LemmaReport lemma42_infimum(double alpha, const Lemma42Options& opt) {
    require_alpha(alpha, 0.25, "lemma42_infimum");
    LemmaReport rep;
    rep.name = "lemma42";
    rep.alpha = alpha;
    rep.aux_param = 1.0;
    rep.anchor = "u1 on I_t: inf over b of the region bracket is at least 1/(40 alpha)";
    rep.tolerance = opt.tolerance;
    rep.bound = 1.0 / (40.0 * alpha);

    const double i1 = I_one(alpha), g1 = g_one(alpha);
    const double lower = std::min(i1, i1 + 2.0 * g1);
    rep.closed_form = lower / (2.0 * alpha);
    rep.details.emplace_back("I(1)", i1);
    rep.details.emplace_back("g(1)", g1);
    rep.details.emplace_back("I(1)+2g(1)", i1 + 2.0 * g1);

    // closed form vs quadrature of I(b)
    std::vector<double> closed(opt.check_b.size()), quadv(opt.check_b.size());
    parallel_for(opt.check_b.size(), [&](std::size_t k) {
        closed[k] = I_of_b(alpha, opt.check_b[k]);
        quadv[k] = region::i_of_b(alpha, opt.check_b[k], opt.quad_tol).value;
    });
    for (std::size_t k = 0; k < opt.check_b.size(); ++k) {
        rep.discrepancy = std::max(rep.discrepancy, std::abs(closed[k] - quadv[k]));
        rep.details.emplace_back("I_closed(b=" + std::to_string(opt.check_b[k]).substr(0, 4) + ")", closed[k]);
        rep.details.emplace_back("I_quad(b=" + std::to_string(opt.check_b[k]).substr(0, 4) + ")", quadv[k]);
    }

    // quadrature infimum of V_b over the b grid (G_b^- uncut)
    const int nb = static_cast<int>(std::lround(1.0 / opt.b_step));
    std::vector<double> vb(static_cast<std::size_t>(nb) + 1);
    parallel_for(vb.size(), [&](std::size_t k) {
        const double b = std::min(1.0, static_cast<double>(k) * opt.b_step);
        vb[k] = region::v_of_b(alpha, b, opt.quad_tol).value / (2.0 * alpha);
    });
    const auto it = std::min_element(vb.begin(), vb.end());
    rep.quadrature = *it;
    rep.details.emplace_back("argmin_b V_b", static_cast<double>(it - vb.begin()) * opt.b_step);
    rep.details.emplace_back("V_quad(b=1)", vb.back());
    rep.details.emplace_back("V_closed(b=1)", i1 / (2.0 * alpha));

    const bool bound_ok = rep.closed_form >= rep.bound && rep.quadrature >= rep.bound;
    const bool lower_ok = rep.quadrature >= rep.closed_form - opt.tolerance;
    rep.pass = bound_ok && lower_ok && rep.discrepancy <= opt.tolerance;
    return rep;
}

LemmaReport lemma43_value(double alpha, double tolerance, double quad_tol) {
    require_alpha(alpha, 0.25, "lemma43_value");
    LemmaReport rep;
    rep.name = "lemma43";
    rep.alpha = alpha;
    rep.anchor = "u2 on J_t: the diagonal region integral is positive";
    rep.tolerance = tolerance;
    rep.bound = 0.0;
    rep.closed_form = lemma43_closed(alpha);
    rep.quadrature = region::lemma43(alpha, quad_tol).value;
    rep.discrepancy = std::abs(rep.closed_form - rep.quadrature);
    rep.details.emplace_back("f(1)", f_alpha(alpha, 1.0));
    rep.details.emplace_back("f(1/2)", f_alpha(alpha, 0.5));
    rep.pass = rep.closed_form > rep.bound && rep.discrepancy <= tolerance;
    return rep;
}

double lemma41_expression(double alpha, double x1, double x2, double b1, double b2) {
    const double e = -1.0 - alpha;
    auto t = [e](double a, double b, double num) { return num * std::pow(a * a + b * b, e); };
    const double u1 = 2.0 * b1 - x1, u2 = 2.0 * b2 - x2;
    return t(x1, x2, x2) - t(u1, x2, x2) - t(x1, u2, u2) + t(u1, u2, u2);
}

double lemma41_reduced(double alpha, double y1, double y2, double c) {
    const double e = -1.0 - alpha;
    auto t = [e](double a, double b, double num) { return num * std::pow(a * a + b * b, e); };
    const double lhs = t(y1, y2, y2) - t(y1, 2.0 - y2, 2.0 - y2);
    const double rhs = t(2.0 * c - y1, y2, y2) - t(2.0 * c - y1, 2.0 - y2, 2.0 - y2);
    return lhs - rhs;
}

Lemma41Result lemma41_check(double alpha, std::int64_t samples, std::uint64_t seed) {
    if (alpha < 0.0) throw ValidationError("lemma41_check: alpha must be >= 0");
    if (samples < 1) throw ValidationError("lemma41_check: samples must be >= 1");
    Lemma41Result res;
    res.alpha = alpha;
    res.samples = samples;
    res.min_value = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::int64_t k = 0; k < samples; ++k) {
        // scales spread over four decades; every eighth draw on the x1 = x2, b1 = b2 edge
        const double b2 = std::pow(10.0, -2.0 + 4.0 * unit(rng));
        const bool edge = (k % 8) == 0;
        const double b1 = edge ? b2 : b2 * std::pow(10.0, -2.0 + 4.0 * unit(rng));
        const double m = std::min(b1, b2);
        double x2 = m * unit(rng);
        if (x2 <= 0.0) x2 = 0.5 * m;
        const double x1 = edge ? x2 : x2 * (1.0 - unit(rng));
        if (!(x1 > 0.0)) continue;
        const double v = lemma41_expression(alpha, x1, x2, b1, b2);
        const double scaled = v * std::pow(b2, 1.0 + 2.0 * alpha);
        res.min_value = std::min(res.min_value, scaled);
        if (!(v > 0.0)) ++res.violations;
        if (!(lemma41_reduced(alpha, x1 / b2, x2 / b2, b1 / b2) > 0.0)) ++res.reduced_violations;
    }
    return res;
}

std::vector<IdentityCheck> check_strip_identities(int draws, std::uint64_t seed, double tolerance) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    IdentityCheck c48{"strip_x2_antiderivative", "int (x1^2 + x2^2)^{-1-a} x2 dx2 antiderivative", draws, 0.0, tolerance, false};
    IdentityCheck c49{"strip_x1_f_reduction", "strip in x1 reduces to f(s)", draws, 0.0, tolerance, false};
    IdentityCheck c441{"strip_x1_antiderivative", "int (x1^2 + x2^2)^{-1-a} x1 dx1 antiderivative", draws, 0.0, tolerance, false};
    IdentityCheck c442{"strip_x2_f_reduction", "strip in x2 reduces to f(s)", draws, 0.0, tolerance, false};
    for (int k = 0; k < draws; ++k) {
        const double alpha = 0.01 + 0.48 * unit(rng);
        const double p = 0.05 + 2.95 * unit(rng);  // the fixed coordinate
        const double a = 2.0 * unit(rng);
        const double c = a + 3.0 * unit(rng);
        const double r_draw = 2.0 * unit(rng);
        const double s = r_draw + 3.0 * unit(rng);
        // a = 0 branch of the f-reduction every fourth draw
        const double aa = (k % 4 == 0) ? 0.0 : 0.05 + 2.0 * unit(rng);
        // keep clear of the q^{-2a} endpoint singularity, which Gauss-Kronrod only resolves to ~1e-8
        const double r = aa == 0.0 ? std::max(r_draw, 0.01) : r_draw;

        auto closed_strip = [&](double q) {
            return std::pow(q * q + a * a, -alpha) - std::pow(q * q + c * c, -alpha);
        };
        auto f_red = [&]() {
            const double e = 1.0 - 2.0 * alpha;
            if (aa == 0.0) return (std::pow(s, e) - std::pow(r, e)) / e;
            return std::pow(aa, e) * (f_alpha(alpha, s / aa) - f_alpha(alpha, r / aa));
        };

        const double q48 =
            quad::integrate([&](double x2) { return 2.0 * alpha * x2 * std::pow(p * p + x2 * x2, -1.0 - alpha); }, a, c)
                .value;
        c48.max_error = std::max(c48.max_error, std::abs(q48 - closed_strip(p)));
        const double q441 =
            quad::integrate([&](double x1) { return 2.0 * alpha * x1 * std::pow(x1 * x1 + p * p, -1.0 - alpha); }, a, c)
                .value;
        c441.max_error = std::max(c441.max_error, std::abs(q441 - closed_strip(p)));

        const double fr = f_red();
        auto red1 = [&](double x1) { return std::pow(x1 * x1 + aa * aa, -alpha); };
        const double q49 = quad::integrate(red1, r, s, 1e-14, 1e-14).value;
        c49.max_error = std::max(c49.max_error, std::abs(q49 - fr));
        auto red2 = [&](double x2) { return std::pow(aa * aa + x2 * x2, -alpha); };
        const double q442 = quad::integrate(red2, r, s, 1e-14, 1e-14).value;
        c442.max_error = std::max(c442.max_error, std::abs(q442 - fr));
    }
    std::vector<IdentityCheck> out{c48, c49, c441, c442};
    for (auto& c : out) c.pass = c.max_error <= c.tolerance;
    return out;
}

std::vector<IdentityCheck> check_region_identities(double alpha, const std::vector<double>& bs, double tolerance) {
    IdentityCheck c411{"bplus_region", "B_b^+ closed form", static_cast<int>(bs.size()), 0.0, tolerance, false};
    for (double b : bs) {
        const double q = region::b_plus(alpha, b, 1e-10).value;
        c411.max_error = std::max(c411.max_error, std::abs(q - bplus_closed(alpha, b)));
    }
    IdentityCheck c412{"gb_region", "G_b closed form", 1, 0.0, tolerance, false};
    c412.max_error = std::abs(region::g_b(alpha, 1e-10).value - gb_closed(alpha));
    std::vector<IdentityCheck> out{c411, c412};
    for (auto& c : out) c.pass = c.max_error <= c.tolerance;
    return out;
}

}  // namespace gsqg::lemma
