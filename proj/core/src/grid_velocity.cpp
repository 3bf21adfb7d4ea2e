#include "gsqg/grid_velocity.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

#include "gsqg/errors.hpp"
#include "gsqg/quadrature.hpp"

namespace gsqg {

struct GridVelocity::Fft {
    std::size_t mx, my, mc;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    Fft(std::size_t x, std::size_t y) : mx(x), my(y), mc(y / 2 + 1) {
        real = fftw_alloc_real(mx * my);
        spec = fftw_alloc_complex(mx * mc);
        forward = fftw_plan_dft_r2c_2d(static_cast<int>(mx), static_cast<int>(my), real, spec, FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_2d(static_cast<int>(mx), static_cast<int>(my), spec, real, FFTW_ESTIMATE);
    }
    ~Fft() {
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(real);
        fftw_free(spec);
    }
    std::vector<std::complex<double>> transform() const {
        fftw_execute(forward);
        std::vector<std::complex<double>> out(mx * mc);
        std::memcpy(static_cast<void*>(out.data()), spec, sizeof(fftw_complex) * mx * mc);
        return out;
    }
};

namespace {

std::size_t fft_size(std::size_t n) {
    // smallest 2^a 3^b 5^c >= n
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

// Weight of the quarter hat (1-y1)(1-y2) on [0,1]^2 seen from lattice offset (m, n):
// integral of h^2 K(h((m,n) - y)) (1-y1)(1-y2) dy.
Vec2 quarter_weight(const KernelParams& kp, double h, int m, int n) {
    auto integrand = [&](double y1, double y2) -> Vec2 {
        return free_kernel(kp, {h * (m - y1), h * (n - y2)}) * (h * h * (1.0 - y1) * (1.0 - y2));
    };
    const double dist2 = std::pow(std::max(0.0, std::abs(m - 0.5) - 0.5), 2) +
                         std::pow(std::max(0.0, std::abs(n - 0.5) - 0.5), 2);
    // far field: fixed tensor Gauss
    if (dist2 > 400.0)
        return quad::detail::tensor_rule<Vec2>(integrand, quad::Rect{0.0, 1.0, 0.0, 1.0}, quad::detail::rule_lo());
    if (dist2 > 64.0)
        return quad::detail::tensor_rule<Vec2>(integrand, quad::Rect{0.0, 1.0, 0.0, 1.0}, quad::detail::rule_hi());
    quad::Corner c = quad::Corner::none;
    if (m == 0 && n == 0) c = quad::Corner::u0v0;
    if (m == 1 && n == 0) c = quad::Corner::u1v0;
    if (m == 0 && n == 1) c = quad::Corner::u0v1;
    if (m == 1 && n == 1) c = quad::Corner::u1v1;
    quad::CubatureOptions opt;
    opt.abs_tol = 1e-13 * std::pow(h, 1.0 - 2.0 * kp.alpha);
    opt.rel_tol = 1e-12;
    opt.power = 1.0 / (1.0 - 2.0 * kp.alpha);
    opt.max_subdivisions = 5000;
    return quad::cubature<Vec2>(integrand, {quad::Piece{quad::Rect{0.0, 1.0, 0.0, 1.0}, c}}, opt).value;
}

}  // namespace

GridVelocity::GridVelocity(const GridSpec& grid, Parity parity, const KernelParams& kp)
    : grid_(grid), parity_(parity), kp_(kp) {
    if (parity.odd_x1 && grid.x0 != 0.0) throw ValidationError("GridVelocity: odd_x1 requires x0 = 0");
    if (parity.odd_x2 && grid.y0 != 0.0) throw ValidationError("GridVelocity: odd_x2 requires y0 = 0");
    ex_ = parity.odd_x1 ? 2 * grid.nx - 1 : grid.nx;
    ey_ = parity.odd_x2 ? 2 * grid.ny - 1 : grid.ny;
    mx_ = fft_size(2 * ex_);
    my_ = fft_size(2 * ey_);
    fft_ = std::make_unique<Fft>(mx_, my_);

    const int rx = static_cast<int>(ex_) - 1;
    const int ry = static_cast<int>(ey_) - 1;
    // W^{++} on offsets [-rx-1, rx+1] x [-ry-1, ry+1]; other quadrants follow by reflection
    const int wx = 2 * rx + 3, wy = 2 * ry + 3;
    std::vector<Vec2> wpp(static_cast<std::size_t>(wx) * wy);
    for (int m = -rx - 1; m <= rx + 1; ++m)
        for (int n = -ry - 1; n <= ry + 1; ++n)
            wpp[static_cast<std::size_t>(m + rx + 1) * wy + (n + ry + 1)] = quarter_weight(kp, grid.h, m, n);
    auto wq = [&](int q, int m, int n) -> Vec2 {
        // q bit 0: cell on the -x1 side, bit 1: cell on the -x2 side
        const bool f1 = q & 1, f2 = q & 2;
        const int mm = f1 ? -m : m, nn = f2 ? -n : n;
        Vec2 w = wpp[static_cast<std::size_t>(mm + rx + 1) * wy + (nn + ry + 1)];
        if (f1) w.x2 = -w.x2;
        if (f2) w.x1 = -w.x1;
        return w;
    };
    for (int q = 0; q < 4; ++q)
        for (int comp = 0; comp < 2; ++comp) {
            std::fill(fft_->real, fft_->real + mx_ * my_, 0.0);
            for (int m = -rx; m <= rx; ++m)
                for (int n = -ry; n <= ry; ++n) {
                    const std::size_t I = static_cast<std::size_t>((m + static_cast<int>(mx_)) % static_cast<int>(mx_));
                    const std::size_t J = static_cast<std::size_t>((n + static_cast<int>(my_)) % static_cast<int>(my_));
                    const Vec2 w = wq(q, m, n);
                    fft_->real[I * my_ + J] = comp == 0 ? w.x1 : w.x2;
                }
            spectra_[q][comp] = fft_->transform();
        }
}

GridVelocity::~GridVelocity() = default;

std::vector<Vec2> GridVelocity::compute(const ScalarField& field) const {
    const GridSpec& g = field.grid();
    if (g.nx != grid_.nx || g.ny != grid_.ny || g.h != grid_.h || g.x0 != grid_.x0 || g.y0 != grid_.y0)
        throw ValidationError("GridVelocity: field lattice differs from the precomputed one");
    for (std::size_t i = 0; i < g.nx; ++i) {
        if (field.at(i, g.ny - 1) != 0.0 || (!parity_.odd_x2 && field.at(i, 0) != 0.0))
            throw ValidationError("GridVelocity: field must vanish on non-axis lattice edges");
    }
    for (std::size_t j = 0; j < g.ny; ++j) {
        if (field.at(g.nx - 1, j) != 0.0 || (!parity_.odd_x1 && field.at(0, j) != 0.0))
            throw ValidationError("GridVelocity: field must vanish on non-axis lattice edges");
    }
    const std::size_t mc = my_ / 2 + 1;
    std::vector<std::complex<double>> acc[2] = {std::vector<std::complex<double>>(mx_ * mc),
                                                std::vector<std::complex<double>>(mx_ * mc)};
    const long ox = parity_.odd_x1 ? static_cast<long>(g.nx) - 1 : 0;
    const long oy = parity_.odd_x2 ? static_cast<long>(g.ny) - 1 : 0;
    for (int q = 0; q < 4; ++q) {
        const int side1 = (q & 1) ? -1 : 1, side2 = (q & 2) ? -1 : 1;
        std::fill(fft_->real, fft_->real + mx_ * my_, 0.0);
        for (std::size_t I = 0; I < ex_; ++I) {
            const long i = static_cast<long>(I) - ox;
            const int s1 = i != 0 ? (i > 0 ? 1 : -1) : side1;
            for (std::size_t J = 0; J < ey_; ++J) {
                const long j = static_cast<long>(J) - oy;
                const int s2 = j != 0 ? (j > 0 ? 1 : -1) : side2;
                double sign = 1.0;
                if (s1 < 0) {
                    if (!parity_.odd_x1) continue;  // no cell on that side
                    sign = -sign;
                }
                if (s2 < 0) {
                    if (!parity_.odd_x2) continue;
                    sign = -sign;
                }
                fft_->real[I * my_ + J] = sign * field.at(static_cast<std::size_t>(std::labs(i)),
                                                          static_cast<std::size_t>(std::labs(j)));
            }
        }
        const auto c = fft_->transform();
        for (int comp = 0; comp < 2; ++comp) {
            const auto& w = spectra_[q][comp];
            auto& a = acc[comp];
            for (std::size_t k = 0; k < a.size(); ++k) a[k] += c[k] * w[k];
        }
    }
    std::vector<Vec2> u(g.size());
    const double norm = 1.0 / static_cast<double>(mx_ * my_);
    for (int comp = 0; comp < 2; ++comp) {
        std::memcpy(static_cast<void*>(fft_->spec), acc[comp].data(), sizeof(fftw_complex) * mx_ * mc);
        fftw_execute(fft_->backward);
        for (std::size_t j = 0; j < g.ny; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double v = fft_->real[(i + static_cast<std::size_t>(ox)) * my_ + (j + static_cast<std::size_t>(oy))] * norm;
                (comp == 0 ? u[j * g.nx + i].x1 : u[j * g.nx + i].x2) = v;
            }
    }
    // exact symmetry values on the axes
    if (parity_.odd_x1)
        for (std::size_t j = 0; j < g.ny; ++j) u[j * g.nx].x1 = 0.0;
    if (parity_.odd_x2)
        for (std::size_t i = 0; i < g.nx; ++i) u[i].x2 = 0.0;
    return u;
}

Vec2 interpolate_velocity(const GridSpec& g, Parity parity, const std::vector<Vec2>& u, const Vec2& x) {
    double x1 = x.x1, x2 = x.x2;
    double s1 = 1.0, s2 = 1.0;  // multipliers for (u1, u2)
    if (parity.odd_x1 && x1 < 0.0) {
        x1 = -x1;
        s1 = -s1;
    }
    if (parity.odd_x2 && x2 < 0.0) {
        x2 = -x2;
        s2 = -s2;
    }
    double s = std::clamp((x1 - g.x0) / g.h, 0.0, static_cast<double>(g.nx - 1));
    double t = std::clamp((x2 - g.y0) / g.h, 0.0, static_cast<double>(g.ny - 1));
    auto i = static_cast<std::size_t>(s);
    auto j = static_cast<std::size_t>(t);
    if (i >= g.nx - 1) i = g.nx - 2;
    if (j >= g.ny - 1) j = g.ny - 2;
    const double fs = s - static_cast<double>(i), ft = t - static_cast<double>(j);
    const Vec2& a = u[j * g.nx + i];
    const Vec2& b = u[j * g.nx + i + 1];
    const Vec2& c = u[(j + 1) * g.nx + i];
    const Vec2& d = u[(j + 1) * g.nx + i + 1];
    Vec2 v = (1.0 - ft) * ((1.0 - fs) * a + fs * b) + ft * ((1.0 - fs) * c + fs * d);
    v.x1 *= s1;
    v.x2 *= s2;
    return v;
}

}  // namespace gsqg
