#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "gsqg/field.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/vec2.hpp"

namespace gsqg {

// Node velocities on a field's lattice: the exact integral of the kernel against the bilinear
// interpolant (parity images included), evaluated as a discrete convolution with precomputed
// hat-function weights and FFTs. Weights depend only on the lattice, parity and kernel, so one
// instance serves every step of a run.
class GridVelocity {
public:
    GridVelocity(const GridSpec& grid, Parity parity, const KernelParams& kp);
    ~GridVelocity();
    GridVelocity(const GridVelocity&) = delete;
    GridVelocity& operator=(const GridVelocity&) = delete;

    // u at every stored node, index j * nx + i. Requires zero values on lattice edges that are
    // not parity axes.
    std::vector<Vec2> compute(const ScalarField& field) const;

    const GridSpec& grid() const { return grid_; }

private:
    struct Fft;
    GridSpec grid_;
    Parity parity_;
    KernelParams kp_;
    std::size_t ex_ = 0, ey_ = 0;  // extended lattice size
    std::size_t mx_ = 0, my_ = 0;  // padded FFT size
    // spectra of the quadrant weights, [quadrant][component]
    std::vector<std::complex<double>> spectra_[4][2];
    std::unique_ptr<Fft> fft_;
};

// Bilinear interpolation of node velocities, reflecting with the parity of u
// (u1 even in x2 / odd in x1, u2 odd in x2 / even in x1) and clamping outside the lattice.
Vec2 interpolate_velocity(const GridSpec& grid, Parity parity, const std::vector<Vec2>& u, const Vec2& x);

}  // namespace gsqg
