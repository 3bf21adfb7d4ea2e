#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gsqg/params.hpp"
#include "gsqg/vec2.hpp"

namespace gsqg {

// Uniform node lattice: node (i, j) sits at (x0 + i h, y0 + j h).
struct GridSpec {
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;

    double x1_at(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
    double x2_at(std::size_t j) const { return y0 + static_cast<double>(j) * h; }
    double x1_max() const { return x1_at(nx - 1); }
    double x2_max() const { return x2_at(ny - 1); }
    std::size_t size() const { return nx * ny; }

    // Grid of [x0, x0 + lx] x [y0, y0 + ly] with spacing h (rounded down to whole cells).
    static GridSpec covering(double x0, double y0, double lx, double ly, double h);
};

struct Parity {
    bool odd_x1 = false;
    bool odd_x2 = false;
};

struct Box {
    double a1 = 0.0, b1 = 0.0;  // x1 range
    double a2 = 0.0, b2 = 0.0;  // x2 range

    bool contains(const Vec2& p) const { return p.x1 >= a1 && p.x1 <= b1 && p.x2 >= a2 && p.x2 <= b2; }
    bool empty() const { return !(b1 > a1 && b2 > a2); }
};

// Bilinear scalar on a node lattice with optional odd extensions across x1 = 0 and x2 = 0.
// The stored lattice lives in the closed upper half-plane (and right half-plane when odd in x1);
// values at nodes on or outside the support box are forced to zero (parity axes excepted).
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(GridSpec grid, Parity parity, Box support);

    // Sample fn at every node; nodes on or outside the support box are set to zero.
    static ScalarField sample(GridSpec grid, Parity parity, Box support,
                              const std::function<double(double, double)>& fn);

    const GridSpec& grid() const { return grid_; }
    const Parity& parity() const { return parity_; }
    const Box& support() const { return support_; }

    double& at(std::size_t i, std::size_t j) { return values_[j * grid_.nx + i]; }
    double at(std::size_t i, std::size_t j) const { return values_[j * grid_.nx + i]; }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // Bilinear value inside the lattice, zero outside; parity applied for negative coordinates.
    double value(const Vec2& x) const;
    double value(double x1, double x2) const { return value(Vec2{x1, x2}); }
    // Value of the stored lattice only (no reflection), x assumed inside the lattice box.
    double value_unreflected(double x1, double x2) const;

    // Support box shrunk to the smallest cell-aligned box holding all non-zero nodes.
    Box effective_support() const;
    // Re-zero nodes on or outside the support box.
    void enforce_support();

    double sup_abs() const;
    // Trapezoidal integral of |theta| over the stored lattice.
    double l1_mass() const;

private:
    GridSpec grid_;
    Parity parity_;
    Box support_;
    std::vector<double> values_;
};

struct WNorm {
    double sup_norm = 0.0;
    double seminorm = 0.0;        // ||d1 theta||_inf + ||kappa d2 theta||_inf
    double d1_sup = 0.0;          // ||d1 theta||_inf
    double weighted_d2_sup = 0.0; // ||kappa_beta d2 theta||_inf
};

// Sup norm and W^{1,inf}_beta seminorm by centred differences, boundary row x2 = 0 excluded.
WNorm wbeta_norm(const ScalarField& field, const Params& params);
// Same with an explicit beta (beta = 0 gives the plain Lipschitz seminorm).
WNorm wbeta_norm(const ScalarField& field, double beta);

enum class StretchDirection { forward, inverse };

// forward: theta~(x1, x2) = theta(x1, lambda(x2)); inverse: theta(x1, x2) = theta~(x1, lambda^{-1}(x2)).
ScalarField stretch_field(const ScalarField& field, const StretchMap& map, StretchDirection dir);

// JSON header + little-endian float64 sidecar (row-major, x1 fastest).
void write_field(const ScalarField& field, const std::string& json_path);
ScalarField read_field(const std::string& json_path);
void write_field_csv(const ScalarField& field, const std::string& csv_path);

}  // namespace gsqg
