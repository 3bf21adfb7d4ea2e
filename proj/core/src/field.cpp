#include "gsqg/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "gsqg/errors.hpp"

namespace gsqg {

GridSpec GridSpec::covering(double x0, double y0, double lx, double ly, double h) {
    if (!(h > 0.0) || !(lx > 0.0) || !(ly > 0.0)) throw ValidationError("grid: spacing and extents must be positive");
    GridSpec g;
    g.x0 = x0;
    g.y0 = y0;
    g.h = h;
    g.nx = static_cast<std::size_t>(std::floor(lx / h + 1e-9)) + 1;
    g.ny = static_cast<std::size_t>(std::floor(ly / h + 1e-9)) + 1;
    return g;
}

ScalarField::ScalarField(GridSpec grid, Parity parity, Box support)
    : grid_(grid), parity_(parity), support_(support), values_(grid.size(), 0.0) {
    if (!(grid.h > 0.0) || grid.nx < 2 || grid.ny < 2) throw ValidationError("field: degenerate grid");
    if (parity.odd_x1 && grid.x0 != 0.0) throw ValidationError("field: odd_x1 requires the lattice to start at x1 = 0");
    if (parity.odd_x2 && grid.y0 != 0.0) throw ValidationError("field: odd_x2 requires the lattice to start at x2 = 0");
}

namespace {

// Nodes on the edge of the support carry zero, except on an edge that is a parity axis: there the
// odd extension already fixes the trace.
bool carries_value(const Box& b, const Parity& p, double x1, double x2) {
    const bool in1 = (x1 > b.a1 || (p.odd_x1 && b.a1 == 0.0 && x1 == 0.0)) && x1 < b.b1;
    const bool in2 = (x2 > b.a2 || (p.odd_x2 && b.a2 == 0.0 && x2 == 0.0)) && x2 < b.b2;
    return in1 && in2;
}

}  // namespace

ScalarField ScalarField::sample(GridSpec grid, Parity parity, Box support,
                                const std::function<double(double, double)>& fn) {
    ScalarField f(grid, parity, support);
    for (std::size_t j = 0; j < grid.ny; ++j) {
        const double x2 = grid.x2_at(j);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x1 = grid.x1_at(i);
            f.at(i, j) = carries_value(support, parity, x1, x2) ? fn(x1, x2) : 0.0;
        }
    }
    return f;
}

double ScalarField::value_unreflected(double x1, double x2) const {
    const double s = (x1 - grid_.x0) / grid_.h;
    const double t = (x2 - grid_.y0) / grid_.h;
    if (s < 0.0 || t < 0.0 || s > static_cast<double>(grid_.nx - 1) || t > static_cast<double>(grid_.ny - 1))
        return 0.0;
    auto i = static_cast<std::size_t>(s);
    auto j = static_cast<std::size_t>(t);
    if (i >= grid_.nx - 1) i = grid_.nx - 2;
    if (j >= grid_.ny - 1) j = grid_.ny - 2;
    const double fs = s - static_cast<double>(i);
    const double ft = t - static_cast<double>(j);
    const double* row0 = &values_[j * grid_.nx + i];
    const double* row1 = row0 + grid_.nx;
    return (1.0 - ft) * ((1.0 - fs) * row0[0] + fs * row0[1]) + ft * ((1.0 - fs) * row1[0] + fs * row1[1]);
}

double ScalarField::value(const Vec2& x) const {
    double sign = 1.0;
    double x1 = x.x1;
    double x2 = x.x2;
    if (x1 < 0.0 && parity_.odd_x1) {
        x1 = -x1;
        sign = -sign;
    }
    if (x2 < 0.0 && parity_.odd_x2) {
        x2 = -x2;
        sign = -sign;
    }
    return sign * value_unreflected(x1, x2);
}

Box ScalarField::effective_support() const {
    std::size_t imin = grid_.nx, imax = 0, jmin = grid_.ny, jmax = 0;
    for (std::size_t j = 0; j < grid_.ny; ++j)
        for (std::size_t i = 0; i < grid_.nx; ++i)
            if (at(i, j) != 0.0) {
                imin = std::min(imin, i);
                imax = std::max(imax, i);
                jmin = std::min(jmin, j);
                jmax = std::max(jmax, j);
            }
    if (imin > imax) return Box{};
    // one cell of bleed on each side of the outermost non-zero node
    imin = imin > 0 ? imin - 1 : 0;
    jmin = jmin > 0 ? jmin - 1 : 0;
    imax = std::min(imax + 1, grid_.nx - 1);
    jmax = std::min(jmax + 1, grid_.ny - 1);
    return Box{grid_.x1_at(imin), grid_.x1_at(imax), grid_.x2_at(jmin), grid_.x2_at(jmax)};
}

void ScalarField::enforce_support() {
    for (std::size_t j = 0; j < grid_.ny; ++j)
        for (std::size_t i = 0; i < grid_.nx; ++i)
            if (!carries_value(support_, parity_, grid_.x1_at(i), grid_.x2_at(j))) at(i, j) = 0.0;
}

double ScalarField::sup_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::l1_mass() const {
    double total = 0.0;
    for (std::size_t j = 0; j < grid_.ny; ++j) {
        const double wj = (j == 0 || j + 1 == grid_.ny) ? 0.5 : 1.0;
        double row = 0.0;
        for (std::size_t i = 0; i < grid_.nx; ++i) {
            const double wi = (i == 0 || i + 1 == grid_.nx) ? 0.5 : 1.0;
            row += wi * std::abs(at(i, j));
        }
        total += wj * row;
    }
    return total * grid_.h * grid_.h;
}

WNorm wbeta_norm(const ScalarField& field, const Params& params) { return wbeta_norm(field, params.beta()); }

WNorm wbeta_norm(const ScalarField& field, double beta) {
    const GridSpec& g = field.grid();
    if (g.nx < 3 || g.ny < 3) throw ResolutionError("wbeta_norm: need at least 3 nodes per axis");
    WNorm out;
    out.sup_norm = field.sup_abs();
    const double inv2h = 0.5 / g.h;
    const bool reflect_x1 = field.parity().odd_x1;
    for (std::size_t j = 1; j + 1 < g.ny; ++j) {
        const double x2 = g.x2_at(j);
        if (x2 <= 0.0) continue;
        const double k = kappa_beta(beta, x2);
        for (std::size_t i = 0; i + 1 < g.nx; ++i) {
            double left;
            if (i == 0) {
                if (!reflect_x1) continue;
                left = -field.at(1, j);
            } else {
                left = field.at(i - 1, j);
            }
            const double d1 = (field.at(i + 1, j) - left) * inv2h;
            const double d2 = (field.at(i, j + 1) - field.at(i, j - 1)) * inv2h;
            out.d1_sup = std::max(out.d1_sup, std::abs(d1));
            out.weighted_d2_sup = std::max(out.weighted_d2_sup, k * std::abs(d2));
        }
    }
    out.seminorm = out.d1_sup + out.weighted_d2_sup;
    return out;
}

ScalarField stretch_field(const ScalarField& field, const StretchMap& map, StretchDirection dir) {
    const GridSpec& g = field.grid();
    const Box& s = field.support();
    const double lo = std::max(0.0, s.a2 - g.h);
    const double hi = s.b2 + g.h;
    Box box = s;
    if (dir == StretchDirection::forward) {
        box.a2 = lambda_beta_inv(map, lo);
        box.b2 = lambda_beta_inv(map, hi);
    } else {
        box.a2 = lambda_beta(map, lo);
        box.b2 = lambda_beta(map, hi);
    }
    if (s.a2 <= 0.0) box.a2 = std::min(box.a2, 0.0);
    ScalarField out(g, field.parity(), box);
    for (std::size_t j = 0; j < g.ny; ++j) {
        const double x2 = g.x2_at(j);
        if (x2 < 0.0) continue;
        const double src = dir == StretchDirection::forward ? lambda_beta(map, x2) : lambda_beta_inv(map, x2);
        for (std::size_t i = 0; i < g.nx; ++i) out.at(i, j) = field.value(g.x1_at(i), src);
    }
    out.enforce_support();
    return out;
}

namespace {

std::filesystem::path sidecar_for(const std::filesystem::path& json_path) {
    auto p = json_path;
    p.replace_extension(".bin");
    return p;
}

}  // namespace

void write_field(const ScalarField& field, const std::string& json_path) {
    static_assert(std::endian::native == std::endian::little, "sidecar format is little-endian");
    const GridSpec& g = field.grid();
    const Box& s = field.support();
    const auto bin = sidecar_for(json_path);
    nlohmann::ordered_json j;
    j["format"] = "gsqg-field";
    j["version"] = 1;
    j["origin"] = {g.x0, g.y0};
    j["spacing"] = g.h;
    j["dims"] = {g.nx, g.ny};
    j["parity"] = {{"odd_x1", field.parity().odd_x1}, {"odd_x2", field.parity().odd_x2}};
    j["support"] = {{"x1", {s.a1, s.b1}}, {"x2", {s.a2, s.b2}}};
    j["layout"] = "row-major, x1 fastest";
    j["dtype"] = "float64-le";
    j["data"] = bin.filename().string();
    std::ofstream hdr(json_path);
    if (!hdr) throw Error("cannot open " + json_path);
    hdr << j.dump(2) << '\n';
    std::ofstream data(bin, std::ios::binary);
    if (!data) throw Error("cannot open " + bin.string());
    data.write(reinterpret_cast<const char*>(field.values().data()),
               static_cast<std::streamsize>(field.values().size() * sizeof(double)));
}

ScalarField read_field(const std::string& json_path) {
    std::ifstream hdr(json_path);
    if (!hdr) throw Error("cannot open " + json_path);
    const auto j = nlohmann::json::parse(hdr);
    if (j.value("format", "") != "gsqg-field") throw ValidationError(json_path + ": not a gsqg field header");
    GridSpec g;
    g.x0 = j.at("origin").at(0).get<double>();
    g.y0 = j.at("origin").at(1).get<double>();
    g.h = j.at("spacing").get<double>();
    g.nx = j.at("dims").at(0).get<std::size_t>();
    g.ny = j.at("dims").at(1).get<std::size_t>();
    Parity p{j.at("parity").at("odd_x1").get<bool>(), j.at("parity").at("odd_x2").get<bool>()};
    Box s{j.at("support").at("x1").at(0).get<double>(), j.at("support").at("x1").at(1).get<double>(),
          j.at("support").at("x2").at(0).get<double>(), j.at("support").at("x2").at(1).get<double>()};
    ScalarField f(g, p, s);
    const auto bin = std::filesystem::path(json_path).parent_path() / j.at("data").get<std::string>();
    std::ifstream data(bin, std::ios::binary);
    if (!data) throw Error("cannot open " + bin.string());
    data.read(reinterpret_cast<char*>(f.values().data()),
              static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (data.gcount() != static_cast<std::streamsize>(f.values().size() * sizeof(double)))
        throw ValidationError(bin.string() + ": truncated sidecar");
    return f;
}

void write_field_csv(const ScalarField& field, const std::string& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot open " + csv_path);
    out << "x1,x2,value\n" << std::setprecision(17);
    const GridSpec& g = field.grid();
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) out << g.x1_at(i) << ',' << g.x2_at(j) << ',' << field.at(i, j) << '\n';
}

}  // namespace gsqg
