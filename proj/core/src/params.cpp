#include "gsqg/params.hpp"

#include <cmath>
#include <string>

#include "gsqg/errors.hpp"

namespace gsqg {

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::well_posed: return "WELL_POSED";
        case Regime::ill_posed_low: return "ILL_POSED_LOW";
        case Regime::ill_posed_high: return "ILL_POSED_HIGH";
    }
    return "UNKNOWN";
}

Params::Params(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw ValidationError("alpha must lie in (0, 1/2), got " + std::to_string(alpha));
    if (!(beta >= 0.0 && beta < 1.0))
        throw ValidationError("beta must lie in [0, 1), got " + std::to_string(beta));
}

Regime classify(const Params& p) {
    const double a = p.alpha();
    const double b = p.beta();
    if (b < 2.0 * a) return Regime::ill_posed_low;
    if (a <= 0.25 && b <= 1.0 - 2.0 * a) return Regime::well_posed;
    return Regime::ill_posed_high;
}

StretchMap::StretchMap(double b)
    : beta(b), matching_point(1.0 / (1.0 - b)), prefactor(std::pow(1.0 - b, 1.0 / (1.0 - b))) {
    if (!(b >= 0.0 && b < 1.0))
        throw ValidationError("beta must lie in [0, 1), got " + std::to_string(b));
}

double lambda_beta(const StretchMap& m, double x2) {
    if (!(x2 >= 0.0)) throw DomainError("lambda_beta: negative height");
    if (m.beta == 0.0) return x2;
    if (x2 < m.matching_point) return m.prefactor * std::pow(x2, m.matching_point);
    return x2 - m.beta / (1.0 - m.beta);
}

double lambda_beta_inv(const StretchMap& m, double y2) {
    if (!(y2 >= 0.0)) throw DomainError("lambda_beta_inv: negative height");
    if (m.beta == 0.0) return y2;
    // lambda_beta(matching_point) = 1
    if (y2 < 1.0) return std::pow(y2, 1.0 - m.beta) / (1.0 - m.beta);
    return y2 + m.beta / (1.0 - m.beta);
}

double lambda_beta_prime(const StretchMap& m, double x2) {
    if (!(x2 >= 0.0)) throw DomainError("lambda_beta_prime: negative height");
    if (x2 >= m.matching_point) return 1.0;
    return m.prefactor * m.matching_point * std::pow(x2, m.beta * m.matching_point);
}

double lambda_beta_inv_prime(const StretchMap& m, double y2) {
    if (!(y2 > 0.0)) throw DomainError("lambda_beta_inv_prime: non-positive height");
    if (y2 >= 1.0) return 1.0;
    return std::pow(y2, -m.beta);
}

double kappa_beta(double beta, double x2) {
    if (!(x2 >= 0.0)) throw DomainError("kappa_beta: negative height");
    if (x2 >= 1.0) return 1.0;
    return std::pow(x2, beta);
}

}  // namespace gsqg
