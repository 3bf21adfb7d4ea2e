#pragma once

#include <string_view>

namespace gsqg {

enum class Regime { well_posed, ill_posed_low, ill_posed_high };

std::string_view to_string(Regime r);

// (alpha, beta) with alpha in (0, 1/2) and beta in [0, 1).
class Params {
public:
    Params(double alpha, double beta);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    double alpha_;
    double beta_;
};

Regime classify(const Params& p);

// Boundary stretching x2 -> lambda_beta(x2).
struct StretchMap {
    explicit StretchMap(double beta);

    double beta;
    double matching_point;  // 1/(1-beta)
    double prefactor;       // (1-beta)^{1/(1-beta)}
};

double lambda_beta(const StretchMap& map, double x2);
double lambda_beta_inv(const StretchMap& map, double y2);
// d/dx2 lambda_beta
double lambda_beta_prime(const StretchMap& map, double x2);
// d/dy2 lambda_beta^{-1}
double lambda_beta_inv_prime(const StretchMap& map, double y2);
double kappa_beta(double beta, double x2);

}  // namespace gsqg
