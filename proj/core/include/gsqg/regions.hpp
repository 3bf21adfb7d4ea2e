#pragma once

namespace gsqg::region {

// Direct 2D quadratures of the region integrals behind the I_t and J_t velocity bounds. Each value includes the
// factor 2 alpha. Unbounded strips are integrated through the substitution
// s = s0 v^{-1/(2 alpha)}, which turns the |x|^{-1-2a} decay into a smooth integrand on (0, 1],
// and the origin singularity is resolved by the corner rule of quad::cubature.

struct Value {
    double value = 0.0;
    double err = 0.0;
    bool converged = true;
};

// weight |x2|
Value b_minus(double alpha, double b, double tol = 1e-10);    // (-1,1) x (-b,0)
Value g_b(double alpha, double tol = 1e-10);                  // x2 > 0, x1 in (x2, x2+2)
Value g_b_minus(double alpha, double b, double tol = 1e-10);  // x2 < -b, x1 in (-x2-2b, -x2-2b+2)
Value g_b_star(double alpha, double b, double tol = 1e-10);   // G_b^- with x1 < -x2
Value b_plus(double alpha, double b, double tol = 1e-10);     // (-1,1) x (0,b)

// I(b) = 2a [ G_b + G_b^* - B_b^- ]
Value i_of_b(double alpha, double b, double tol = 1e-10);
// 2a V_{a,b} = 2a [ G_b + G_b^- - B_b^- ]
Value v_of_b(double alpha, double b, double tol = 1e-10);

// weight |x1|
Value g0(double alpha, double tol = 1e-10);
Value g0_minus(double alpha, double tol = 1e-10);
Value b0(double alpha, double tol = 1e-10);
Value b0_minus(double alpha, double tol = 1e-10);
// 2a [ G0 + G0^- - B0 - B0^- ]
Value lemma43(double alpha, double tol = 1e-10);

}  // namespace gsqg::region
