#ifndef FRACEXT_MODE_PROFILE_HPP
#define FRACEXT_MODE_PROFILE_HPP

#include "fracext/bessel.hpp"
#include "fracext/params.hpp"

#include <functional>

namespace fracext {

/// Closed-form solution of one Fourier mode of the extension problem,
///   w(y) = c_K (lam y)^b K_b(lam y) + c_I (lam y)^b I_b(lam y),  b = beta,
/// normalized so that d_beta^{-1}(-lim y^alpha w') + s w(0) = fhat.
/// cutoff = +inf forces c_I = 0 (decay); finite cutoff enforces w'(Y) = 0.
struct ModeProfile {
    double lambda;
    FracParams params;
    double cutoff;
    double fhat;
    double c_K;
    double c_I;
};

ModeProfile fullspace_mode_profile(double lambda, const FracParams& p, double fhat);
ModeProfile truncated_mode_profile(double lambda, double Y, const FracParams& p, double fhat);

/// Normalized Dirichlet-to-Neumann symbol: trace = fhat/(s + a_Y(lambda)).
/// a_inf(lambda) = lambda^{2 beta}; the truncated symbol is
/// lambda^{2 beta} (1 + (2 sin(pi beta)/pi) r(lambda Y)) with
/// r(z) = -K_{1-beta}(z)/I_{beta-1}(z) < 0, so a_Y increases to a_inf.
/// For lambda Y > 600 returns the full-space symbol; the neglected
/// correction is bounded by C e^{-2 lambda Y}.
double dtn_symbol(double lambda, double Y, const FracParams& p);

double mode_profile_eval(const ModeProfile& prof, double y);
double mode_trace(const ModeProfile& prof);  // limit value at y -> 0+

/// ell-th y-derivative via the Bessel derivative recurrences applied
/// symbolically in (coefficient, power, order) space. ell <= 12.
double mode_profile_derivative(const ModeProfile& prof, int ell, double y);

/// Unit-datum squared per-mode quantities feeding the d-dimensional
/// synthesis: energy = int_0^Y y^alpha (|w'|^2 + lambda^2 |w|^2) dy,
/// trace_sq = |w(0)|^2 (or the corresponding difference quantities).
struct ModeNorms {
    double energy = 0.0;
    double trace_sq = 0.0;
};

ModeNorms mode_solution_norms(double lambda, double Y, const FracParams& p);

/// Truncated-minus-fullspace error on (0, Y), unit datum. Quadrature of the
/// difference profile (graded panels toward 0); coefficient differences are
/// formed in cancellation-free ratio form.
ModeNorms mode_truncation_error_exact(double lambda, double Y, const FracParams& p);

/// Same error via the boundary/Green identity
///   e = d_beta (dt - s dt^2) - T,  T = -Y^alpha w_inf'(Y) w_inf(Y);
/// used as the second algebraic route in tests.
double mode_truncation_error_boundary(double lambda, double Y, const FracParams& p);

/// Difference between the Y2- and Y1-truncated mode solutions (Y2 > Y1)
/// measured on (0, Y1), unit datum.
ModeNorms mode_cauchy_difference_exact(double lambda, double Y1, double Y2, const FracParams& p);

/// J_ell = int_0^inf u^{2(ell-eps)+alpha} (|phi^(ell+1)|^2 + |phi^(ell)|^2) du
/// for the normalized full-space profile phi (phi(0)=1). The weighted
/// derivative norm of the full-space solution factors as
/// r_ell^2 = J_ell * [omega_{d-1} int |fhat|^2 (s+lam^{2b})^{-2}
///                    lam^{d-alpha+2eps} dlam].
double mode_regularity_moment(const FracParams& p, int ell, double eps);

namespace detail {
/// g = z^b K_b, h = z^b I_b and their z-derivatives at z.
struct GHPair {
    double g, h, gp, hp;
};
GHPair bessel_gh(double beta, double z);

/// r(z) = -K_{1-beta}(z)/I_{beta-1}(z).
double neumann_ratio(double beta, double z);

/// Geometric panels toward 0 plus power-law tail extrapolation below y_min.
double integrate_graded(const std::function<double(double)>& f, double b,
                        int layers = 48, int nodes_per_panel = 14);
} // namespace detail

} // namespace fracext

#endif
