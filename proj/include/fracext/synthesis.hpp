#ifndef FRACEXT_SYNTHESIS_HPP
#define FRACEXT_SYNTHESIS_HPP

#include "fracext/mode_profile.hpp"
#include "fracext/params.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fracext {

/// Radial Fourier datum lambda -> fhat(lambda) with decay metadata driving
/// the lambda-integration cutoffs.
struct RadialProfile {
    std::function<double(double)> fhat;
    int dim = 3;
    enum class Decay { gaussian, algebraic } decay = Decay::gaussian;
    double algebraic_rate = 0.0;  // |fhat| <= C lambda^{-rate} for the algebraic tag
    double lambda_max = 8.0;      // initial integration cutoff (extended on demand)
    double support_radius = 0.0;  // physical support radius when known
    std::function<double(double)> physical;  // physical-space radial profile, optional
};

/// fhat(lambda) = exp(-lambda^2).
RadialProfile gaussian_profile(int dim);

/// Physical radial bump f(r) = (1-r^2)^3 on r <= 1; fhat via the numeric
/// Hankel transform (J_0 kernel for d = 2, sinc kernel for d = 3).
RadialProfile bump_profile(int dim);

/// Fourier-diagonal parts of the solution norms: energy_sq = the y^alpha
/// gradient energy, trace_sq = ||tr_0 U||^2_{L^2}; combined adds s*trace_sq.
/// For s = 0 the raw L^2 trace integral may diverge (it never enters the
/// norm); trace_sq is reported as 0 in that case.
struct FieldNorms {
    double energy_sq = 0.0;
    double trace_sq = 0.0;
    double s_coeff = 0.0;
    double combined() const { return energy_sq + s_coeff * trace_sq; }
};

enum class ModeFunctional {
    solution_norms,    // energy/trace of U^Y
    truncation_error,  // U^Y - U on (0, Y)
    cauchy_difference  // U^{Y2} - U^{Y1} on (0, Y1)
};

struct LambdaQuadratureOptions {
    double rel_tol = 1e-7;
    double lambda_min = 1e-6;
    int max_bisections = 24;
};

/// omega_{d-1} * int_0^inf |fhat|^2 m(lambda) lambda^{d-1} dlambda with m the
/// per-mode squared functional at unit datum (closed-form mode oracle).
FieldNorms radial_functional(const RadialProfile& f, const FracParams& p, double Y,
                             ModeFunctional kind, double Y2 = 0.0,
                             const LambdaQuadratureOptions& opt = {});

/// fhat(lambda)/(s + lambda^{2 beta}).
double fullspace_trace_symbol(const RadialProfile& f, const FracParams& p, double lambda);

/// ||f||^2_{L^2(R^d)} via Plancherel.
double datum_l2_sq(const RadialProfile& f, const LambdaQuadratureOptions& opt = {});

struct XregNorms {
    double deriv_energy_sq = 0.0;  // lambda^{2m}-weighted full-space energy
    double datum_sobolev_sq = 0.0; // ||f||^2_{H^m}
};
XregNorms xreg_norm_sq(const RadialProfile& f, const FracParams& p, int m,
                       const LambdaQuadratureOptions& opt = {});

/// lambda-moment multiplying J_ell in the full-space weighted derivative
/// norms: omega_{d-1} int |fhat|^2 (s+lam^{2b})^{-2} lam^{d-alpha+2eps} dlam.
double regularity_lambda_moment(const RadialProfile& f, const FracParams& p, double eps,
                                const LambdaQuadratureOptions& opt = {});

/// Discrete Fourier path on a periodic box (d = dim of params, n samples per
/// direction, side length `box`). Requires s > 0 (the k = 0 mode).
struct GridField {
    FieldNorms norms;
    std::vector<double> trace;  // n^d samples of tr_0 U, same layout as input
    double beyond_nyquist_fraction = 0.0;
    bool aliasing_warning = false;
};

GridField grid_synthesize(const std::vector<double>& samples, int n, double box,
                          const FracParams& p, double Y);

/// Samples of a radial physical-space function on the centered box grid
/// x_j = -box/2 + j box/n (helper for the grid path).
std::vector<double> sample_radial_on_grid(const RadialProfile& f, int n, double box, int dim);

namespace detail {
double bessel_j0(double x);
/// Adaptive Gauss-Kronrod of a two-component integrand over [a,b]; refines on
/// the combined magnitude.
void gk_adaptive_pair(const std::function<void(double, double*)>& f2, double a, double b,
                      double rel_tol, int max_depth, double* out);
}

} // namespace fracext

#endif
