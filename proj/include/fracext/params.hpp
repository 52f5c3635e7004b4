#ifndef FRACEXT_PARAMS_HPP
#define FRACEXT_PARAMS_HPP

#include <limits>

namespace fracext {

inline constexpr double infinite_cutoff = std::numeric_limits<double>::infinity();

/// Parameter bundle of the fractional diffusion problem L^beta u + s u = f
/// and its degenerate extension with weight y^alpha, alpha = 1 - 2 beta.
struct FracParams {
    double beta;    // fractional power, in (0,1)
    double alpha;   // weight exponent 1 - 2*beta, in (-1,1)
    double s;       // zeroth-order coefficient, >= 0 (> 0 required for dim == 2)
    int dim;        // spatial dimension, 2 or 3
    double d_beta;  // normalization 2^{1-2beta} Gamma(1-beta)/Gamma(beta)

    static FracParams make(double beta, double s, int dim);
};

/// Decay exponent of the truncation error: ||U^Y - U||^2 <= C Y^{-mu}.
struct DecayRate {
    double mu;
};

double alpha_from_beta(double beta);
double compute_dbeta(double beta);

/// mu = 1 + |alpha| for s > 0, mu = 1 + alpha for s == 0. The branch uses
/// exact comparison: mu is genuinely discontinuous in s at 0.
DecayRate compute_mu(double alpha, double s);

} // namespace fracext

#endif
