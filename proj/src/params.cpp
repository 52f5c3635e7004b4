#include "fracext/params.hpp"

#include <cmath>
#include <stdexcept>

namespace fracext {

double alpha_from_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("alpha_from_beta: beta must lie in (0,1)");
    return 1.0 - 2.0 * beta;
}

double compute_dbeta(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("compute_dbeta: beta must lie in (0,1)");
    return std::exp2(1.0 - 2.0 * beta) * std::tgamma(1.0 - beta) / std::tgamma(beta);
}

DecayRate compute_mu(double alpha, double s) {
    if (!(alpha > -1.0 && alpha < 1.0))
        throw std::domain_error("compute_mu: alpha must lie in (-1,1)");
    if (!(s >= 0.0))
        throw std::domain_error("compute_mu: s must be nonnegative");
    return DecayRate{s > 0.0 ? 1.0 + std::abs(alpha) : 1.0 + alpha};
}

FracParams FracParams::make(double beta, double s, int dim) {
    if (dim != 2 && dim != 3)
        throw std::domain_error("FracParams: dim must be 2 or 3");
    if (!(s >= 0.0))
        throw std::domain_error("FracParams: s must be nonnegative");
    if (dim == 2 && !(s > 0.0))
        throw std::domain_error("FracParams: dim == 2 requires s > 0");
    FracParams p;
    p.beta = beta;
    p.alpha = alpha_from_beta(beta);
    p.s = s;
    p.dim = dim;
    p.d_beta = compute_dbeta(beta);
    return p;
}

} // namespace fracext
