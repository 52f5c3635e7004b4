#ifndef FRACEXT_QUADRATURE_HPP
#define FRACEXT_QUADRATURE_HPP

#include <vector>

namespace fracext {

/// Gauss rule on (0,1) for the weight y^weight_exponent.
struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing, in (0,1)
    std::vector<double> weights;  // positive
    double weight_exponent;       // in (-1,1)

    int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Jacobi rule on (0,1) with weight y^alpha, exact for
/// integrands y^alpha p(y) with deg p <= 2n-1. Nodes and weights via
/// Golub-Welsch on the Jacobi recurrence.
QuadratureRule gauss_jacobi_rule(int n, double alpha);

/// Plain n-point Gauss-Legendre rule on (0,1) (alpha = 0), cached.
const QuadratureRule& gauss_legendre_rule(int n);

/// Legendre polynomials L_0..L_kmax at t in [-1,1] (standard normalization
/// L_k(1) = 1), written into `out` (size kmax+1).
void legendre_all(int kmax, double t, double* out);

/// Derivatives L_0'..L_kmax' at t.
void legendre_derivative_all(int kmax, double t, double* out);

} // namespace fracext

#endif
