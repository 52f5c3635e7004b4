#ifndef FRACEXT_PIECEWISE_HPP
#define FRACEXT_PIECEWISE_HPP

#include "fracext/mesh.hpp"

#include <functional>
#include <random>
#include <vector>

namespace fracext {

/// Continuous piecewise polynomial on a GeometricMesh, stored per element in
/// the hierarchic basis {(1-t)/2, (1+t)/2, phi_2..phi_p} on the reference
/// interval [-1,1], where phi_k = (L_k - L_{k-2})/sqrt(2(2k-1)) are the
/// integrated-Legendre bubbles.
class PiecewiseFunction {
public:
    PiecewiseFunction() = default;
    PiecewiseFunction(GeometricMesh mesh, std::vector<std::vector<double>> coeffs,
                      bool continuous = true);

    const GeometricMesh& mesh() const { return mesh_; }
    bool continuous() const { return continuous_; }
    const std::vector<double>& element_coeffs(int j) const { return coeffs_[j]; }
    std::vector<std::vector<double>>& coeffs() { return coeffs_; }

    double eval(double y) const;
    double deriv(double y) const;
    double left_value() const;   // value at y = 0
    double right_value() const;  // value at y = cutoff

    PiecewiseFunction& operator*=(double c);

    /// Interpolate fn elementwise at Chebyshev-Lobatto points (exact for
    /// polynomials of the element degrees).
    static PiecewiseFunction interpolate(const GeometricMesh& mesh,
                                         const std::function<double(double)>& fn);

private:
    GeometricMesh mesh_;
    std::vector<std::vector<double>> coeffs_;
    bool continuous_ = true;
    int locate(double y) const;
};

/// Hierarchic basis values/derivatives at reference coordinate t, degree p
/// (out size p+1).
void hier_basis_all(int p, double t, double* out);
void hier_basis_derivative_all(int p, double t, double* out);

/// integral_0^cutoff y^exponent |f|^2 dy, exact for the stored degrees.
/// Throws std::domain_error if exponent <= -1 while f(0) != 0.
double weighted_norm_sq(const PiecewiseFunction& f, double exponent);

/// Even reflection across y = Y: returns W on (0, 1.5 Y) with W = f on (0,Y)
/// and W(y) = f(2Y - y) beyond; continuous at Y.
PiecewiseFunction reflect_extend(const PiecewiseFunction& f, double Y);

/// Seeded random continuous piecewise polynomial with coefficients ~ U(-1,1);
/// optional zero values at the endpoints.
PiecewiseFunction random_piecewise(const GeometricMesh& mesh, std::mt19937& rng,
                                   bool zero_left = false, bool zero_right = false);

namespace detail {
/// Number of Gauss points for integrating y^sigma * (poly of degree d) over
/// [a,b], a > 0, with the weight folded into the integrand.
int folded_gauss_points(int poly_degree, double a, double b);
}

} // namespace fracext

#endif
