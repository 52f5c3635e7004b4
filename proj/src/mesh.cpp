#include "fracext/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace fracext {

namespace {

GeometricMesh make_mesh(double Y, double sigma, int L) {
    if (!(Y > 0.0))
        throw std::domain_error("geometric_mesh: Y must be positive");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("geometric_mesh: sigma must lie in (0,1)");
    if (L < 1)
        throw std::domain_error("geometric_mesh: L must be >= 1");
    GeometricMesh m;
    m.cutoff = Y;
    m.sigma = sigma;
    m.layers = L;
    m.breakpoints.resize(L + 1);
    m.breakpoints[0] = 0.0;
    for (int j = 1; j <= L; ++j)
        m.breakpoints[j] = Y * std::pow(sigma, L - j);
    m.breakpoints[L] = Y;
    return m;
}

} // namespace

GeometricMesh geometric_mesh(double Y, double sigma, int L, double degree_slope) {
    if (!(degree_slope >= 0.0))
        throw std::domain_error("geometric_mesh: degree_slope must be nonnegative");
    GeometricMesh m = make_mesh(Y, sigma, L);
    m.degrees.resize(L);
    for (int j = 1; j <= L; ++j)
        m.degrees[j - 1] = std::max(1, static_cast<int>(std::lround(degree_slope * j)));
    return m;
}

GeometricMesh geometric_mesh_uniform_degree(double Y, double sigma, int L, int degree) {
    if (degree < 1)
        throw std::domain_error("geometric_mesh_uniform_degree: degree must be >= 1");
    GeometricMesh m = make_mesh(Y, sigma, L);
    m.degrees.assign(L, degree);
    return m;
}

} // namespace fracext
