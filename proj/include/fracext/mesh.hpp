#ifndef FRACEXT_MESH_HPP
#define FRACEXT_MESH_HPP

#include <vector>

namespace fracext {

/// Partition of (0, Y) graded geometrically toward y = 0, with one
/// polynomial degree per element. breakpoints = {0, Y s^{L-1}, ..., Y s, Y}.
struct GeometricMesh {
    double cutoff = 0.0;               // Y
    double sigma = 0.5;                // grading ratio, in (0,1)
    int layers = 0;                    // L = number of elements
    std::vector<int> degrees;          // size L, counted from y = 0
    std::vector<double> breakpoints;   // size L+1, ascending, breakpoints[0] = 0

    int num_elements() const { return layers; }
    double element_left(int j) const { return breakpoints[j]; }
    double element_right(int j) const { return breakpoints[j + 1]; }
    double element_size(int j) const { return breakpoints[j + 1] - breakpoints[j]; }
};

/// Element j (from y=0, 1-based in the counting below) gets degree
/// max(1, round(degree_slope * j)).
GeometricMesh geometric_mesh(double Y, double sigma, int L, double degree_slope);

/// Same grading with one fixed degree everywhere (solver-facing helper).
GeometricMesh geometric_mesh_uniform_degree(double Y, double sigma, int L, int degree);

} // namespace fracext

#endif
