#ifndef FRACEXT_MODE_SOLVER_HPP
#define FRACEXT_MODE_SOLVER_HPP

#include "fracext/mesh.hpp"
#include "fracext/mode_profile.hpp"
#include "fracext/params.hpp"
#include "fracext/piecewise.hpp"

#include <Eigen/Dense>

namespace fracext {

/// One Fourier mode of the truncated extension problem: find w on (0, Y) with
///   int_0^Y y^alpha (w' v' + lambda^2 w v) dy + s d_beta w(0) v(0)
///     = d_beta fhat v(0)   for all v,
/// natural (do-nothing) Neumann condition at y = Y.
struct ModeProblem {
    double lambda;
    FracParams params;
    double cutoff;  // Y, or infinite_cutoff (solved on a decay-based proxy)
    double fhat;

    static ModeProblem make(double lambda, const FracParams& p, double cutoff, double fhat);
};

struct ModeSystem {
    Eigen::MatrixXd A;       // SPD: stiffness + lambda^2 mass + s d_beta rank-one trace
    Eigen::VectorXd rhs;     // d_beta fhat at the y=0 vertex dof
    int trace_dof = 0;       // global dof whose basis function is 1 at y = 0
    std::vector<int> offset; // first bubble dof of each element
    int n_vertices = 0;
};

ModeSystem assemble_mode_system(const GeometricMesh& mesh, const ModeProblem& prob);

struct ModeSolution {
    ModeProblem problem;
    GeometricMesh mesh;
    PiecewiseFunction w;
    double trace0 = 0.0;
    double energy_sq = 0.0;        // int y^alpha (|w'|^2 + lambda^2 |w|^2)
    double galerkin_residual = 0.0;  // ||A c - b|| / ||b||
};

ModeSolution solve_mode(const ModeProblem& prob, const GeometricMesh& mesh);

/// Solver mesh controls. layers == 0 picks L from the cutoff so the innermost
/// element resolves the y^{2 beta} trace singularity.
struct SolveControls {
    double sigma = 0.5;
    int layers = 0;
    int degree = 12;
    double proxy_span = 40.0;  // infinite cutoff solved on Y* = max(span/lambda, span)
};

GeometricMesh solver_mesh(double Y, double lambda, const SolveControls& ctl);

/// Proxy cutoff used for lambda > 0 when the problem has infinite cutoff.
double fullspace_proxy_cutoff(double lambda, const SolveControls& ctl);

/// Normalized DtN symbol recovered from a unit-datum solve:
/// a_Y(lambda) = fhat/trace0 - s;  a_inf(lambda) = lambda^{2 beta}.
double mode_dtn(double lambda, double Y, const FracParams& p, const SolveControls& ctl = {});

/// Squared energy difference between the discrete truncated solution and the
/// closed-form full-space mode solution on (0, Y), plus the s d_beta-weighted
/// squared trace difference.
double mode_energy_error(double lambda, double Y, const FracParams& p,
                         const SolveControls& ctl = {});

} // namespace fracext

#endif
