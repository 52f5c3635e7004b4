#include "fracext/mode_solver.hpp"

#include "fracext/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fracext {

ModeProblem ModeProblem::make(double lambda, const FracParams& p, double cutoff, double fhat) {
    if (!(lambda >= 0.0))
        throw std::domain_error("ModeProblem: lambda must be nonnegative");
    if (!(cutoff > 0.0))
        throw std::domain_error("ModeProblem: cutoff must be positive");
    if (!std::isfinite(cutoff) && lambda == 0.0 && !(p.s > 0.0))
        throw std::domain_error("ModeProblem: lambda = 0 on the full space requires s > 0");
    return ModeProblem{lambda, p, cutoff, fhat};
}

namespace {

struct DofMap {
    std::vector<int> offset;  // first bubble dof per element
    int n_vertices;
    int total;
};

DofMap make_dofmap(const GeometricMesh& mesh) {
    DofMap map;
    map.n_vertices = mesh.num_elements() + 1;
    map.offset.resize(mesh.num_elements());
    int next = map.n_vertices;
    for (int j = 0; j < mesh.num_elements(); ++j) {
        map.offset[j] = next;
        next += std::max(0, mesh.degrees[j] - 1);
    }
    map.total = next;
    return map;
}

int global_dof(const DofMap& map, int elem, int local) {
    if (local == 0) return elem;
    if (local == 1) return elem + 1;
    return map.offset[elem] + local - 2;
}

} // namespace

ModeSystem assemble_mode_system(const GeometricMesh& mesh, const ModeProblem& prob) {
    const FracParams& p = prob.params;
    const double lambda = prob.lambda;
    if (lambda == 0.0 && p.s == 0.0 && std::isfinite(prob.cutoff))
        throw std::domain_error(
            "assemble_mode_system: lambda = s = 0 is singular (constant nullspace)");

    const DofMap map = make_dofmap(mesh);
    ModeSystem sys;
    sys.A = Eigen::MatrixXd::Zero(map.total, map.total);
    sys.rhs = Eigen::VectorXd::Zero(map.total);
    sys.trace_dof = 0;
    sys.offset = map.offset;
    sys.n_vertices = map.n_vertices;

    for (int j = 0; j < mesh.num_elements(); ++j) {
        const int deg = mesh.degrees[j];
        const int nloc = deg + 1;
        const double a = mesh.element_left(j), b = mesh.element_right(j);
        const double h = b - a;

        QuadratureRule rule;
        bool jacobi = false;
        if (j == 0) {
            rule = gauss_jacobi_rule(deg + 2, p.alpha);
            jacobi = true;
        } else {
            rule = gauss_legendre_rule(detail::folded_gauss_points(2 * deg, a, b));
        }

        Eigen::MatrixXd Ke = Eigen::MatrixXd::Zero(nloc, nloc);
        std::vector<double> N(nloc), dN(nloc);
        for (int q = 0; q < rule.size(); ++q) {
            const double u = rule.nodes[q];
            const double t = 2.0 * u - 1.0;
            hier_basis_all(deg, t, N.data());
            hier_basis_derivative_all(deg, t, dN.data());
            // weight factor for int_a^b y^alpha (...) dy
            double wq;
            if (jacobi)
                wq = rule.weights[q] * std::pow(h, p.alpha + 1.0);
            else
                wq = rule.weights[q] * std::pow(a + h * u, p.alpha) * h;
            const double dscale = 2.0 / h;  // d/dy = (2/h) d/dt
            for (int i = 0; i < nloc; ++i)
                for (int k = i; k < nloc; ++k)
                    Ke(i, k) += wq * (dscale * dscale * dN[i] * dN[k]
                                      + lambda * lambda * N[i] * N[k]);
        }
        for (int i = 0; i < nloc; ++i)
            for (int k = i; k < nloc; ++k) {
                const int gi = global_dof(map, j, i);
                const int gk = global_dof(map, j, k);
                sys.A(gi, gk) += Ke(i, k);
                if (gi != gk) sys.A(gk, gi) += Ke(i, k);
            }
    }

    // Robin trace term and load: only the y = 0 vertex function is nonzero at 0
    sys.A(0, 0) += p.s * p.d_beta;
    sys.rhs(0) = p.d_beta * prob.fhat;
    return sys;
}

ModeSolution solve_mode(const ModeProblem& prob, const GeometricMesh& mesh) {
    if (std::isfinite(prob.cutoff) &&
        std::abs(mesh.cutoff - prob.cutoff) > 1e-10 * prob.cutoff)
        throw std::invalid_argument("solve_mode: mesh must cover (0, Y)");

    const FracParams& p = prob.params;
    if (prob.lambda == 0.0 && !std::isfinite(prob.cutoff)) {
        // constant mode fhat/s, zero energy seminorm; handled analytically
        const double c = prob.fhat / p.s;
        std::vector<std::vector<double>> coeffs(mesh.num_elements());
        for (int j = 0; j < mesh.num_elements(); ++j) {
            coeffs[j].assign(mesh.degrees[j] + 1, 0.0);
            coeffs[j][0] = coeffs[j][1] = c;
        }
        ModeSolution sol{prob, mesh, PiecewiseFunction(mesh, std::move(coeffs)), c, 0.0, 0.0};
        return sol;
    }

    const ModeSystem sys = assemble_mode_system(mesh, prob);
    Eigen::LLT<Eigen::MatrixXd> llt(sys.A);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("solve_mode: matrix not SPD (assembly bug)");
    const Eigen::VectorXd c = llt.solve(sys.rhs);

    const DofMap map = make_dofmap(mesh);
    std::vector<std::vector<double>> coeffs(mesh.num_elements());
    for (int j = 0; j < mesh.num_elements(); ++j) {
        const int deg = mesh.degrees[j];
        coeffs[j].resize(deg + 1);
        for (int k = 0; k <= deg; ++k) coeffs[j][k] = c(global_dof(map, j, k));
    }

    ModeSolution sol;
    sol.problem = prob;
    sol.mesh = mesh;
    sol.w = PiecewiseFunction(mesh, std::move(coeffs));
    sol.trace0 = c(0);
    sol.energy_sq = c.dot(sys.A * c) - p.s * p.d_beta * c(0) * c(0);
    sol.galerkin_residual = (sys.A * c - sys.rhs).norm() / sys.rhs.norm();
    return sol;
}

GeometricMesh solver_mesh(double Y, double lambda, const SolveControls& ctl) {
    int L = ctl.layers;
    if (L == 0) {
        // innermost element below 1e-6 * min(1, 1/lambda) to resolve y^{2 beta}
        const double target = 1e-6 * std::min(1.0, 1.0 / std::max(lambda, 1e-12));
        L = std::max(12, static_cast<int>(std::ceil(std::log(Y / target) / std::log(1.0 / ctl.sigma))));
    }
    return geometric_mesh_uniform_degree(Y, ctl.sigma, L, ctl.degree);
}

double fullspace_proxy_cutoff(double lambda, const SolveControls& ctl) {
    return std::max(ctl.proxy_span / lambda, ctl.proxy_span);
}

double mode_dtn(double lambda, double Y, const FracParams& p, const SolveControls& ctl) {
    if (!(lambda > 0.0 || p.s > 0.0))
        throw std::domain_error("mode_dtn: requires lambda > 0 or s > 0");
    if (lambda == 0.0) return 0.0;  // constant mode: trace = fhat/s
    const double Ysolve = std::isfinite(Y) ? Y : fullspace_proxy_cutoff(lambda, ctl);
    const ModeProblem prob = ModeProblem::make(lambda, p, Ysolve, 1.0);
    const ModeSolution sol = solve_mode(prob, solver_mesh(Ysolve, lambda, ctl));
    if (sol.trace0 == 0.0)
        throw std::runtime_error("mode_dtn: zero trace from SPD solve");
    return 1.0 / sol.trace0 - p.s;
}

double mode_energy_error(double lambda, double Y, const FracParams& p, const SolveControls& ctl) {
    if (!(lambda > 0.0 || p.s > 0.0))
        throw std::domain_error("mode_energy_error: requires lambda > 0 or s > 0");
    if (!std::isfinite(Y)) return 0.0;
    if (lambda == 0.0) return 0.0;  // both solutions are the constant fhat/s

    const ModeProblem prob = ModeProblem::make(lambda, p, Y, 1.0);
    const GeometricMesh mesh = solver_mesh(Y, lambda, ctl);
    const ModeSolution sol = solve_mode(prob, mesh);
    const ModeProfile ref = fullspace_mode_profile(lambda, p, 1.0);

    double err = 0.0;
    for (int j = 0; j < mesh.num_elements(); ++j) {
        const double a = mesh.element_left(j), b = mesh.element_right(j);
        const double h = b - a;
        const int deg = mesh.degrees[j];
        QuadratureRule rule;
        const bool jacobi = (j == 0);
        if (jacobi)
            rule = gauss_jacobi_rule(deg + 6, p.alpha);
        else
            rule = gauss_legendre_rule(detail::folded_gauss_points(2 * deg + 8, a, b));
        for (int q = 0; q < rule.size(); ++q) {
            const double y = jacobi ? h * rule.nodes[q] : a + h * rule.nodes[q];
            const double dv = sol.w.deriv(y) - mode_profile_derivative(ref, 1, y);
            const double v = sol.w.eval(y) - mode_profile_eval(ref, y);
            const double wq = jacobi ? rule.weights[q] * std::pow(h, p.alpha + 1.0)
                                     : rule.weights[q] * std::pow(y, p.alpha) * h;
            err += wq * (dv * dv + lambda * lambda * v * v);
        }
    }
    const double dt = sol.trace0 - mode_trace(ref);
    return err + p.s * p.d_beta * dt * dt;
}

} // namespace fracext
