#include "fracext/piecewise.hpp"

#include "fracext/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracext {

void hier_basis_all(int p, double t, double* out) {
    out[0] = 0.5 * (1.0 - t);
    out[1] = 0.5 * (1.0 + t);
    if (p < 2) return;
    std::vector<double> L(p + 1);
    legendre_all(p, t, L.data());
    for (int k = 2; k <= p; ++k)
        out[k] = (L[k] - L[k - 2]) / std::sqrt(2.0 * (2.0 * k - 1.0));
}

void hier_basis_derivative_all(int p, double t, double* out) {
    out[0] = -0.5;
    out[1] = 0.5;
    if (p < 2) return;
    std::vector<double> L(p);
    legendre_all(p - 1, t, L.data());
    for (int k = 2; k <= p; ++k)
        out[k] = std::sqrt((2.0 * k - 1.0) / 2.0) * L[k - 1];
}

PiecewiseFunction::PiecewiseFunction(GeometricMesh mesh, std::vector<std::vector<double>> coeffs,
                                     bool continuous)
    : mesh_(std::move(mesh)), coeffs_(std::move(coeffs)), continuous_(continuous) {
    if (static_cast<int>(coeffs_.size()) != mesh_.num_elements())
        throw std::invalid_argument("PiecewiseFunction: one coefficient block per element required");
    for (int j = 0; j < mesh_.num_elements(); ++j)
        if (static_cast<int>(coeffs_[j].size()) != mesh_.degrees[j] + 1)
            throw std::invalid_argument("PiecewiseFunction: coefficient block size must be degree+1");
    if (continuous_) {
        for (int j = 0; j + 1 < mesh_.num_elements(); ++j) {
            const double scale = 1.0 + std::abs(coeffs_[j][1]);
            if (std::abs(coeffs_[j][1] - coeffs_[j + 1][0]) > 1e-12 * scale)
                throw std::invalid_argument("PiecewiseFunction: element traces disagree at a vertex");
        }
    }
}

int PiecewiseFunction::locate(double y) const {
    const auto& bp = mesh_.breakpoints;
    if (y <= bp.front()) return 0;
    if (y >= bp.back()) return mesh_.num_elements() - 1;
    const auto it = std::upper_bound(bp.begin(), bp.end(), y);
    return static_cast<int>(it - bp.begin()) - 1;
}

double PiecewiseFunction::eval(double y) const {
    const int j = locate(y);
    const double a = mesh_.element_left(j), b = mesh_.element_right(j);
    const double t = 2.0 * (y - a) / (b - a) - 1.0;
    const int p = mesh_.degrees[j];
    std::vector<double> N(p + 1);
    hier_basis_all(p, t, N.data());
    double v = 0.0;
    for (int k = 0; k <= p; ++k) v += coeffs_[j][k] * N[k];
    return v;
}

double PiecewiseFunction::deriv(double y) const {
    const int j = locate(y);
    const double a = mesh_.element_left(j), b = mesh_.element_right(j);
    const double t = 2.0 * (y - a) / (b - a) - 1.0;
    const int p = mesh_.degrees[j];
    std::vector<double> dN(p + 1);
    hier_basis_derivative_all(p, t, dN.data());
    double v = 0.0;
    for (int k = 0; k <= p; ++k) v += coeffs_[j][k] * dN[k];
    return v * 2.0 / (b - a);
}

double PiecewiseFunction::left_value() const { return coeffs_.front()[0]; }
double PiecewiseFunction::right_value() const { return coeffs_.back()[1]; }

PiecewiseFunction& PiecewiseFunction::operator*=(double c) {
    for (auto& block : coeffs_)
        for (auto& v : block) v *= c;
    return *this;
}

PiecewiseFunction PiecewiseFunction::interpolate(const GeometricMesh& mesh,
                                                 const std::function<double(double)>& fn) {
    std::vector<std::vector<double>> coeffs(mesh.num_elements());
    for (int j = 0; j < mesh.num_elements(); ++j) {
        const int p = mesh.degrees[j];
        const double a = mesh.element_left(j), b = mesh.element_right(j);
        Eigen::MatrixXd B(p + 1, p + 1);
        Eigen::VectorXd rhs(p + 1);
        std::vector<double> N(p + 1);
        for (int i = 0; i <= p; ++i) {
            const double t = -std::cos(3.141592653589793238462643 * i / p);
            hier_basis_all(p, t, N.data());
            for (int k = 0; k <= p; ++k) B(i, k) = N[k];
            rhs(i) = fn(a + 0.5 * (t + 1.0) * (b - a));
        }
        Eigen::VectorXd c = B.partialPivLu().solve(rhs);
        coeffs[j].assign(c.data(), c.data() + p + 1);
    }
    // snap shared vertex values to remove interpolation roundoff
    for (int j = 0; j + 1 < mesh.num_elements(); ++j)
        coeffs[j + 1][0] = coeffs[j][1];
    return PiecewiseFunction(mesh, std::move(coeffs));
}

namespace detail {

int folded_gauss_points(int poly_degree, double a, double b) {
    const int exact = poly_degree / 2 + 1;
    const double rho = (b - a) / (2.0 * (a + b));
    const double digits_per_order = -std::log10(rho);
    const int extra = static_cast<int>(std::ceil(7.0 / std::max(0.05, digits_per_order)));
    return exact + 4 + std::min(extra, 60);
}

} // namespace detail

namespace {

// integral over one element [a,b] of y^e * q(y)^2 with q polynomial given by
// evaluation; `evalq` must be exact polynomial evaluation of degree <= pq.
double element_weighted_sq(const PiecewiseFunction& f, int j, double e) {
    const auto& mesh = f.mesh();
    const double a = mesh.element_left(j), b = mesh.element_right(j);
    const int p = mesh.degrees[j];
    const double h = b - a;
    if (a > 0.0) {
        const int n = detail::folded_gauss_points(2 * p, a, b);
        const auto& rule = gauss_legendre_rule(n);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double y = a + h * rule.nodes[i];
            const double v = f.eval(y);
            acc += rule.weights[i] * std::pow(y, e) * v * v;
        }
        return acc * h;
    }
    // element touching 0: split e into integer part + Jacobi-weight part
    bool over_y = false;  // integrate y^{e+2} (f/y)^2 instead
    double ee = e;
    if (e <= -1.0) {
        const double scale = 1.0 + std::abs(f.left_value());
        if (std::abs(f.left_value()) > 1e-12 * scale)
            throw std::domain_error("weighted_norm_sq: exponent <= -1 with nonzero value at 0");
        if (e <= -3.0)
            throw std::domain_error("weighted_norm_sq: exponent <= -3 not supported");
        over_y = true;
        ee = e + 2.0;
    }
    const double eint = (ee >= 0.0) ? std::floor(ee) : 0.0;
    const double efrac = ee - eint;
    const int pq = 2 * p + static_cast<int>(eint);
    const int n = pq / 2 + 2;
    QuadratureRule rule;
    if (std::abs(efrac) < 1e-14)
        rule = gauss_legendre_rule(n);
    else
        rule = gauss_jacobi_rule(n, efrac);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rule.nodes[i];
        const double y = h * u;
        double v = f.eval(y);
        if (over_y) v /= u;  // h factor folded into the overall scale below
        acc += rule.weights[i] * std::pow(u, eint) * v * v;
    }
    // int_0^h y^e f^2 dy = h^{e+1} int_0^1 u^e f(hu)^2 du in both branches
    return acc * std::pow(h, e + 1.0);
}

} // namespace

double weighted_norm_sq(const PiecewiseFunction& f, double exponent) {
    double acc = 0.0;
    for (int j = 0; j < f.mesh().num_elements(); ++j)
        acc += element_weighted_sq(f, j, exponent);
    return acc;
}

PiecewiseFunction reflect_extend(const PiecewiseFunction& f, double Y) {
    const auto& mesh = f.mesh();
    if (std::abs(mesh.cutoff - Y) > 1e-12 * Y)
        throw std::invalid_argument("reflect_extend: function must live on (0, Y)");

    // source breakpoints in [Y/2, Y], adding Y/2 if it is interior to an element
    const double half = 0.5 * Y;
    std::vector<double> src;
    src.push_back(half);
    for (double x : mesh.breakpoints)
        if (x > half * (1.0 + 1e-14) && x < Y * (1.0 - 1e-14)) src.push_back(x);
    src.push_back(Y);
    std::sort(src.begin(), src.end());

    GeometricMesh out = mesh;
    out.cutoff = 1.5 * Y;
    std::vector<std::vector<double>> coeffs(f.mesh().num_elements());
    for (int j = 0; j < mesh.num_elements(); ++j) coeffs[j] = f.element_coeffs(j);

    // mirrored elements, outward from Y: source [s_i, s_{i+1}] taken in
    // descending order of s
    for (int i = static_cast<int>(src.size()) - 1; i >= 1; --i) {
        const double s0 = src[i - 1], s1 = src[i];
        const double c = 2.0 * Y - s1, d = 2.0 * Y - s0;
        // degree of the original element containing the source interval
        int host = 0;
        for (int j = 0; j < mesh.num_elements(); ++j)
            if (mesh.element_left(j) <= s0 * (1.0 + 1e-14) && s1 <= mesh.element_right(j) * (1.0 + 1e-14))
                host = j;
        const int p = mesh.degrees[host];
        out.breakpoints.push_back(d);
        out.degrees.push_back(p);
        out.layers += 1;
        // local interpolation of y -> f(2Y - y), exact for the polynomial piece
        GeometricMesh single;
        single.cutoff = d;
        single.sigma = mesh.sigma;
        single.layers = 1;
        single.degrees = {p};
        single.breakpoints = {c, d};
        PiecewiseFunction piece = PiecewiseFunction::interpolate(
            single, [&](double y) { return f.eval(2.0 * Y - y); });
        coeffs.push_back(piece.element_coeffs(0));
    }
    // enforce exact continuity across the seam and between mirrored pieces
    for (std::size_t j = mesh.num_elements(); j < coeffs.size(); ++j)
        coeffs[j][0] = coeffs[j - 1][1];
    return PiecewiseFunction(std::move(out), std::move(coeffs));
}

PiecewiseFunction random_piecewise(const GeometricMesh& mesh, std::mt19937& rng,
                                   bool zero_left, bool zero_right) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int L = mesh.num_elements();
    std::vector<double> vertex(L + 1);
    for (int j = 0; j <= L; ++j) vertex[j] = dist(rng);
    if (zero_left) vertex.front() = 0.0;
    if (zero_right) vertex.back() = 0.0;
    std::vector<std::vector<double>> coeffs(L);
    for (int j = 0; j < L; ++j) {
        const int p = mesh.degrees[j];
        coeffs[j].resize(p + 1);
        coeffs[j][0] = vertex[j];
        coeffs[j][1] = vertex[j + 1];
        for (int k = 2; k <= p; ++k) coeffs[j][k] = dist(rng);
    }
    return PiecewiseFunction(mesh, std::move(coeffs));
}

} // namespace fracext
