#include "fracext/quadrature.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fracext {

namespace {

// Monic-Jacobi recurrence coefficients for the weight (1-x)^a (1+x)^b on
// (-1,1), here with a = 0, b = alpha. diag[k] and offdiag[k] = sqrt(beta_k)
// feed the symmetric tridiagonal Golub-Welsch matrix.
void jacobi_recurrence(int n, double b, std::vector<double>& diag, std::vector<double>& offsq) {
    const double a = 0.0;
    diag.resize(n);
    offsq.resize(n);  // offsq[0] holds the zeroth moment beta_0
    const double ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    offsq[0] = std::exp2(ab + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        diag[k] = (b * b - a * a) / (t * (t + 2.0));
        offsq[k] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
}

} // namespace

QuadratureRule gauss_jacobi_rule(int n, double alpha) {
    if (n < 1)
        throw std::domain_error("gauss_jacobi_rule: n must be >= 1");
    if (!(alpha > -1.0 && alpha < 1.0))
        throw std::domain_error("gauss_jacobi_rule: alpha must lie in (-1,1)");

    std::vector<double> diag, offsq;
    jacobi_recurrence(n, alpha, diag, offsq);

    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        T(k, k) = diag[k];
        if (k + 1 < n) {
            const double o = std::sqrt(offsq[k + 1]);
            T(k, k + 1) = o;
            T(k + 1, k) = o;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("gauss_jacobi_rule: eigen decomposition failed");

    QuadratureRule rule;
    rule.weight_exponent = alpha;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mu0 = offsq[0];
    // map (-1,1) -> (0,1): y = (1+x)/2, weight scale 2^{-alpha-1}
    const double wscale = std::exp2(-alpha - 1.0);
    for (int i = 0; i < n; ++i) {
        const double x = eig.eigenvalues()(i);
        const double v0 = eig.eigenvectors()(0, i);
        rule.nodes[i] = 0.5 * (1.0 + x);
        rule.weights[i] = wscale * mu0 * v0 * v0;
    }
    // eigenvalues come out sorted ascending; enforce anyway
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return rule.nodes[i] < rule.nodes[j]; });
    QuadratureRule sorted = rule;
    for (int i = 0; i < n; ++i) {
        sorted.nodes[i] = rule.nodes[idx[i]];
        sorted.weights[i] = rule.weights[idx[i]];
    }
    return sorted;
}

const QuadratureRule& gauss_legendre_rule(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, gauss_jacobi_rule(n, 0.0)).first;
    return it->second;
}

void legendre_all(int kmax, double t, double* out) {
    out[0] = 1.0;
    if (kmax == 0) return;
    out[1] = t;
    for (int k = 1; k < kmax; ++k)
        out[k + 1] = ((2.0 * k + 1.0) * t * out[k] - k * out[k - 1]) / (k + 1.0);
}

void legendre_derivative_all(int kmax, double t, double* out) {
    std::vector<double> L(kmax + 1);
    legendre_all(kmax, t, L.data());
    out[0] = 0.0;
    if (kmax == 0) return;
    out[1] = 1.0;
    for (int k = 1; k < kmax; ++k)
        out[k + 1] = out[k - 1] + (2.0 * k + 1.0) * L[k];
}

} // namespace fracext
