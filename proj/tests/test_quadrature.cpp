#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracext/quadrature.hpp"

#include <cmath>
#include <stdexcept>

using namespace fracext;

TEST_CASE("one-point rules solve the moment equations") {
    const QuadratureRule mid = gauss_jacobi_rule(1, 0.0);
    CHECK(mid.nodes[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mid.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

    // alpha = 0.5: node = (1/(a+2))/(1/(a+1)) = 1.5/2.5, weight = 1/(a+1)
    const QuadratureRule r = gauss_jacobi_rule(1, 0.5);
    CHECK(r.nodes[0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(1.0 / 1.5).epsilon(1e-14));
}

TEST_CASE("three-point rule integrates y^{-1/2} y^5 exactly") {
    const QuadratureRule r = gauss_jacobi_rule(3, -0.5);
    double acc = 0.0;
    for (int i = 0; i < r.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], 5);
    CHECK(acc == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("moment exactness up to degree 2n-1, n <= 12") {
    for (int n = 1; n <= 12; ++n) {
        for (double a : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
            const QuadratureRule r = gauss_jacobi_rule(n, a);
            for (int k = 0; k <= 2 * n - 1; ++k) {
                double m = 0.0;
                for (int i = 0; i < n; ++i) m += r.weights[i] * std::pow(r.nodes[i], k);
                const double exact = 1.0 / (a + k + 1.0);
                CHECK(std::abs(m - exact) <= 1e-12 * exact);
            }
        }
    }
}

TEST_CASE("nodes interior and increasing, weights positive") {
    for (int n : {1, 2, 5, 9, 12, 24}) {
        for (double a : {-0.9, 0.0, 0.7}) {
            const QuadratureRule r = gauss_jacobi_rule(n, a);
            for (int i = 0; i < n; ++i) {
                CHECK(r.weights[i] > 0.0);
                CHECK(r.nodes[i] > 0.0);
                CHECK(r.nodes[i] < 1.0);
                if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
            }
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(gauss_jacobi_rule(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gauss_jacobi_rule(3, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_jacobi_rule(3, -1.0), std::domain_error);
}

TEST_CASE("legendre recurrences") {
    double L[6], dL[6];
    const double t = 0.37;
    legendre_all(5, t, L);
    legendre_derivative_all(5, t, dL);
    CHECK(L[0] == doctest::Approx(1.0));
    CHECK(L[1] == doctest::Approx(t));
    CHECK(L[2] == doctest::Approx(0.5 * (3.0 * t * t - 1.0)).epsilon(1e-14));
    CHECK(L[3] == doctest::Approx(0.5 * (5.0 * t * t * t - 3.0 * t)).epsilon(1e-14));
    CHECK(dL[2] == doctest::Approx(3.0 * t).epsilon(1e-14));
    // endpoint normalization L_k(1) = 1
    legendre_all(5, 1.0, L);
    for (int k = 0; k <= 5; ++k) CHECK(L[k] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("legendre cache returns the shared rule") {
    const QuadratureRule& a = gauss_legendre_rule(7);
    const QuadratureRule& b = gauss_legendre_rule(7);
    CHECK(&a == &b);
    CHECK(a.size() == 7);
}
