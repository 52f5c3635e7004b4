#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracext/synthesis.hpp"

#include <cmath>
#include <stdexcept>

using namespace fracext;

namespace {

RadialProfile unit_profile(int dim) {
    RadialProfile f = gaussian_profile(dim);
    f.fhat = [](double) { return 1.0; };
    return f;
}

constexpr double kPi = 3.141592653589793238462643;

} // namespace

TEST_CASE("fullspace_trace_symbol") {
    const RadialProfile f = unit_profile(3);
    CHECK(fullspace_trace_symbol(f, FracParams::make(0.3, 1.0, 3), 1.0)
          == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fullspace_trace_symbol(f, FracParams::make(0.3, 2.0, 3), 0.0)
          == doctest::Approx(0.5).epsilon(1e-14));  // fhat = 1: 1/(2+0)
    CHECK(fullspace_trace_symbol(f, FracParams::make(0.5, 0.0, 3), 4.0)
          == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(fullspace_trace_symbol(f, FracParams::make(0.5, 0.0, 3), 0.0),
                    std::domain_error);
}

TEST_CASE("zero datum gives zero norms") {
    RadialProfile f = gaussian_profile(3);
    f.fhat = [](double) { return 0.0; };
    const FracParams p = FracParams::make(0.5, 1.0, 3);
    for (ModeFunctional kind : {ModeFunctional::solution_norms, ModeFunctional::truncation_error}) {
        const FieldNorms n = radial_functional(f, p, 2.0, kind, 0.0);
        CHECK(n.energy_sq == doctest::Approx(0.0));
        CHECK(n.trace_sq == doctest::Approx(0.0));
    }
}

TEST_CASE("truncation error vanishes on the full space") {
    const RadialProfile f = gaussian_profile(3);
    const FracParams p = FracParams::make(0.5, 1.0, 3);
    const FieldNorms n = radial_functional(f, p, infinite_cutoff, ModeFunctional::truncation_error);
    CHECK(n.combined() == doctest::Approx(0.0));
}

TEST_CASE("gaussian datum L2 norm against the closed form") {
    const RadialProfile f = gaussian_profile(3);
    // 4 pi int_0^inf e^{-2 l^2} l^2 dl = 4 pi (1/4) sqrt(pi/8) = pi^{3/2}/(2 sqrt(2))
    const double ref = 4.0 * kPi * 0.25 * std::sqrt(kPi / 8.0);
    CHECK(datum_l2_sq(f) == doctest::Approx(ref).epsilon(1e-8));

    const RadialProfile f2 = gaussian_profile(2);
    // 2 pi int_0^inf e^{-2 l^2} l dl = 2 pi / 4
    CHECK(datum_l2_sq(f2) == doctest::Approx(0.5 * kPi).epsilon(1e-8));
}

TEST_CASE("truncation-error baseline, frozen regression value") {
    // fhat = e^{-l^2}, d = 3, s = 1, beta = 1/2, Y = 4 (30-digit reference)
    const RadialProfile f = gaussian_profile(3);
    const FracParams p = FracParams::make(0.5, 1.0, 3);
    const FieldNorms n = radial_functional(f, p, 4.0, ModeFunctional::truncation_error);
    CHECK(n.energy_sq == doctest::Approx(0.0050069809543605095).epsilon(1e-6));
    CHECK(n.trace_sq == doctest::Approx(0.00029392266428774970).epsilon(1e-6));
    CHECK(n.combined() == doctest::Approx(0.0053009036186482592).epsilon(1e-6));

    // two-resolution agreement
    LambdaQuadratureOptions fine;
    fine.rel_tol = 1e-9;
    fine.lambda_min = 2e-7;
    const FieldNorms nf = radial_functional(f, p, 4.0, ModeFunctional::truncation_error, 0.0, fine);
    CHECK(n.combined() == doctest::Approx(nf.combined()).epsilon(1e-6));
}

TEST_CASE("truncation error is nonincreasing in Y") {
    const RadialProfile f = gaussian_profile(3);
    for (double beta : {0.25, 0.75}) {
        for (double s : {0.0, 1.0}) {
            const FracParams p = FracParams::make(beta, s, 3);
            double prev = 1e300;
            for (double Y : {1.0, 2.0, 4.0, 8.0, 16.0}) {
                const double e = radial_functional(f, p, Y, ModeFunctional::truncation_error).combined();
                CHECK(e > 0.0);
                CHECK(e < prev);
                prev = e;
            }
        }
    }
}

TEST_CASE("norms scale quadratically in the datum") {
    RadialProfile f = gaussian_profile(3);
    const FracParams p = FracParams::make(0.4, 1.0, 3);
    const FieldNorms base = radial_functional(f, p, 2.0, ModeFunctional::solution_norms);
    f.fhat = [](double lam) { return 3.0 * std::exp(-lam * lam); };
    const FieldNorms scaled = radial_functional(f, p, 2.0, ModeFunctional::solution_norms);
    CHECK(scaled.energy_sq == doctest::Approx(9.0 * base.energy_sq).epsilon(1e-7));
    CHECK(scaled.trace_sq == doctest::Approx(9.0 * base.trace_sq).epsilon(1e-7));
}

TEST_CASE("xreg consistency at m = 0 and boundedness") {
    const RadialProfile f = gaussian_profile(3);
    const FracParams p = FracParams::make(0.25, 1.0, 3);
    const XregNorms x0 = xreg_norm_sq(f, p, 0);
    const FieldNorms sol = radial_functional(f, p, infinite_cutoff, ModeFunctional::solution_norms);
    CHECK(x0.deriv_energy_sq == doctest::Approx(sol.energy_sq).epsilon(1e-8));
    CHECK(x0.datum_sobolev_sq == doctest::Approx(datum_l2_sq(f)).epsilon(1e-10));

    double prev_ratio = 0.0;
    for (int m : {0, 1, 2}) {
        const XregNorms x = xreg_norm_sq(f, p, m);
        CHECK(std::isfinite(x.deriv_energy_sq));
        CHECK(x.deriv_energy_sq > 0.0);
        const double ratio = x.deriv_energy_sq / x.datum_sobolev_sq;
        CHECK(ratio < 10.0);
        prev_ratio = ratio;
    }
    (void)prev_ratio;

    RadialProfile zero = gaussian_profile(3);
    zero.fhat = [](double) { return 0.0; };
    CHECK(xreg_norm_sq(zero, p, 2).deriv_energy_sq == doctest::Approx(0.0));
}

TEST_CASE("grid path reproduces a single harmonic exactly") {
    const int n = 32;
    const double box = 8.0;
    const FracParams p = FracParams::make(0.5, 1.0, 2);
    const double Y = 2.0;
    const int kx = 3;
    const double xi = 2.0 * kPi * kx / box;
    std::vector<double> samples(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = -0.5 * box + i * box / n;
            samples[static_cast<std::size_t>(i) * n + j] = std::cos(xi * x);
        }
    const GridField g = grid_synthesize(samples, n, box, p, Y);
    const double tsym = 1.0 / (p.s + dtn_symbol(xi, Y, p));
    for (int i = 0; i < n; ++i) {
        const double x = -0.5 * box + i * box / n;
        CHECK(g.trace[static_cast<std::size_t>(i) * n] ==
              doctest::Approx(tsym * std::cos(xi * x)).epsilon(1e-10));
    }
    // Plancherel: energy = box^2 * m_energy * 1/2 for a unit cosine
    const ModeNorms mn = mode_solution_norms(xi, Y, p);
    CHECK(g.norms.energy_sq == doctest::Approx(box * box * 0.5 * mn.energy).epsilon(1e-10));
    CHECK(g.norms.trace_sq == doctest::Approx(box * box * 0.5 * mn.trace_sq).epsilon(1e-10));
    CHECK_FALSE(g.aliasing_warning);
}

TEST_CASE("radial and grid paths agree on the bump datum") {
    const int n = 64;
    const double box = 16.0;
    const FracParams p = FracParams::make(0.5, 1.0, 2);
    const double Y = 2.0;
    const RadialProfile f = bump_profile(2);
    const std::vector<double> samples = sample_radial_on_grid(f, n, box, 2);
    const GridField g = grid_synthesize(samples, n, box, p, Y);
    const FieldNorms r = radial_functional(f, p, Y, ModeFunctional::solution_norms);
    CHECK(g.norms.energy_sq == doctest::Approx(r.energy_sq).epsilon(0.02));
    CHECK(g.norms.trace_sq == doctest::Approx(r.trace_sq).epsilon(0.02));
}

TEST_CASE("grid path flags under-resolution") {
    // a sharp physical spike pushes Fourier mass beyond the Nyquist shell
    const int n = 16;
    const double box = 16.0;
    const FracParams p = FracParams::make(0.5, 1.0, 2);
    std::vector<double> samples(static_cast<std::size_t>(n) * n, 0.0);
    samples[(n / 2) * n + n / 2] = 1.0;
    const GridField g = grid_synthesize(samples, n, box, p, 1.0);
    CHECK(g.aliasing_warning);
    CHECK(g.beyond_nyquist_fraction > 1e-6);
}

TEST_CASE("zero samples give a zero field") {
    const int n = 8;
    const FracParams p = FracParams::make(0.5, 1.0, 2);
    const std::vector<double> samples(static_cast<std::size_t>(n) * n, 0.0);
    const GridField g = grid_synthesize(samples, n, 8.0, p, 1.0);
    CHECK(g.norms.combined() == doctest::Approx(0.0));
    for (double v : g.trace) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("excluded regime and dimension mismatches throw") {
    const RadialProfile f = gaussian_profile(2);
    const FracParams p3 = FracParams::make(0.5, 1.0, 3);
    CHECK_THROWS_AS(radial_functional(f, p3, 1.0, ModeFunctional::solution_norms),
                    std::invalid_argument);
    const FracParams p0 = FracParams::make(0.5, 0.0, 3);
    const std::vector<double> samples(64, 0.0);
    CHECK_THROWS_AS(grid_synthesize(samples, 8, 8.0, p0, 1.0), std::domain_error);
}

TEST_CASE("bessel_j0 sanity against known values") {
    CHECK(detail::bessel_j0(0.0) == doctest::Approx(1.0));
    CHECK(detail::bessel_j0(2.404825557695773) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(detail::bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-10));
    CHECK(detail::bessel_j0(20.0) == doctest::Approx(0.16702466434058315).epsilon(1e-7));
}
