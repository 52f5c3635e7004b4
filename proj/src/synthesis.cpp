#include "fracext/synthesis.hpp"

#include "fracext/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fracext {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double surface_measure(int dim) {
    if (dim == 2) return 2.0 * kPi;
    if (dim == 3) return 4.0 * kPi;
    throw std::domain_error("surface_measure: dim must be 2 or 3");
}

// 15-point Kronrod / 7-point Gauss pair on [-1,1] (QUADPACK constants)
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PairResult {
    double k0 = 0.0, k1 = 0.0;  // Kronrod values of both components
    double err = 0.0;           // |K-G| of the combined magnitude
};

PairResult gk15_pair(const std::function<void(double, double*)>& f2, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double v[2];
    PairResult r;
    double g0 = 0.0, g1 = 0.0;
    for (int i = 0; i < 8; ++i) {
        const bool center = (i == 7);
        const double x1 = c - h * kXgk[i];
        f2(x1, v);
        double s0 = v[0], s1 = v[1];
        if (!center) {
            const double x2 = c + h * kXgk[i];
            f2(x2, v);
            s0 += v[0];
            s1 += v[1];
        }
        r.k0 += kWgk[i] * s0;
        r.k1 += kWgk[i] * s1;
        if (i % 2 == 1) {  // Gauss nodes are the odd Kronrod indices
            g0 += kWg[i / 2] * s0;
            g1 += kWg[i / 2] * s1;
        }
    }
    r.k0 *= h;
    r.k1 *= h;
    r.err = h * (std::abs(r.k0 / h - g0) + std::abs(r.k1 / h - g1));
    return r;
}

void gk_adaptive_pair_impl(const std::function<void(double, double*)>& f2, double a, double b,
                           double abs_tol, int depth, int max_depth, double* out) {
    const PairResult r = gk15_pair(f2, a, b);
    if (depth >= max_depth || r.err <= abs_tol) {
        out[0] += r.k0;
        out[1] += r.k1;
        return;
    }
    const double m = 0.5 * (a + b);
    gk_adaptive_pair_impl(f2, a, m, 0.5 * abs_tol, depth + 1, max_depth, out);
    gk_adaptive_pair_impl(f2, m, b, 0.5 * abs_tol, depth + 1, max_depth, out);
}

} // namespace

namespace detail {

void gk_adaptive_pair(const std::function<void(double, double*)>& f2, double a, double b,
                      double rel_tol, int max_depth, double* out) {
    const PairResult first = gk15_pair(f2, a, b);
    const double scale = std::abs(first.k0) + std::abs(first.k1) + 1e-300;
    gk_adaptive_pair_impl(f2, a, b, rel_tol * scale, 0, max_depth, out);
}

double bessel_j0(double x) {
    x = std::abs(x);
    if (x <= 12.0) {
        // alternating series; safe cancellation margin in this range
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -q / (static_cast<double>(k) * k);
            sum += term;
            if (std::abs(term) < 1e-17 * (std::abs(sum) + 1.0) && k > x) break;
        }
        return sum;
    }
    // Hankel asymptotic expansion (A&S 9.4.3 coefficients), plenty for x > 12
    const double z = 8.0 / x;
    const double z2 = z * z;
    const double p0 = 1.0 + z2 * (-0.1098628627e-2 + z2 * (0.2734510407e-4 +
                       z2 * (-0.2073370639e-5 + z2 * 0.2093887211e-6)));
    const double q0 = z * (-0.1562499995e-1 + z2 * (0.1430488765e-3 +
                       z2 * (-0.6911147651e-5 + z2 * (0.7621095161e-6 -
                       z2 * 0.934935152e-7))));
    const double chi = x - 0.785398163397448309615660845819876;
    return std::sqrt(2.0 / (kPi * x)) * (p0 * std::cos(chi) - q0 * std::sin(chi));
}

} // namespace detail

RadialProfile gaussian_profile(int dim) {
    RadialProfile f;
    f.dim = dim;
    f.decay = RadialProfile::Decay::gaussian;
    f.lambda_max = 8.0;
    f.fhat = [](double lam) { return std::exp(-lam * lam); };
    // matching physical profile: fhat(|xi|) = e^{-|xi|^2} corresponds to
    // f(x) = (2)^{-d/2} e^{-|x|^2/4} under the unitary transform
    f.physical = [dim](double r) {
        return std::pow(2.0, -0.5 * dim) * std::exp(-0.25 * r * r);
    };
    return f;
}

RadialProfile bump_profile(int dim) {
    RadialProfile f;
    f.dim = dim;
    f.decay = RadialProfile::Decay::algebraic;
    f.algebraic_rate = 0.5 * (dim + 1) + 3.0;  // (1-r^2)^3 transform decay
    f.lambda_max = 64.0;
    f.support_radius = 1.0;
    f.physical = [](double r) {
        const double q = 1.0 - r * r;
        return q > 0.0 ? q * q * q : 0.0;
    };
    const auto phys = f.physical;
    if (dim == 2) {
        f.fhat = [phys](double lam) {
            const auto& rule = gauss_legendre_rule(80);
            double acc = 0.0;
            for (int i = 0; i < rule.size(); ++i) {
                const double r = rule.nodes[i];
                acc += rule.weights[i] * phys(r) * detail::bessel_j0(lam * r) * r;
            }
            return acc;
        };
    } else if (dim == 3) {
        f.fhat = [phys](double lam) {
            const auto& rule = gauss_legendre_rule(80);
            double acc = 0.0;
            for (int i = 0; i < rule.size(); ++i) {
                const double r = rule.nodes[i];
                const double z = lam * r;
                const double sinc = (std::abs(z) < 1e-8) ? 1.0 - z * z / 6.0 : std::sin(z) / z;
                acc += rule.weights[i] * phys(r) * sinc * r * r;
            }
            return std::sqrt(2.0 / kPi) * acc;
        };
    } else {
        throw std::domain_error("bump_profile: dim must be 2 or 3");
    }
    return f;
}

namespace {

// adaptive integral of |fhat|^2 * (m0, m1) * lambda^{d-1} over (0, inf):
// octave panels + power-law extrapolation below lambda_min + decay-driven
// upper cutoff extension.
struct LambdaIntegrals {
    double v0 = 0.0, v1 = 0.0;
};

LambdaIntegrals integrate_modes(const RadialProfile& f,
                                const std::function<void(double, double*)>& mode2,
                                const LambdaQuadratureOptions& opt) {
    const int d = f.dim;
    const auto integrand = [&](double lam, double* out) {
        double m[2];
        mode2(lam, m);
        const double fh = f.fhat(lam);
        const double w = fh * fh * std::pow(lam, d - 1);
        out[0] = w * m[0];
        out[1] = w * m[1];
    };

    std::vector<double> edges;
    for (double x = opt.lambda_min; x < 1.0; x *= 4.0) edges.push_back(x);
    for (double x = 1.0; x < f.lambda_max * (1.0 - 1e-12); x *= 2.0) edges.push_back(x);
    edges.push_back(f.lambda_max);

    double acc[2] = {0.0, 0.0};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        detail::gk_adaptive_pair(integrand, edges[i], edges[i + 1], opt.rel_tol,
                                 opt.max_bisections, acc);

    // low tail (0, lambda_min): local power-law extrapolation per component
    double at1[2], at2[2];
    integrand(opt.lambda_min, at1);
    integrand(2.0 * opt.lambda_min, at2);
    for (int c = 0; c < 2; ++c) {
        if (at1[c] > 0.0 && at2[c] > 0.0) {
            const double q = std::log(at2[c] / at1[c]) / std::log(2.0);
            if (q > -0.999) acc[c] += at1[c] * opt.lambda_min / (q + 1.0);
        }
    }

    // upper tail: gaussian data need nothing past lambda_max = 8 (the weight
    // e^{-2 lambda^2} is ~1e-56 there); algebraic data get octave extensions
    // until the analytic tail bound drops below 1e-9 of the running value.
    if (f.decay == RadialProfile::Decay::algebraic) {
        double edge = f.lambda_max;
        for (int ext = 0; ext < 8; ++ext) {
            const double p2 = 2.0 * f.algebraic_rate;
            const double qtail = (d - 1) - p2;  // integrand envelope exponent (m bounded)
            if (qtail >= -1.0) break;
            double probe[2];
            integrand(edge, probe);
            const double bound = (std::abs(probe[0]) + std::abs(probe[1])) * edge / (-qtail - 1.0);
            if (bound < 1e-9 * (std::abs(acc[0]) + std::abs(acc[1]) + 1e-300)) break;
            detail::gk_adaptive_pair(integrand, edge, 2.0 * edge, opt.rel_tol,
                                     opt.max_bisections, acc);
            edge *= 2.0;
        }
    }
    return LambdaIntegrals{acc[0], acc[1]};
}

void check_regime(const FracParams& p) {
    if (p.dim == 2 && p.s == 0.0)
        throw std::domain_error("radial synthesis: s = 0 with d = 2 is outside the "
                                "admissible regime (lambda-integrand not integrable at 0)");
}

} // namespace

FieldNorms radial_functional(const RadialProfile& f, const FracParams& p, double Y,
                             ModeFunctional kind, double Y2,
                             const LambdaQuadratureOptions& opt) {
    check_regime(p);
    if (f.dim != p.dim)
        throw std::invalid_argument("radial_functional: datum and params dimension mismatch");
    if (kind == ModeFunctional::cauchy_difference) {
        if (!(Y2 > Y))
            throw std::invalid_argument("radial_functional: cauchy difference needs Y2 > Y");
    }
    FieldNorms out;
    out.s_coeff = p.s;
    if (kind == ModeFunctional::truncation_error && !std::isfinite(Y)) return out;

    const bool want_trace = (p.s > 0.0);
    const auto mode2 = [&](double lam, double* m) {
        ModeNorms mn;
        switch (kind) {
            case ModeFunctional::solution_norms: mn = mode_solution_norms(lam, Y, p); break;
            case ModeFunctional::truncation_error: mn = mode_truncation_error_exact(lam, Y, p); break;
            case ModeFunctional::cauchy_difference: mn = mode_cauchy_difference_exact(lam, Y, Y2, p); break;
        }
        m[0] = mn.energy;
        m[1] = want_trace ? mn.trace_sq : 0.0;
    };
    const LambdaIntegrals li = integrate_modes(f, mode2, opt);
    const double omega = surface_measure(p.dim);
    out.energy_sq = omega * li.v0;
    out.trace_sq = want_trace ? omega * li.v1 : 0.0;
    return out;
}

double fullspace_trace_symbol(const RadialProfile& f, const FracParams& p, double lambda) {
    if (p.s == 0.0 && lambda == 0.0)
        throw std::domain_error("fullspace_trace_symbol: s = 0 and lambda = 0");
    return f.fhat(lambda) / (p.s + std::pow(lambda, 2.0 * p.beta));
}

double datum_l2_sq(const RadialProfile& f, const LambdaQuadratureOptions& opt) {
    const auto mode2 = [&](double, double* m) {
        m[0] = 1.0;
        m[1] = 0.0;
    };
    const LambdaIntegrals li = integrate_modes(f, mode2, opt);
    return surface_measure(f.dim) * li.v0;
}

XregNorms xreg_norm_sq(const RadialProfile& f, const FracParams& p, int m,
                       const LambdaQuadratureOptions& opt) {
    check_regime(p);
    if (m < 0) throw std::domain_error("xreg_norm_sq: m must be nonnegative");
    const auto mode2 = [&](double lam, double* out) {
        const ModeNorms mn = mode_solution_norms(lam, infinite_cutoff, p);
        out[0] = std::pow(lam, 2.0 * m) * mn.energy;
        out[1] = std::pow(1.0 + lam * lam, m);
    };
    const LambdaIntegrals li = integrate_modes(f, mode2, opt);
    const double omega = surface_measure(p.dim);
    return XregNorms{omega * li.v0, omega * li.v1};
}

double regularity_lambda_moment(const RadialProfile& f, const FracParams& p, double eps,
                                const LambdaQuadratureOptions& opt) {
    check_regime(p);
    const auto mode2 = [&](double lam, double* out) {
        const double t = 1.0 / (p.s + std::pow(lam, 2.0 * p.beta));
        // lambda^{d-1} lives in integrate_modes; the extra factor is
        // lambda^{1 - alpha + 2 eps}
        out[0] = t * t * std::pow(lam, 1.0 - p.alpha + 2.0 * eps);
        out[1] = 0.0;
    };
    const LambdaIntegrals li = integrate_modes(f, mode2, opt);
    return surface_measure(p.dim) * li.v0;
}

std::vector<double> sample_radial_on_grid(const RadialProfile& f, int n, double box, int dim) {
    if (!f.physical)
        throw std::invalid_argument("sample_radial_on_grid: datum has no physical profile");
    std::vector<double> out;
    const double h = box / n;
    if (dim == 2) {
        out.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = -0.5 * box + i * h;
                const double y = -0.5 * box + j * h;
                out[static_cast<std::size_t>(i) * n + j] = f.physical(std::hypot(x, y));
            }
    } else if (dim == 3) {
        out.resize(static_cast<std::size_t>(n) * n * n);
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double x = -0.5 * box + i * h;
                    const double y = -0.5 * box + j * h;
                    const double z = -0.5 * box + k * h;
                    out[idx++] = f.physical(std::sqrt(x * x + y * y + z * z));
                }
    } else {
        throw std::domain_error("sample_radial_on_grid: dim must be 2 or 3");
    }
    return out;
}

} // namespace fracext
