#include "fracext/mode_profile.hpp"

#include "fracext/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fracext {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kOverflowArg = 600.0;

double g_at_zero(double beta) { return std::exp2(beta - 1.0) * std::tgamma(beta); }

// Robin normalization constants: c_K G - c_I H = fhat, where
// G = 2^{b-1} Gamma(b) (s + lam^{2b}) and H = lam^{2b} 2^b / Gamma(1-b).
double robin_G(double lambda, const FracParams& p) {
    return g_at_zero(p.beta) * (p.s + std::pow(lambda, 2.0 * p.beta));
}

double robin_H(double lambda, const FracParams& p) {
    return std::pow(lambda, 2.0 * p.beta) * std::exp2(p.beta) / std::tgamma(1.0 - p.beta);
}

} // namespace

namespace detail {

GHPair bessel_gh(double beta, double z) {
    const BesselPair at_b = bessel_ik(beta, z);
    const double zb = std::pow(z, beta);
    GHPair out;
    out.g = zb * at_b.K;
    out.h = zb * at_b.I;
    if (beta == 0.5) {
        // order symmetry: K_{1/2} = K_{1-1/2}, I_{-1/2} from the reflection
        out.gp = -zb * at_b.K;
        out.hp = zb * (at_b.I + (2.0 / kPi) * at_b.K);
        return out;
    }
    const BesselPair at_c = bessel_ik(1.0 - beta, z);
    const double i_bm1 = at_c.I + (2.0 / kPi) * std::sin(kPi * (1.0 - beta)) * at_c.K;
    out.gp = -zb * at_c.K;     // d/dz [z^b K_b] = -z^b K_{b-1},  K_{b-1} = K_{1-b}
    out.hp = zb * i_bm1;       // d/dz [z^b I_b] =  z^b I_{b-1}
    return out;
}

double neumann_ratio(double beta, double z) {
    if (beta == 0.5) {
        // -K_{1/2}/I_{-1/2} = -(pi/2) e^{-z}/cosh(z), written overflow-safe
        const double em = std::exp(-z);
        return -kPi * em * em / (1.0 + em * em);
    }
    const BesselPair at_c = bessel_ik(1.0 - beta, z);
    const double i_bm1 = at_c.I + (2.0 / kPi) * std::sin(kPi * (1.0 - beta)) * at_c.K;
    return -at_c.K / i_bm1;
}

double integrate_graded(const std::function<double(double)>& f, double b,
                        int layers, int nodes_per_panel) {
    const QuadratureRule& rule = gauss_legendre_rule(nodes_per_panel);
    double upper = b;
    double acc = 0.0;
    for (int k = 0; k < layers; ++k) {
        const double lower = 0.5 * upper;
        for (int i = 0; i < rule.size(); ++i)
            acc += rule.weights[i] * f(lower + (upper - lower) * rule.nodes[i]) * (upper - lower);
        upper = lower;
    }
    // power-law tail on (0, upper): estimate the local exponent numerically
    const double f1 = f(upper);
    if (f1 > 0.0) {
        const double f2 = f(2.0 * upper);
        if (f2 > 0.0) {
            const double q = std::log(f2 / f1) / std::log(2.0);
            if (q > -0.999) acc += f1 * upper / (q + 1.0);
        }
    }
    return acc;
}

} // namespace detail

ModeProfile fullspace_mode_profile(double lambda, const FracParams& p, double fhat) {
    if (!(lambda > 0.0))
        throw std::domain_error("fullspace_mode_profile: lambda must be positive");
    ModeProfile prof;
    prof.lambda = lambda;
    prof.params = p;
    prof.cutoff = infinite_cutoff;
    prof.fhat = fhat;
    prof.c_K = fhat / robin_G(lambda, p);
    prof.c_I = 0.0;
    return prof;
}

ModeProfile truncated_mode_profile(double lambda, double Y, const FracParams& p, double fhat) {
    if (!(lambda > 0.0))
        throw std::domain_error("truncated_mode_profile: lambda must be positive");
    if (!(Y > 0.0))
        throw std::domain_error("truncated_mode_profile: Y must be positive");
    if (!std::isfinite(Y)) return fullspace_mode_profile(lambda, p, fhat);
    if (lambda * Y > kOverflowArg) {
        ModeProfile prof = fullspace_mode_profile(lambda, p, fhat);
        prof.cutoff = Y;  // c_I below double precision; Neumann defect ~ e^{-2 lam Y}
        return prof;
    }
    const double r = detail::neumann_ratio(p.beta, lambda * Y);
    const double G = robin_G(lambda, p);
    const double H = robin_H(lambda, p);
    ModeProfile prof;
    prof.lambda = lambda;
    prof.params = p;
    prof.cutoff = Y;
    prof.fhat = fhat;
    prof.c_K = fhat / (G + r * H);
    prof.c_I = -r * prof.c_K;
    return prof;
}

double dtn_symbol(double lambda, double Y, const FracParams& p) {
    if (!(lambda > 0.0))
        throw std::domain_error("dtn_symbol: lambda must be positive");
    const double full = std::pow(lambda, 2.0 * p.beta);
    if (!std::isfinite(Y) || lambda * Y > kOverflowArg) return full;
    if (!(Y > 0.0))
        throw std::domain_error("dtn_symbol: Y must be positive");
    const double r = detail::neumann_ratio(p.beta, lambda * Y);
    return full * (1.0 + (2.0 * std::sin(kPi * p.beta) / kPi) * r);
}

double mode_profile_eval(const ModeProfile& prof, double y) {
    if (!(y > 0.0)) return mode_trace(prof);
    const double z = prof.lambda * y;
    if (z > kOverflowArg)
        throw std::overflow_error("mode_profile_eval: lambda*y above overflow guard");
    const detail::GHPair gh = detail::bessel_gh(prof.params.beta, z);
    return prof.c_K * gh.g + prof.c_I * gh.h;
}

double mode_trace(const ModeProfile& prof) {
    return prof.c_K * g_at_zero(prof.params.beta);
}

ModeNorms mode_solution_norms(double lambda, double Y, const FracParams& p) {
    if (lambda == 0.0) {
        if (!(p.s > 0.0))
            throw std::domain_error("mode_solution_norms: lambda = 0 requires s > 0");
        return ModeNorms{0.0, 1.0 / (p.s * p.s)};
    }
    const double a = dtn_symbol(lambda, Y, p);
    const double t = 1.0 / (p.s + a);
    return ModeNorms{p.d_beta * a * t * t, t * t};
}

ModeNorms mode_truncation_error_exact(double lambda, double Y, const FracParams& p) {
    if (!std::isfinite(Y)) return ModeNorms{};
    if (lambda == 0.0) {
        if (!(p.s > 0.0))
            throw std::domain_error("mode_truncation_error_exact: lambda = 0 requires s > 0");
        return ModeNorms{};  // both solutions equal the constant fhat/s
    }
    const double Z = lambda * Y;
    if (Z > kOverflowArg) return ModeNorms{};  // bounded by C e^{-2 lam Y}
    const double r = detail::neumann_ratio(p.beta, Z);
    const double G = robin_G(lambda, p);
    const double H = robin_H(lambda, p);
    // p(y) = w_Y - w_inf = cKd g(lam y) + cId h(lam y), both coefficients > 0
    const double cKd = -r * H / (G * (G + r * H));
    const double cId = -r / (G + r * H);
    const double al = p.alpha;
    const auto integrand = [&](double y) {
        const detail::GHPair gh = detail::bessel_gh(p.beta, lambda * y);
        const double v = cKd * gh.g + cId * gh.h;
        const double dv = lambda * (cKd * gh.gp + cId * gh.hp);
        return std::pow(y, al) * (dv * dv + lambda * lambda * v * v);
    };
    ModeNorms out;
    out.energy = detail::integrate_graded(integrand, Y);
    const double dt = cKd * g_at_zero(p.beta);
    out.trace_sq = dt * dt;
    return out;
}

double mode_truncation_error_boundary(double lambda, double Y, const FracParams& p) {
    if (!std::isfinite(Y) || lambda * Y > kOverflowArg) return 0.0;
    const double Z = lambda * Y;
    const double r = detail::neumann_ratio(p.beta, Z);
    const double G = robin_G(lambda, p);
    const double H = robin_H(lambda, p);
    const double g0 = g_at_zero(p.beta);
    const double dt = -r * H / (G * (G + r * H)) * g0;
    const double t_inf = g0 / G;
    const BesselPair at_b = bessel_ik(p.beta, Z);
    const BesselPair at_c = bessel_ik(1.0 - p.beta, Z);
    // T = -Y^alpha w_inf'(Y) w_inf(Y), w_inf = (t_inf/g0) g(lam y)
    const double T = std::pow(Y, p.alpha) * lambda * t_inf * t_inf / (g0 * g0)
                     * std::pow(Z, 2.0 * p.beta) * at_b.K * at_c.K;
    return p.d_beta * (dt - p.s * dt * dt) - T;
}

ModeNorms mode_cauchy_difference_exact(double lambda, double Y1, double Y2, const FracParams& p) {
    if (!(Y1 > 0.0) || !std::isfinite(Y1))
        throw std::domain_error("mode_cauchy_difference_exact: Y1 must be finite positive");
    if (!(Y2 > Y1))
        throw std::domain_error("mode_cauchy_difference_exact: Y2 must exceed Y1");
    if (lambda == 0.0) {
        if (!(p.s > 0.0))
            throw std::domain_error("mode_cauchy_difference_exact: lambda = 0 requires s > 0");
        return ModeNorms{};
    }
    if (lambda * Y1 > kOverflowArg) return ModeNorms{};
    const double r1 = detail::neumann_ratio(p.beta, lambda * Y1);
    const double r2 = (lambda * Y2 > kOverflowArg) ? 0.0 : detail::neumann_ratio(p.beta, lambda * Y2);
    const double G = robin_G(lambda, p);
    const double H = robin_H(lambda, p);
    const double dr = r1 - r2;  // < 0
    const double denom = (G + r1 * H) * (G + r2 * H);
    const double dcK = H * dr / denom;
    const double dcI = G * dr / denom;
    const double al = p.alpha;
    const auto integrand = [&](double y) {
        const detail::GHPair gh = detail::bessel_gh(p.beta, lambda * y);
        const double v = dcK * gh.g + dcI * gh.h;
        const double dv = lambda * (dcK * gh.gp + dcI * gh.hp);
        return std::pow(y, al) * (dv * dv + lambda * lambda * v * v);
    };
    ModeNorms out;
    out.energy = detail::integrate_graded(integrand, Y1);
    const double dt = dcK * g_at_zero(p.beta);
    out.trace_sq = dt * dt;
    return out;
}

// ---- symbolic derivative machinery ------------------------------------

namespace {

// one term coef * z^{beta+da} * C_{beta+db}(z), kind K or I
struct BTerm {
    double coef;
    int da;  // power offset from beta
    int db;  // order offset from beta
    bool isK;
};

using TermList = std::vector<BTerm>;

// d/dz [z^a C_b] = a z^{a-1} C_b + z^a C_b',
// K_b' = -(K_{b-1}+K_{b+1})/2,  I_b' = (I_{b-1}+I_{b+1})/2
TermList differentiate_terms(const TermList& in, double beta) {
    std::map<std::tuple<int, int, bool>, double> acc;
    for (const BTerm& t : in) {
        const double a = beta + t.da;
        acc[{t.da - 1, t.db, t.isK}] += t.coef * a;
        if (t.isK) {
            acc[{t.da, t.db - 1, true}] += -0.5 * t.coef;
            acc[{t.da, t.db + 1, true}] += -0.5 * t.coef;
        } else {
            acc[{t.da, t.db - 1, false}] += 0.5 * t.coef;
            acc[{t.da, t.db + 1, false}] += 0.5 * t.coef;
        }
    }
    TermList out;
    out.reserve(acc.size());
    for (const auto& [key, c] : acc) {
        if (c == 0.0) continue;
        out.push_back(BTerm{c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    }
    return out;
}

// K_{beta+m} and I_{beta+m} for m in [-mmax, mmax] at argument z
struct OrderTable {
    double beta, z;
    int mmax;
    std::vector<double> K;  // index m + mmax
    std::vector<double> I;
    double getK(int m) const { return K[m + mmax]; }
    double getI(int m) const { return I[m + mmax]; }
};

OrderTable build_order_table(double beta, double z, int mmax) {
    OrderTable tab;
    tab.beta = beta;
    tab.z = z;
    tab.mmax = mmax;
    tab.K.resize(2 * mmax + 1);
    tab.I.resize(2 * mmax + 1);
    for (int m = -mmax; m <= mmax; ++m) {
        const double order = beta + m;
        tab.K[m + mmax] = detail::bessel_k_order(order, z);
        tab.I[m + mmax] = detail::bessel_i_order(order, z);
    }
    return tab;
}

double eval_terms(const TermList& terms, const OrderTable& tab) {
    double sum = 0.0;
    for (const BTerm& t : terms) {
        const double zfac = std::pow(tab.z, tab.beta + t.da);
        const double bess = t.isK ? tab.getK(t.db) : tab.getI(t.db);
        sum += t.coef * zfac * bess;
    }
    return sum;
}

// cache of derivative term lists for g = z^b K_b and h = z^b I_b
const TermList& g_derivative_terms(double beta, int ell) {
    thread_local std::map<std::pair<double, int>, TermList> cache;
    auto it = cache.find({beta, ell});
    if (it != cache.end()) return it->second;
    TermList t{BTerm{1.0, 0, 0, true}};
    for (int k = 0; k < ell; ++k) t = differentiate_terms(t, beta);
    return cache.emplace(std::make_pair(beta, ell), std::move(t)).first->second;
}

const TermList& h_derivative_terms(double beta, int ell) {
    thread_local std::map<std::pair<double, int>, TermList> cache;
    auto it = cache.find({beta, ell});
    if (it != cache.end()) return it->second;
    TermList t{BTerm{1.0, 0, 0, false}};
    for (int k = 0; k < ell; ++k) t = differentiate_terms(t, beta);
    return cache.emplace(std::make_pair(beta, ell), std::move(t)).first->second;
}

} // namespace

double mode_profile_derivative(const ModeProfile& prof, int ell, double y) {
    if (ell < 0 || ell > 12)
        throw std::domain_error("mode_profile_derivative: derivative depth capped at 12");
    if (!(y > 0.0))
        throw std::domain_error("mode_profile_derivative: y must be positive");
    if (ell == 0) return mode_profile_eval(prof, y);
    const double z = prof.lambda * y;
    if (z > kOverflowArg)
        throw std::overflow_error("mode_profile_derivative: lambda*y above overflow guard");
    const double beta = prof.params.beta;
    const OrderTable tab = build_order_table(beta, z, ell + 1);
    double v = prof.c_K * eval_terms(g_derivative_terms(beta, ell), tab);
    if (prof.c_I != 0.0) v += prof.c_I * eval_terms(h_derivative_terms(beta, ell), tab);
    return v * std::pow(prof.lambda, ell);
}

double mode_regularity_moment(const FracParams& p, int ell, double eps) {
    if (ell < 0 || ell + 1 > 12)
        throw std::domain_error("mode_regularity_moment: derivative depth capped at 12");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("mode_regularity_moment: eps must lie in (0,1)");
    const double beta = p.beta;
    const double g0 = g_at_zero(beta);
    const TermList& lo = g_derivative_terms(beta, ell);
    const TermList& hi = g_derivative_terms(beta, ell + 1);
    const double wexp = 2.0 * (ell - eps) + p.alpha;
    const auto integrand = [&](double u) {
        const OrderTable tab = build_order_table(beta, u, ell + 2);
        const double dlo = eval_terms(lo, tab) / g0;
        const double dhi = eval_terms(hi, tab) / g0;
        return std::pow(u, wexp) * (dhi * dhi + dlo * dlo);
    };
    // graded panels into 0 from u = 1 (overflow-safe down to ~1e-12), then
    // fixed panels outward while contributions matter
    double acc = detail::integrate_graded(integrand, 1.0, 40, 14);
    const QuadratureRule& rule = gauss_legendre_rule(16);
    double a = 1.0;
    const double width = 2.0;
    for (int panel = 0; panel < 200; ++panel) {
        double part = 0.0;
        for (int i = 0; i < rule.size(); ++i)
            part += rule.weights[i] * integrand(a + width * rule.nodes[i]) * width;
        acc += part;
        a += width;
        if (part < 1e-14 * acc && a > 2.0 * ell + 10.0) break;
    }
    return acc;
}

} // namespace fracext
