#include "fracext/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace fracext {

namespace {

constexpr double kEps = 1.0e-16;
constexpr double kFpMin = 1.0e-300;
constexpr int kMaxIter = 20000;
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)]/(2 mu), gam2 = [.. + ..]/2,
// gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu).  |mu| <= 1/2.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    gampl = 1.0 / std::tgamma(1.0 + mu);
    gammi = 1.0 / std::tgamma(1.0 - mu);
    gam2 = 0.5 * (gammi + gampl);
    if (std::abs(mu) < 1.0e-4) {
        // removable singularity: third-order coefficient of 1/Gamma(1+mu)
        const double b3 = kEulerGamma * kEulerGamma * kEulerGamma / 6.0
                          - kEulerGamma * kPi * kPi / 12.0
                          + 0.400685634386531428466579387102;  // zeta(3)/3
        gam1 = -kEulerGamma - b3 * mu * mu;
    } else {
        gam1 = (gammi - gampl) / (2.0 * mu);
    }
}

} // namespace

BesselPair bessel_ik(double nu, double x) {
    if (!(nu > 0.0 && nu < 1.0))
        throw std::domain_error("bessel_ik: order must lie in (0,1)");
    if (!(x > 0.0))
        throw std::domain_error("bessel_ik: argument must be positive");
    if (x > 600.0)
        throw std::overflow_error("bessel_ik: argument above overflow guard 600");

    const int nl = static_cast<int>(nu + 0.5);  // 0 or 1; reduces to |mu| <= 1/2
    const double mu = nu - nl;
    const double mu2 = mu * mu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;

    // CF1 for I'_nu/I_nu
    double h = nu * xi;
    if (h < kFpMin) h = kFpMin;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    for (int i = 0;; ++i) {
        if (i >= kMaxIter) throw std::runtime_error("bessel_ik: CF1 failed to converge");
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    double ril = kFpMin;  // scaled I_nu
    double ripl = h * ril;
    const double ril1 = ril;
    const double rip1 = ripl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    const double f = ripl / ril;  // I'_mu/I_mu

    double rkmu, rk1;
    if (x < 2.0) {
        // Temme's series for K_mu, K_{mu+1}
        const double x2 = 0.5 * x;
        const double pimu = kPi * mu;
        const double fct = (std::abs(pimu) < kEps) ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = mu * dd;
        const double fact2 = (std::abs(e) < kEps) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gammas(mu, gam1, gam2, gampl, gammi);
        double ff = fct * (gam1 * std::cosh(e) + gam2 * fact2 * dd);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl;
        double q = 0.5 / (e * gammi);
        double cc = 1.0;
        dd = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (;; ++i) {
            if (i > kMaxIter) throw std::runtime_error("bessel_ik: Temme series failed to converge");
            ff = (i * ff + p + q) / (i * i - mu2);
            cc *= dd / i;
            p /= (i - mu);
            q /= (i + mu);
            const double del = cc * ff;
            sum += del;
            const double del1 = cc * (p - i * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        // Steed's CF2 for K_mu
        b = 2.0 * (1.0 + x);
        d = 1.0 / b;
        double delh = d;
        h = delh;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - mu2;
        double q = a1;
        c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        for (int i = 2;; ++i) {
            if (i > kMaxIter) throw std::runtime_error("bessel_ik: CF2 failed to converge");
            a -= 2.0 * (i - 1);
            c = -a * c / i;
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        h = a1 * h;
        rkmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
        rk1 = rkmu * (mu + x + 0.5 - h) * xi;
    }

    const double rkmup = mu * xi * rkmu - rk1;
    const double rimu = xi / (f * rkmu - rkmup);  // Wronskian I K' - I' K = -1/x

    BesselPair out;
    out.nu = nu;
    out.x = x;
    out.I = rimu * ril1 / ril;
    out.Ip = rimu * rip1 / ril;
    for (int i = 1; i <= nl; ++i) {
        const double rktemp = (mu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    out.K = rkmu;
    out.Kp = nu * xi * rkmu - rk1;
    return out;
}

namespace detail {

double bessel_i_series(double b, double x) {
    if (!(b > -1.0))
        throw std::domain_error("bessel_i_series: order must be > -1");
    if (!(x > 0.0 && x <= 600.0))
        throw std::domain_error("bessel_i_series: argument out of range");
    const double q = 0.25 * x * x;
    double term = std::pow(0.5 * x, b) / std::tgamma(b + 1.0);
    double sum = term;
    for (int k = 1; k <= kMaxIter; ++k) {
        term *= q / (k * (b + k));
        sum += term;
        if (term < sum * kEps && k > 0.5 * x) return sum;
    }
    throw std::runtime_error("bessel_i_series: failed to converge");
}

double bessel_k_order(double b, double x) {
    double ab = std::abs(b);  // K_{-v} = K_v
    const double fl = std::floor(ab);
    double mu = ab - fl;
    int n = static_cast<int>(fl);
    if (mu == 0.0) {
        // integer orders do not occur for fractional powers in (0,1); fall
        // back to the half-shifted recurrence base
        throw std::domain_error("bessel_k_order: integer order not supported");
    }
    BesselPair base = bessel_ik(mu, x);
    double km = base.K;                            // K_mu
    double kp = mu / x * base.K - base.Kp;         // K_{mu+1}
    for (int j = 0; j < n; ++j) {
        const double knext = km + 2.0 * (mu + j + 1.0) / x * kp;
        km = kp;
        kp = knext;
    }
    return km;
}

double bessel_i_order(double b, double x) {
    if (b > -1.0) return bessel_i_series(b, x);
    // I_{-v} = I_v + (2/pi) sin(pi v) K_v with v = -b > 1
    const double v = -b;
    return bessel_i_series(v, x) + (2.0 / kPi) * std::sin(kPi * v) * bessel_k_order(v, x);
}

} // namespace detail

} // namespace fracext
