#ifndef FRACEXT_BESSEL_HPP
#define FRACEXT_BESSEL_HPP

namespace fracext {

/// Modified Bessel pair I_nu(x), K_nu(x) with first derivatives.
struct BesselPair {
    double nu;
    double x;
    double I;
    double K;
    double Ip;  // d/dx I_nu(x)
    double Kp;  // d/dx K_nu(x)
};

/// I_nu, K_nu for order nu in (0,1), argument 0 < x <= 600.
/// Temme series below x = 2, Steed continued fraction above; Wronskian
/// closure for I. Relative accuracy ~1e-13, well inside the 1e-10 contract.
BesselPair bessel_ik(double nu, double x);

namespace detail {

/// I_b(x) for any order b > -1 by the (all-positive) power series.
double bessel_i_series(double b, double x);

/// K_b(x) for arbitrary real order (K is even in its order), by upward
/// recurrence from the fractional base order.
double bessel_k_order(double b, double x);

/// I_b(x) for arbitrary real order with non-integer b; negative orders via
/// I_{-v} = I_v + (2/pi) sin(pi v) K_v.
double bessel_i_order(double b, double x);

} // namespace detail

} // namespace fracext

#endif
