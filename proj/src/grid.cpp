#include "fracext/synthesis.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace fracext {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct ModeCacheEntry {
    double energy;
    double trace_sq;
    double tsym;  // 1/(s + a_Y(lambda))
};

} // namespace

GridField grid_synthesize(const std::vector<double>& samples, int n, double box,
                          const FracParams& p, double Y) {
    const int d = p.dim;
    if (!(p.s > 0.0))
        throw std::domain_error("grid_synthesize: the k = 0 box mode requires s > 0");
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid_synthesize: n must be a power of two");
    const std::size_t total = (d == 2) ? static_cast<std::size_t>(n) * n
                                       : static_cast<std::size_t>(n) * n * n;
    if (samples.size() != total)
        throw std::invalid_argument("grid_synthesize: sample count must be n^dim");

    std::vector<std::complex<double>> work(total);
    for (std::size_t i = 0; i < total; ++i) work[i] = samples[i];

    fftw_plan fwd, bwd;
    auto* ptr = reinterpret_cast<fftw_complex*>(work.data());
    if (d == 2)
        fwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    else
        fwd = fftw_plan_dft_3d(n, n, n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);

    const double dxi = 2.0 * kPi / box;
    const double nyq = kPi * n / box;
    const double invN = 1.0 / static_cast<double>(total);

    std::map<long, ModeCacheEntry> cache;
    const auto mode_entry = [&](long ksq) -> const ModeCacheEntry& {
        auto it = cache.find(ksq);
        if (it != cache.end()) return it->second;
        ModeCacheEntry e;
        if (ksq == 0) {
            e.energy = 0.0;
            e.trace_sq = 1.0 / (p.s * p.s);
            e.tsym = 1.0 / p.s;
        } else {
            const double lam = dxi * std::sqrt(static_cast<double>(ksq));
            const ModeNorms mn = mode_solution_norms(lam, Y, p);
            e.energy = mn.energy;
            e.trace_sq = mn.trace_sq;
            e.tsym = 1.0 / (p.s + dtn_symbol(lam, Y, p));
        }
        return cache.emplace(ksq, e).first->second;
    };

    const auto signed_index = [n](int k) { return (k < n / 2) ? k : k - n; };

    double energy = 0.0, trace_sq = 0.0;
    double mass_total = 0.0, mass_beyond = 0.0;
    const double boxd = std::pow(box, d);

    std::vector<std::complex<double>> trace_hat(total);
    const auto visit = [&](std::size_t flat, long ksq) {
        const ModeCacheEntry& e = mode_entry(ksq);
        const double c2 = std::norm(work[flat] * invN);
        energy += c2 * e.energy;
        trace_sq += c2 * e.trace_sq;
        trace_hat[flat] = work[flat] * e.tsym;
        const double m = std::norm(work[flat]);
        mass_total += m;
        const double lam = dxi * std::sqrt(static_cast<double>(ksq));
        if (lam > nyq) mass_beyond += m;
    };

    if (d == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const long ki = signed_index(i), kj = signed_index(j);
                visit(static_cast<std::size_t>(i) * n + j, ki * ki + kj * kj);
            }
    } else {
        std::size_t flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k, ++flat) {
                    const long ki = signed_index(i), kj = signed_index(j), kk = signed_index(k);
                    visit(flat, ki * ki + kj * kj + kk * kk);
                }
    }

    auto* tptr = reinterpret_cast<fftw_complex*>(trace_hat.data());
    if (d == 2)
        bwd = fftw_plan_dft_2d(n, n, tptr, tptr, FFTW_BACKWARD, FFTW_ESTIMATE);
    else
        bwd = fftw_plan_dft_3d(n, n, n, tptr, tptr, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(bwd);
    fftw_destroy_plan(bwd);

    GridField out;
    out.norms.energy_sq = boxd * energy;
    out.norms.trace_sq = boxd * trace_sq;
    out.norms.s_coeff = p.s;
    out.trace.resize(total);
    for (std::size_t i = 0; i < total; ++i) out.trace[i] = trace_hat[i].real() * invN;
    out.beyond_nyquist_fraction = (mass_total > 0.0) ? mass_beyond / mass_total : 0.0;
    out.aliasing_warning = out.beyond_nyquist_fraction > 1e-6;
    return out;
}

} // namespace fracext
