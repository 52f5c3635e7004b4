#ifndef FRACEXT_LAB_HPP
#define FRACEXT_LAB_HPP

#include "fracext/params.hpp"
#include "fracext/synthesis.hpp"

#include <map>
#include <string>
#include <vector>

namespace fracext {

struct ExperimentRecord {
    double Y = 0.0;
    double error_sq = 0.0;
    FieldNorms norms;
    double wall_time_s = 0.0;
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of log-residuals
    DecayRate mu_expected{0.0};
    bool pass = false;
};

struct InequalityReport {
    std::string name;
    int trials = 0;
    double max_ratio = 0.0;
    bool violated = false;
};

/// Least squares of log(value) against log(Y); exact on power laws.
RateFit rate_fit(const std::vector<std::pair<double, double>>& points);

inline constexpr double kRateTolerance = 0.15;
inline constexpr double kCauchyRatioSlack = 0.1;
inline constexpr double kRegularityGrowthCap = 10.0;
inline constexpr double kStabilityCap = 10.0;

struct TruncationStudy {
    std::vector<ExperimentRecord> records;  // sorted by Y ascending
    RateFit fit;
};

/// Truncation-error decay study: error_sq(Y) for each cutoff, fitted rate,
/// PASS iff -slope >= mu - 0.15.
TruncationStudy truncation_study(const FracParams& p, const RadialProfile& f,
                                 std::vector<double> Ys);

struct CauchyStudy {
    double Y0 = 0.0;
    std::vector<double> D;       // D_n = ||U^{1.5 Y_n} - U^{Y_n}||, Y_n = 1.5^n Y0
    std::vector<double> ratios;  // D_{n+1}/D_n
    double ratio_bound = 0.0;    // (2/3)^{mu/2} + 0.1
    double degenerate_floor = 0.0;
    bool pass = false;
};

CauchyStudy cauchy_study(const FracParams& p, const RadialProfile& f, double Y0, int n_max);

struct RegularityProbe {
    std::vector<int> ell;        // 0..ell_max
    std::vector<double> r;       // weighted derivative norms r_ell
    std::vector<double> growth;  // g_ell = r_{ell+1}/((ell+1) r_ell), ell = 1..ell_max-1
    double eps = 0.0;
    double k_cap = kRegularityGrowthCap;
    bool trend_ok = true;
    bool pass = false;
};

/// Full-space weighted derivative norms r_ell = ||y^{ell-eps} grad d_y^ell U||
/// assembled from the mode oracle; PASS iff max growth ratio <= k_cap with no
/// monotone blow-up trend.
RegularityProbe regularity_probe(const FracParams& p, const RadialProfile& f, int ell_max,
                                 double eps);

/// Default probe shift: eps = min(1+alpha, 1-alpha)/4.
double default_regularity_eps(const FracParams& p);

/// Seeded randomized checks of the trace, Poincare and Hardy inequalities and
/// of the stability bound; zero violations required for a PASS suite.
std::vector<InequalityReport> inequality_suite(unsigned seed, int trials);

/// key = value configuration text; '#' starts a comment. Unknown keys throw.
std::map<std::string, std::string> parse_config(const std::string& text);

} // namespace fracext

#endif
