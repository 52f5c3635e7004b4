#include "fracext/lab.hpp"
#include "fracext/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

fracext::ReportFormat parse_format(const std::string& s) {
    if (s == "csv") return fracext::ReportFormat::csv;
    if (s == "svg") return fracext::ReportFormat::svg;
    return fracext::ReportFormat::both;
}

fracext::RadialProfile make_datum(const std::string& name, int dim) {
    if (name == "bump") return fracext::bump_profile(dim);
    return fracext::gaussian_profile(dim);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated Caffarelli-Silvestre extension laboratory: per-mode hp solves,\n"
                 "decay-rate studies and inequality suites for full-space fractional diffusion"};
    app.set_config("--config", "", "key = value configuration file ('#' comments)");
    app.require_subcommand(1);

    double beta = 0.5;
    double s = 1.0;
    int dim = 3;
    std::vector<double> ylist = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
    std::string datum = "gaussian";
    double eps = 0.0;  // 0 = default min(1-alpha, 1+alpha)/4
    unsigned seed = 42;
    std::string out_dir = "out";
    std::string format = "csv";
    double y0 = 1.0;
    int n_max = 6;
    int ell_max = 8;
    int trials = 1000;
    double lambda = 1.0;

    app.add_option("--beta", beta, "fractional power in (0,1)")->check(CLI::Range(1e-9, 1.0));
    app.add_option("--s", s, "zeroth-order coefficient, >= 0");
    app.add_option("--dim", dim, "spatial dimension")->check(CLI::IsMember({2, 3}));
    app.add_option("--y-list", ylist, "truncation cutoffs");
    app.add_option("--f", datum, "radial datum")->check(CLI::IsMember({"gaussian", "bump"}));
    app.add_option("--eps", eps, "regularity shift (0 picks min(1-alpha,1+alpha)/4)");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "svg", "both"}));

    CLI::App* cmd_solve = app.add_subcommand("solve", "solution norms at the first cutoff");
    cmd_solve->add_option("--lambda", lambda, "single mode frequency (reported alongside)");
    CLI::App* cmd_trunc = app.add_subcommand("truncation-study",
                                             "error_sq(Y) decay vs the proven rate Y^{-mu}");
    CLI::App* cmd_reg = app.add_subcommand("regularity-probe",
                                           "weighted derivative growth ratios");
    cmd_reg->add_option("--ell-max", ell_max, "highest derivative index")->check(CLI::Range(1, 8));
    CLI::App* cmd_cauchy = app.add_subcommand("cauchy-study",
                                              "successive difference norms on 1.5^n Y0");
    cmd_cauchy->add_option("--y0", y0, "initial cutoff");
    cmd_cauchy->add_option("--n-max", n_max, "number of 1.5x steps")->check(CLI::Range(3, 40));
    CLI::App* cmd_ineq = app.add_subcommand("inequality-suite",
                                            "randomized trace/Poincare/Hardy/stability checks");
    cmd_ineq->add_option("--trials", trials, "trials per inequality")->check(CLI::Range(100, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const fracext::FracParams params = fracext::FracParams::make(beta, s, dim);
        const fracext::RadialProfile f = make_datum(datum, dim);
        const fracext::ReportFormat fmt = parse_format(format);
        bool pass = true;

        if (*cmd_solve) {
            const double Y = ylist.empty() ? 1.0 : ylist.front();
            const fracext::FieldNorms norms =
                fracext::radial_functional(f, params, Y, fracext::ModeFunctional::solution_norms);
            fracext::write_solve_report(norms, Y, out_dir);
            std::printf("solve: Y=%g energy_sq=%.12g trace_sq=%.12g combined=%.12g\n", Y,
                        norms.energy_sq, norms.trace_sq, norms.combined());
            std::printf("solve: mode lambda=%g dtn=%.12g trace_symbol=%.12g\n", lambda,
                        fracext::dtn_symbol(lambda, Y, params),
                        fracext::fullspace_trace_symbol(f, params, lambda));
        } else if (*cmd_trunc) {
            const fracext::TruncationStudy study = fracext::truncation_study(params, f, ylist);
            fracext::write_truncation_report(study, out_dir, fmt);
            pass = study.fit.pass;
            std::printf("truncation-study: slope=%.4f mu=%.3f residual=%.3g %s\n",
                        study.fit.slope, study.fit.mu_expected.mu, study.fit.residual,
                        pass ? "PASS" : "FAIL");
        } else if (*cmd_reg) {
            const double e = (eps > 0.0) ? eps : fracext::default_regularity_eps(params);
            const fracext::RegularityProbe probe =
                fracext::regularity_probe(params, f, ell_max, e);
            fracext::write_regularity_report(probe, out_dir, fmt);
            pass = probe.pass;
            double gmax = 0.0;
            for (double g : probe.growth) gmax = std::max(gmax, g);
            std::printf("regularity-probe: eps=%.4f max_growth=%.4f cap=%.1f %s\n", e, gmax,
                        probe.k_cap, pass ? "PASS" : "FAIL");
        } else if (*cmd_cauchy) {
            const fracext::CauchyStudy study = fracext::cauchy_study(params, f, y0, n_max);
            fracext::write_cauchy_report(study, out_dir, fmt);
            pass = study.pass;
            std::printf("cauchy-study: bound=%.4f %s\n", study.ratio_bound,
                        pass ? "PASS" : "FAIL");
        } else if (*cmd_ineq) {
            const auto reports = fracext::inequality_suite(seed, trials);
            fracext::write_inequality_report(reports, out_dir);
            for (const auto& r : reports) {
                if (r.violated) pass = false;
                std::printf("inequality %-12s trials=%-6d max_ratio=%.6g %s\n", r.name.c_str(),
                            r.trials, r.max_ratio, r.violated ? "FAIL" : "PASS");
            }
        }
        return pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
