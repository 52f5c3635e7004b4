#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracext/lab.hpp"
#include "fracext/piecewise.hpp"
#include "fracext/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace fracext;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("rate_fit is exact on power laws") {
    const RateFit two = rate_fit({{1.0, 1.0}, {2.0, std::pow(2.0, -3.0)}});
    CHECK(two.slope == doctest::Approx(-3.0).epsilon(1e-13));

    const RateFit flat = rate_fit({{1.0, 5.0}, {2.0, 5.0}, {4.0, 5.0}});
    CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(flat.residual == doctest::Approx(0.0).epsilon(1e-13));

    // synthetic records error_sq = 7 Y^{-1.5}
    std::vector<std::pair<double, double>> pts;
    for (double Y : {1.0, 2.0, 4.0, 8.0, 16.0}) pts.emplace_back(Y, 7.0 * std::pow(Y, -1.5));
    const RateFit f = rate_fit(pts);
    CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
}

TEST_CASE("rate_fit under 1% multiplicative noise") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> noise(-0.01, 0.01);
    std::vector<std::pair<double, double>> pts;
    for (double Y : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
        pts.emplace_back(Y, 2.0 * std::pow(Y, -1.2) * (1.0 + noise(rng)));
    CHECK(rate_fit(pts).slope == doctest::Approx(-1.2).epsilon(0.05 / 1.2));
}

TEST_CASE("rate_fit guards") {
    CHECK_THROWS_AS(rate_fit({{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(rate_fit({{1.0, 1.0}, {2.0, 0.0}}), std::domain_error);
    CHECK_THROWS_AS(rate_fit({{1.0, 1.0}, {1.0, 2.0}}), std::domain_error);
}

TEST_CASE("small truncation study passes the rate check") {
    const FracParams p = FracParams::make(0.5, 1.0, 3);
    const TruncationStudy study = truncation_study(p, gaussian_profile(3), {1.0, 2.0, 4.0, 8.0});
    CHECK(study.records.size() == 4);
    CHECK(study.fit.mu_expected.mu == doctest::Approx(1.0));
    CHECK(study.fit.pass);
    CHECK(-study.fit.slope >= 0.85);
    // records sorted by Y, errors positive decreasing
    for (std::size_t i = 0; i + 1 < study.records.size(); ++i) {
        CHECK(study.records[i].Y < study.records[i + 1].Y);
        CHECK(study.records[i].error_sq > study.records[i + 1].error_sq);
    }
    CHECK_THROWS_AS(truncation_study(p, gaussian_profile(3), {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("cauchy study: geometric contraction and deep-tail degeneracy") {
    const FracParams p = FracParams::make(0.5, 1.0, 3);
    const CauchyStudy study = cauchy_study(p, gaussian_profile(3), 1.0, 3);
    CHECK(study.pass);
    CHECK(study.ratio_bound == doctest::Approx(std::pow(2.0 / 3.0, 0.5) + 0.1));
    for (double r : study.ratios) CHECK(r <= study.ratio_bound);

    // huge Y0: differences vanish below the floor, degenerate PASS
    const CauchyStudy deep = cauchy_study(p, gaussian_profile(3), 1000.0, 3);
    CHECK(deep.pass);
    for (double dv : deep.D) CHECK(dv < 1e-8);

    RadialProfile zero = gaussian_profile(3);
    zero.fhat = [](double) { return 0.0; };
    const CauchyStudy degen = cauchy_study(p, zero, 1.0, 3);
    CHECK(degen.pass);
    for (double dv : degen.D) CHECK(dv == doctest::Approx(0.0));
}

TEST_CASE("regularity probe: growth ratios near 1 for beta = 1/2") {
    const FracParams p = FracParams::make(0.5, 1.0, 3);
    const RegularityProbe probe = regularity_probe(p, gaussian_profile(3), 5,
                                                   default_regularity_eps(p));
    CHECK(probe.pass);
    CHECK(probe.trend_ok);
    REQUIRE(probe.growth.size() == 4);
    for (double g : probe.growth) {
        CHECK(g > 0.3);
        CHECK(g < 2.0);
    }
    // r_0 finite: the initial-shift norm ||y^{-eps} grad U|| is controlled
    CHECK(std::isfinite(probe.r[0]));
    CHECK(probe.r[0] > 0.0);
}

TEST_CASE("regularity probe: zero datum degenerate pass") {
    const FracParams p = FracParams::make(0.5, 1.0, 3);
    RadialProfile zero = gaussian_profile(3);
    zero.fhat = [](double) { return 0.0; };
    const RegularityProbe probe = regularity_probe(p, zero, 4, 0.25);
    CHECK(probe.pass);
    for (double r : probe.r) CHECK(r == doctest::Approx(0.0));
}

TEST_CASE("inequality suite: no violations, deterministic, hardy worked example") {
    const auto reports = inequality_suite(42, 100);
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) {
        CHECK_FALSE(r.violated);
        CHECK(std::isfinite(r.max_ratio));
    }
    // trace ratio bounded by the sharp constant 1 (after d_beta normalization)
    CHECK(reports[0].name == "trace");
    CHECK(reports[0].max_ratio <= 1.0 + 1e-9);
    CHECK(reports[0].max_ratio > 0.05);

    const auto again = inequality_suite(42, 100);
    for (std::size_t i = 0; i < reports.size(); ++i)
        CHECK(reports[i].max_ratio == again[i].max_ratio);

    CHECK_THROWS_AS(inequality_suite(42, 10), std::invalid_argument);
}

TEST_CASE("hardy example: g = 1 on (0,1) with a = 0 has ratio exactly 1") {
    // LHS = int_0^1 y^0 (int_0^y 1)^2 = 1/3, RHS = int_0^1 y^2 = 1/3
    const GeometricMesh m = geometric_mesh_uniform_degree(1.0, 0.5, 2, 2);
    const PiecewiseFunction one = PiecewiseFunction::interpolate(m, [](double) { return 1.0; });
    GeometricMesh fm = m;
    for (auto& dg : fm.degrees) dg += 1;
    const PiecewiseFunction F = PiecewiseFunction::interpolate(fm, [](double y) { return y; });
    const double lhs = weighted_norm_sq(F, 0.0);
    const double rhs = weighted_norm_sq(one, 2.0);
    CHECK(lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(lhs / rhs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("config parser") {
    const auto cfg = parse_config("# comment\nbeta = 0.25\n s=1.5\t\n\nname = x y\n");
    CHECK(cfg.at("beta") == "0.25");
    CHECK(cfg.at("s") == "1.5");
    CHECK(cfg.at("name") == "x y");
    CHECK(cfg.size() == 3);
    CHECK_THROWS_AS(parse_config("novalue\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config("= 3\n"), std::runtime_error);
}

TEST_CASE("report writer: structure of CSV and SVG outputs") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fracext_report_test";
    fs::remove_all(dir);

    TruncationStudy empty;
    empty.fit.mu_expected = DecayRate{1.0};
    write_truncation_report(empty, dir.string(), ReportFormat::csv);
    CHECK(slurp((dir / "study.csv").string()) == "Y,error_sq,energy_sq,trace_sq,wall_time_s\n");

    TruncationStudy single = empty;
    ExperimentRecord rec;
    rec.Y = 2.0;
    rec.error_sq = 0.5;
    rec.norms.energy_sq = 0.4;
    rec.norms.trace_sq = 0.1;
    rec.norms.s_coeff = 1.0;
    single.records.push_back(rec);
    write_truncation_report(single, dir.string(), ReportFormat::both);
    {
        const std::string svg = slurp((dir / "study.svg").string());
        CHECK(svg.find("<circle") != std::string::npos);
        CHECK(svg.find("stroke-dasharray") == std::string::npos);  // no guide line
    }

    TruncationStudy seven = empty;
    for (int i = 0; i < 7; ++i) {
        rec.Y = std::pow(2.0, i);
        rec.error_sq = 0.5 * std::pow(rec.Y, -1.3);
        seven.records.push_back(rec);
    }
    write_truncation_report(seven, dir.string(), ReportFormat::both);
    {
        std::istringstream csv(slurp((dir / "study.csv").string()));
        std::string line;
        int rows = 0;
        while (std::getline(csv, line))
            if (!line.empty()) ++rows;
        CHECK(rows == 8);  // header + 7
        const std::string svg = slurp((dir / "study.svg").string());
        CHECK(svg.find("polyline") != std::string::npos);
        CHECK(svg.find("stroke-dasharray") != std::string::npos);  // guide line present
    }
    fs::remove_all(dir);
}

TEST_CASE("study CSV is bit-reproducible apart from timing") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fracext_repro_test";
    fs::remove_all(dir);
    const FracParams p = FracParams::make(0.75, 0.0, 3);
    const auto strip_wall = [](const std::string& csv) {
        std::istringstream in(csv);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line)) {
            const auto pos = line.rfind(',');
            out << line.substr(0, pos) << '\n';
        }
        return out.str();
    };
    std::string first;
    for (int run = 0; run < 2; ++run) {
        const TruncationStudy study = truncation_study(p, gaussian_profile(3),
                                                       {1.0, 2.0, 4.0, 8.0});
        write_truncation_report(study, dir.string(), ReportFormat::csv);
        const std::string stripped = strip_wall(slurp((dir / "study.csv").string()));
        if (run == 0)
            first = stripped;
        else
            CHECK(first == stripped);
    }
    fs::remove_all(dir);
}
