#include "fracext/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracext {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

struct SvgSeries {
    std::vector<std::pair<double, double>> pts;  // (x, y), positive
    std::string color;
    bool dashed = false;
};

// single-panel log-log plot
void write_loglog_svg(const fs::path& path, const std::vector<SvgSeries>& series,
                      const std::string& xlabel, const std::string& ylabel) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.pts) {
            if (!(x > 0.0 && y > 0.0)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmax < xmin) { xmin = 0.1; xmax = 1.0; ymin = 0.1; ymax = 1.0; }
    if (xmax == xmin) xmax = 2.0 * xmin;
    if (ymax == ymin) { ymax *= 2.0; ymin *= 0.5; }

    const double W = 640, H = 480, L = 70, R = 20, T = 20, B = 50;
    const auto X = [&](double x) {
        return L + (std::log10(x) - std::log10(xmin)) / (std::log10(xmax) - std::log10(xmin))
               * (W - L - R);
    };
    const auto Yc = [&](double y) {
        return H - B - (std::log10(y) - std::log10(ymin)) / (std::log10(ymax) - std::log10(ymin))
               * (H - T - B);
    };

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
        << H - B << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    // decade ticks
    for (int e = static_cast<int>(std::floor(std::log10(xmin)));
         e <= static_cast<int>(std::ceil(std::log10(xmax))); ++e) {
        const double x = std::pow(10.0, e);
        if (x < xmin * 0.999 || x > xmax * 1.001) continue;
        out << "<line x1=\"" << X(x) << "\" y1=\"" << H - B << "\" x2=\"" << X(x) << "\" y2=\""
            << H - B + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << X(x) << "\" y=\"" << H - B + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::floor(std::log10(ymin)));
         e <= static_cast<int>(std::ceil(std::log10(ymax))); ++e) {
        const double y = std::pow(10.0, e);
        if (y < ymin * 0.999 || y > ymax * 1.001) continue;
        out << "<line x1=\"" << L - 5 << "\" y1=\"" << Yc(y) << "\" x2=\"" << L << "\" y2=\""
            << Yc(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << L - 8 << "\" y=\"" << Yc(y) + 4
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << (T + H - B) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";

    for (const auto& s : series) {
        if (s.pts.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
            if (s.dashed) out << " stroke-dasharray=\"6 4\"";
            out << " points=\"";
            for (const auto& [x, y] : s.pts) out << X(x) << "," << Yc(y) << " ";
            out << "\"/>\n";
        }
        if (!s.dashed)
            for (const auto& [x, y] : s.pts)
                out << "<circle cx=\"" << X(x) << "\" cy=\"" << Yc(y)
                    << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> write_truncation_report(const TruncationStudy& study,
                                                 const std::string& out_dir,
                                                 ReportFormat format) {
    std::vector<std::string> written;
    const fs::path dir(out_dir);
    if (format != ReportFormat::svg) {
        {
            const fs::path p = dir / "study.csv";
            std::ofstream out = open_out(p);
            out << "Y,error_sq,energy_sq,trace_sq,wall_time_s\n";
            for (const auto& r : study.records)
                out << format_double(r.Y) << ',' << format_double(r.error_sq) << ','
                    << format_double(r.norms.energy_sq) << ',' << format_double(r.norms.trace_sq)
                    << ',' << format_double(r.wall_time_s) << '\n';
            written.push_back(p.string());
        }
        {
            const fs::path p = dir / "fit.csv";
            std::ofstream out = open_out(p);
            out << "slope,intercept,residual,mu_expected,pass\n";
            out << format_double(study.fit.slope) << ',' << format_double(study.fit.intercept)
                << ',' << format_double(study.fit.residual) << ','
                << format_double(study.fit.mu_expected.mu) << ','
                << (study.fit.pass ? "true" : "false") << '\n';
            written.push_back(p.string());
        }
    }
    if (format != ReportFormat::csv) {
        const fs::path p = dir / "study.svg";
        SvgSeries data;
        data.color = "#1f77b4";
        for (const auto& r : study.records) data.pts.emplace_back(r.Y, r.error_sq);
        std::vector<SvgSeries> series{data};
        if (study.records.size() > 1) {
            // guide line ~ Y^{-mu} anchored at the first record
            SvgSeries guide;
            guide.color = "#d62728";
            guide.dashed = true;
            const double Y0 = study.records.front().Y;
            const double v0 = study.records.front().error_sq;
            for (const auto& r : study.records)
                guide.pts.emplace_back(r.Y, v0 * std::pow(r.Y / Y0, -study.fit.mu_expected.mu));
            series.push_back(guide);
        }
        write_loglog_svg(p, series, "Y", "error_sq");
        written.push_back(p.string());
    }
    return written;
}

std::vector<std::string> write_cauchy_report(const CauchyStudy& study,
                                             const std::string& out_dir, ReportFormat format) {
    std::vector<std::string> written;
    const fs::path dir(out_dir);
    if (format != ReportFormat::svg) {
        const fs::path p = dir / "cauchy.csv";
        std::ofstream out = open_out(p);
        out << "n,Y,D,ratio,ratio_bound,pass\n";
        for (std::size_t i = 0; i < study.D.size(); ++i) {
            out << i << ',' << format_double(study.Y0 * std::pow(1.5, double(i))) << ','
                << format_double(study.D[i]) << ','
                << (i < study.ratios.size() ? format_double(study.ratios[i]) : std::string(""))
                << ',' << format_double(study.ratio_bound) << ','
                << (study.pass ? "true" : "false") << '\n';
        }
        written.push_back(p.string());
    }
    if (format != ReportFormat::csv) {
        const fs::path p = dir / "cauchy.svg";
        SvgSeries data;
        data.color = "#1f77b4";
        for (std::size_t i = 0; i < study.D.size(); ++i) {
            if (study.D[i] > 0.0)
                data.pts.emplace_back(study.Y0 * std::pow(1.5, double(i)), study.D[i]);
        }
        write_loglog_svg(p, {data}, "Y_n", "D_n");
        written.push_back(p.string());
    }
    return written;
}

std::vector<std::string> write_regularity_report(const RegularityProbe& probe,
                                                 const std::string& out_dir,
                                                 ReportFormat format) {
    std::vector<std::string> written;
    const fs::path dir(out_dir);
    if (format != ReportFormat::svg) {
        const fs::path p = dir / "regularity.csv";
        std::ofstream out = open_out(p);
        out << "ell,r,growth\n";
        for (std::size_t i = 0; i < probe.ell.size(); ++i) {
            out << probe.ell[i] << ',' << format_double(probe.r[i]) << ',';
            // growth[j] pairs with ell = j+1
            if (probe.ell[i] >= 1 && static_cast<std::size_t>(probe.ell[i]) <= probe.growth.size())
                out << format_double(probe.growth[probe.ell[i] - 1]);
            out << '\n';
        }
        written.push_back(p.string());
    }
    if (format != ReportFormat::csv) {
        const fs::path p = dir / "regularity.svg";
        SvgSeries data;
        data.color = "#1f77b4";
        for (std::size_t i = 0; i < probe.ell.size(); ++i)
            if (probe.r[i] > 0.0) data.pts.emplace_back(probe.ell[i] + 1.0, probe.r[i]);
        write_loglog_svg(p, {data}, "ell+1", "r_ell");
        written.push_back(p.string());
    }
    return written;
}

std::vector<std::string> write_inequality_report(const std::vector<InequalityReport>& reports,
                                                 const std::string& out_dir) {
    const fs::path p = fs::path(out_dir) / "inequalities.csv";
    std::ofstream out = open_out(p);
    out << "name,trials,max_ratio,violated\n";
    for (const auto& r : reports)
        out << r.name << ',' << r.trials << ',' << format_double(r.max_ratio) << ','
            << (r.violated ? "true" : "false") << '\n';
    return {p.string()};
}

std::vector<std::string> write_solve_report(const FieldNorms& norms, double Y,
                                            const std::string& out_dir) {
    const fs::path p = fs::path(out_dir) / "solve.csv";
    std::ofstream out = open_out(p);
    out << "Y,energy_sq,trace_sq,combined\n";
    out << format_double(Y) << ',' << format_double(norms.energy_sq) << ','
        << format_double(norms.trace_sq) << ',' << format_double(norms.combined()) << '\n';
    return {p.string()};
}

} // namespace fracext
