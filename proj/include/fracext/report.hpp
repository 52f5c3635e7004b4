#ifndef FRACEXT_REPORT_HPP
#define FRACEXT_REPORT_HPP

#include "fracext/lab.hpp"

#include <string>

namespace fracext {

enum class ReportFormat { csv, svg, both };

/// study.csv (`Y,error_sq,energy_sq,trace_sq,wall_time_s`), fit.csv and a
/// log-log SVG with the proven-rate guide line Y^{-mu}. Returns the list of
/// files written. I/O failures carry the path in the exception message.
std::vector<std::string> write_truncation_report(const TruncationStudy& study,
                                                 const std::string& out_dir,
                                                 ReportFormat format);

std::vector<std::string> write_cauchy_report(const CauchyStudy& study,
                                             const std::string& out_dir, ReportFormat format);

std::vector<std::string> write_regularity_report(const RegularityProbe& probe,
                                                 const std::string& out_dir,
                                                 ReportFormat format);

std::vector<std::string> write_inequality_report(const std::vector<InequalityReport>& reports,
                                                 const std::string& out_dir);

std::vector<std::string> write_solve_report(const FieldNorms& norms, double Y,
                                            const std::string& out_dir);

/// Shortest round-trip decimal form ("%.17g" fallback), '.' separator.
std::string format_double(double v);

} // namespace fracext

#endif
