#ifndef VACQ_REPORTING_HPP
#define VACQ_REPORTING_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "vacq/analysis.hpp"

namespace vacq {

enum class OutputFormat { Csv, JsonLines };

/// %.17g: 17 significant digits, enough to round-trip any double.
std::string format_numeric(double x);

/// rho,el_vacation,el_mm1,status_vacation,status_mm1 - numeric columns are
/// left empty (or null in JSON lines) when the status is not "ok".
void write_rho_sweep(std::ostream& os, const std::vector<SweepPoint>& points, OutputFormat format);

/// lambda,mu,el_vacation,el_mm1,status_vacation,status_mm1
void write_surface(std::ostream& os, const std::vector<SweepPoint>& points, OutputFormat format);

}  // namespace vacq

#endif
