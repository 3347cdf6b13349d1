#include "vacq/reporting.hpp"

#include <cstdio>
#include <ostream>

namespace vacq {

std::string format_numeric(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_records(std::ostream& os, const std::vector<SweepPoint>& points, OutputFormat format,
                   bool surface_layout) {
  const auto cell = [](const std::optional<double>& v) {
    return v ? format_numeric(*v) : std::string();
  };
  const auto json_cell = [](const std::optional<double>& v) {
    return v ? format_numeric(*v) : std::string("null");
  };
  if (format == OutputFormat::Csv) {
    os << (surface_layout ? "lambda,mu," : "rho,")
       << "el_vacation,el_mm1,status_vacation,status_mm1\n";
    for (const SweepPoint& p : points) {
      if (surface_layout) {
        os << format_numeric(p.lambda) << ',' << format_numeric(p.mu) << ',';
      } else {
        os << format_numeric(p.rho) << ',';
      }
      os << cell(p.el_vacation) << ',' << cell(p.el_mm1) << ',' << to_string(p.status_vacation)
         << ',' << to_string(p.status_mm1) << '\n';
    }
    return;
  }
  for (const SweepPoint& p : points) {
    os << '{';
    if (surface_layout) {
      os << "\"lambda\":" << format_numeric(p.lambda) << ",\"mu\":" << format_numeric(p.mu);
    } else {
      os << "\"rho\":" << format_numeric(p.rho);
    }
    os << ",\"el_vacation\":" << json_cell(p.el_vacation)
       << ",\"el_mm1\":" << json_cell(p.el_mm1) << ",\"status_vacation\":\""
       << to_string(p.status_vacation) << "\",\"status_mm1\":\"" << to_string(p.status_mm1)
       << "\"}\n";
  }
}

}  // namespace

void write_rho_sweep(std::ostream& os, const std::vector<SweepPoint>& points,
                     OutputFormat format) {
  write_records(os, points, format, false);
}

void write_surface(std::ostream& os, const std::vector<SweepPoint>& points, OutputFormat format) {
  write_records(os, points, format, true);
}

}  // namespace vacq
