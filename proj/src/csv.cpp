#include <charconv>
#include <cmath>
#include <ostream>

#include "spindyn/harness.hpp"

namespace spindyn {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const ScenarioTable& table) {
  const bool with_dev = table.mode == RunMode::Both;
  out << "t,C,QD,CC,MI,trace_err,min_eig,argmin_branch";
  if (with_dev) out << ",max_dev";
  out << '\n';
  for (const ScenarioRow& r : table.rows) {
    out << format_number(r.t) << ',' << format_number(r.concurrence) << ','
        << format_number(r.discord) << ',' << format_number(r.classical) << ','
        << format_number(r.mutual_info) << ',' << format_number(r.trace_err) << ','
        << format_number(r.min_eig) << ',' << r.argmin_branch;
    if (with_dev) out << ',' << format_number(r.max_dev);
    out << '\n';
  }
}

void write_csv(std::ostream& out, const SweepTable& table) {
  out << table.grid.axis1.name << ',' << table.grid.axis2.name << ",C,QD,CC,error\n";
  for (const SweepRow& r : table.rows) {
    out << format_number(r.axis1) << ',' << format_number(r.axis2) << ','
        << format_number(r.concurrence) << ',' << format_number(r.discord) << ','
        << format_number(r.classical) << ',' << r.error << '\n';
  }
}

}  // namespace spindyn
