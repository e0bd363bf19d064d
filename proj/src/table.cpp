#include "sweep/table.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "sweep/errors.hpp"

namespace sweep::cli {
namespace {

std::string cell_or_empty(const std::optional<double>& v) {
  return v ? format_cell(*v) : std::string("empty");
}

}  // namespace

std::string format_cell(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

void emit_table(const std::vector<std::pair<double, SolveReport>>& rows, std::ostream& out) {
  if (rows.empty()) {
    throw ModelError(Fault::BadArguments, "no rows to emit");
  }
  const Schedule& first = rows.front().second.schedule;
  if (std::holds_alternative<ThreeAgentSchedule>(first)) {
    out << "tau,a1,a2,a3,t_f12,t_f23,J\n";
    for (const auto& [tau, report] : rows) {
      const auto& sched = std::get<ThreeAgentSchedule>(report.schedule);
      out << format_cell(tau) << "," << format_cell(report.controls[0]) << ","
          << format_cell(report.controls[1]) << "," << format_cell(report.controls[2]) << ","
          << cell_or_empty(sched.t12) << "," << cell_or_empty(sched.t23) << ","
          << format_cell(report.cost) << "\n";
    }
  } else if (std::holds_alternative<TwoAgentSchedule>(first)) {
    out << "tau,a1,a2,t_f12,J\n";
    for (const auto& [tau, report] : rows) {
      const auto& sched = std::get<TwoAgentSchedule>(report.schedule);
      out << format_cell(tau) << "," << format_cell(report.controls[0]) << ","
          << format_cell(report.controls[1]) << "," << cell_or_empty(sched.pair_time) << ","
          << format_cell(report.cost) << "\n";
    }
  } else {
    out << "tau,a,t_f,t_l,J\n";
    for (const auto& [tau, report] : rows) {
      SingleSchedule sched;
      if (std::holds_alternative<SingleSchedule>(report.schedule)) {
        sched = std::get<SingleSchedule>(report.schedule);
      }
      out << format_cell(tau) << "," << format_cell(report.controls[0]) << ","
          << cell_or_empty(sched.contact_time) << "," << cell_or_empty(sched.leave_time) << ","
          << format_cell(report.cost) << "\n";
    }
  }
}

}  // namespace sweep::cli
