#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "sweep/trajectory.hpp"

namespace sweep::cli {

/// One result row per tau. Column layout follows the report's schedule kind:
///   single agent:  tau,a,t_f,t_l,J
///   two agents:    tau,a1,a2,t_f12,J
///   three agents:  tau,a1,a2,a3,t_f12,t_f23,J
/// Numbers carry six fractional digits; absent contact times print "empty".
/// Throws on an empty row list before emitting anything.
void emit_table(const std::vector<std::pair<double, SolveReport>>& rows, std::ostream& out);

/// Formats one value the way emit_table does (six fractional digits).
std::string format_cell(double value);

}  // namespace sweep::cli
