// Acceptance suite: regression against the reference result tables, the
// integrator cross-checks, and the randomized invariant battery. Prints one
// PASS/FAIL line per criterion and exits nonzero when anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sweep/cli.hpp"
#include "sweep/corridor_three.hpp"
#include "sweep/corridor_two.hpp"
#include "sweep/oracle.hpp"
#include "sweep/single_agent.hpp"
#include "sweep/table.hpp"
#include "sweep/verify.hpp"
#include "support.hpp"

using namespace sweep;
using testsupport::rel_close;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!ok) ++g_failures;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// --- 1 & 2: single-agent regression tables at 1e-4 relative -----------------

void single_regression(int criterion, const char* fixture,
                       const std::vector<testsupport::SingleRow>& table) {
  bool ok = true;
  std::ostringstream why;
  double worst_row_time = 0.0;
  for (const auto& row : table) {
    const SingleScenario sc = testsupport::load_single(fixture, row.tau);
    const double t0 = now_seconds();
    const SolveReport r = single_agent::solve(sc);
    worst_row_time = std::max(worst_row_time, now_seconds() - t0);
    const auto& sched = std::get<SingleSchedule>(r.schedule);
    if (!sched.contact_time || !sched.leave_time) {
      ok = false;
      why << " missing contact times at tau=" << row.tau;
      continue;
    }
    const bool match = rel_close(r.controls[0], row.a, 1e-4) &&
                       rel_close(*sched.contact_time, row.tf, 1e-4) &&
                       rel_close(*sched.leave_time, row.tl, 1e-4) &&
                       rel_close(r.cost, row.J, 1e-4);
    if (!match) {
      ok = false;
      why << " mismatch at tau=" << row.tau;
    }
  }
  if (worst_row_time >= 0.1) {
    ok = false;
    why << " slow row (" << worst_row_time << " s)";
  }
  std::ostringstream label;
  label << fixture << " table, 10 rows, 1e-4 relative, <0.1 s/row;" << why.str();
  report(criterion, ok, label.str());
}

template <typename Row>
bool check_two_row(const SolveReport& r, const Row& row, double tol) {
  const auto& sched = std::get<TwoAgentSchedule>(r.schedule);
  return sched.pair_time && rel_close(r.controls[0], row.a1, tol) &&
         rel_close(r.controls[1], row.a2, tol) && rel_close(*sched.pair_time, row.tf12, tol) &&
         rel_close(r.cost, row.J, tol);
}

}  // namespace

int main() {
  const double suite_start = now_seconds();

  // 1. Collinear single-agent fixture.
  single_regression(1, "ex31.json", testsupport::table_ex31());

  // 2. Offset-obstacle fixture.
  single_regression(2, "ex32.json", testsupport::table_ex32());

  // 3. Free-flight fixture: closed form a = 2304/(2304 + 6 tau) to 1e-9,
  //    J to 1e-6 relative, contact columns print "empty".
  {
    bool ok = true;
    std::ostringstream why;
    std::vector<std::pair<double, SolveReport>> rows;
    for (const auto& row : testsupport::table_ex33()) {
      const SingleScenario sc = testsupport::load_single("ex33.json", row.tau);
      const SolveReport r = single_agent::solve(sc);
      rows.emplace_back(row.tau, r);
      const double closed_form = 2304.0 / (2304.0 + 6.0 * row.tau);
      if (std::abs(r.controls[0] - closed_form) > 1e-9) {
        ok = false;
        why << " control off at tau=" << row.tau;
      }
      if (!rel_close(r.cost, row.J, 1e-6)) {
        ok = false;
        why << " cost off at tau=" << row.tau;
      }
    }
    std::ostringstream table_text;
    cli::emit_table(rows, table_text);
    std::istringstream lines(table_text.str());
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      if (line.find(",empty,empty,") == std::string::npos) {
        ok = false;
        why << " contact column not empty";
        break;
      }
    }
    report(3, ok, "ex33 closed form exact to 1e-9, J 1e-6, empty contact columns;" + why.str());
  }

  // 4. Two-agent collinear fixture at 1e-5 relative plus the exact ratio
  //    identity a1 s2 = a2 s1.
  {
    bool ok = true;
    std::ostringstream why;
    for (const auto& row : testsupport::table_ex51()) {
      const CorridorScenario sc = testsupport::load_corridor("ex51.json", row.tau);
      const SolveReport r = corridor_two::solve_two(sc);
      if (!check_two_row(r, row, 1e-5)) {
        ok = false;
        why << " mismatch at tau=" << row.tau;
      }
      if (r.controls[0] * sc.speeds[1] != r.controls[1] * sc.speeds[0]) {
        ok = false;
        why << " ratio identity not exact at tau=" << row.tau;
      }
    }
    report(4, ok, "ex51 table, 10 rows, 1e-5 relative, exact ratio identity;" + why.str());
  }

  // 5. Two-agent diagonal fixture (corrected second start) at 1e-5 relative
  //    plus the uncontrolled contact time.
  {
    bool ok = true;
    std::ostringstream why;
    for (const auto& row : testsupport::table_ex52()) {
      const CorridorScenario sc = testsupport::load_corridor("ex52.json", row.tau);
      const SolveReport r = corridor_two::solve_two(sc);
      if (!check_two_row(r, row, 1e-5)) {
        ok = false;
        why << " mismatch at tau=" << row.tau;
      }
    }
    const CorridorScenario sc = testsupport::load_corridor("ex52.json");
    const auto uncontrolled = corridor_two::pair_contact_time(sc, 1.0, 1.0);
    if (!uncontrolled || !rel_close(*uncontrolled, 4.114382, 1e-5)) {
      ok = false;
      why << " uncontrolled contact time off";
    }
    report(5, ok,
           "ex52 table (corrected start), 10 rows, 1e-5 relative, uncontrolled t_f12;" +
               why.str());
  }

  // 6. Three-agent chain fixture: controls/times at 1e-5 relative, J at 1e-3
  //    relative, case selection.
  {
    bool ok = true;
    std::ostringstream why;
    for (const auto& row : testsupport::table_ex53()) {
      const CorridorScenario sc = testsupport::load_corridor("ex53.json", row.tau);
      const SolveReport r = corridor_three::solve_three(sc);
      const auto& sched = std::get<ThreeAgentSchedule>(r.schedule);
      const bool match = sched.t12 && sched.t23 && rel_close(r.controls[0], row.a1, 1e-5) &&
                         rel_close(r.controls[1], row.a2, 1e-5) &&
                         rel_close(r.controls[2], row.a3, 1e-5) &&
                         rel_close(*sched.t12, row.tf12, 1e-5) &&
                         rel_close(*sched.t23, row.tf23, 1e-5) &&
                         rel_close(r.cost, row.J, 1e-3) &&
                         sched.order == TripleCase::Pair12First && !r.extended_branch;
      if (!match) {
        ok = false;
        why << " mismatch at tau=" << row.tau;
      }
    }
    report(6, ok, "ex53 table, controls/times 1e-5, J 1e-3, Pair12First;" + why.str());
  }

  // 7. Three-agent staggered fixture: all columns at 1e-5 relative, case
  //    selection, ratio identities to 1e-9.
  {
    bool ok = true;
    std::ostringstream why;
    for (const auto& row : testsupport::table_ex54()) {
      const CorridorScenario sc = testsupport::load_corridor("ex54.json", row.tau);
      const SolveReport r = corridor_three::solve_three(sc);
      const auto& sched = std::get<ThreeAgentSchedule>(r.schedule);
      const bool match = sched.t12 && sched.t23 && rel_close(r.controls[0], row.a1, 1e-5) &&
                         rel_close(r.controls[1], row.a2, 1e-5) &&
                         rel_close(r.controls[2], row.a3, 1e-5) &&
                         rel_close(*sched.t12, row.tf12, 1e-5) &&
                         rel_close(*sched.t23, row.tf23, 1e-5) &&
                         rel_close(r.cost, row.J, 1e-5) &&
                         sched.order == TripleCase::Pair23First && !r.extended_branch;
      if (!match) {
        ok = false;
        why << " mismatch at tau=" << row.tau;
      }
      if (std::abs(r.controls[0] / r.controls[2] - 5.0) > 1e-9 ||
          std::abs(r.controls[1] / r.controls[2] - 1.6) > 1e-9) {
        ok = false;
        why << " ratio identity off at tau=" << row.tau;
      }
    }
    report(7, ok, "ex54 table, all columns 1e-5, Pair23First, ratios 5 and 1.6;" + why.str());
  }

  // 8. Oracle equivalence on the tau = 1 optima: sup-norm within 0.05 at
  //    h = 1e-3, cost gap within 0.5, and first-order improvement when h is
  //    halved (with a floor for corridor runs that already match to roundoff).
  {
    bool ok = true;
    std::ostringstream why;
    const char* fixtures[] = {"ex31.json", "ex51.json", "ex53.json"};
    for (const char* name : fixtures) {
      const Scenario sc = parse_scenario(testsupport::read_file(name));
      const SolveReport r = verify::solve_scenario(sc);
      const auto at_h = verify::compare_with_oracle(sc, r, 1e-3);
      const auto at_half = verify::compare_with_oracle(sc, r, 5e-4);
      if (at_h.sup_deviation > 0.05) {
        ok = false;
        why << " " << name << " sup " << at_h.sup_deviation;
      }
      if (at_h.cost_gap > 0.5) {
        ok = false;
        why << " " << name << " cost gap " << at_h.cost_gap;
      }
      const bool converged = at_half.sup_deviation <= at_h.sup_deviation / 1.8 ||
                             at_h.sup_deviation <= 1e-6;  // already at roundoff
      if (!converged) {
        ok = false;
        why << " " << name << " halving ratio "
            << at_h.sup_deviation / std::max(at_half.sup_deviation, 1e-300);
      }
    }
    report(8, ok, "catching-up equivalence on ex31/ex51/ex53 at tau=1;" + why.str());
  }

  // 9. Randomized invariant battery: 200 feasible scenarios per family.
  {
    bool ok = true;
    std::ostringstream why;
    const double t0 = now_seconds();
    std::mt19937 rng(424242u);
    int checked = 0;
    for (int family = 1; family <= 3 && ok; ++family) {
      for (int i = 0; i < 200; ++i) {
        Scenario sc;
        if (family == 1) {
          sc = testsupport::random_single(rng);
        } else {
          sc = testsupport::random_corridor(rng, family);
        }
        const SolveReport r = verify::solve_scenario(sc);
        const auto failures = testsupport::check_solution_properties(sc, r);
        ++checked;
        if (!failures.empty()) {
          ok = false;
          why << " family " << family << " draw " << i << ": " << failures.front();
          break;
        }
      }
    }
    const double elapsed = now_seconds() - t0;
    if (elapsed >= 120.0) {
      ok = false;
      why << " suite took " << elapsed << " s";
    }
    std::ostringstream label;
    label << "600 randomized scenarios (" << checked << " checked) in " << elapsed
          << " s;" << why.str();
    report(9, ok, label.str());
  }

  std::printf("acceptance: %s (%.1f s total)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              now_seconds() - suite_start);
  return g_failures == 0 ? 0 : 1;
}
