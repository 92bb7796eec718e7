#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spindyn/config.hpp"
#include "spindyn/evolve.hpp"
#include "spindyn/measures.hpp"

namespace spindyn {

// ---- CSV --------------------------------------------------------------------

/// Up to 10 significant digits, shortest form, "nan"/"inf" for non-finite,
/// negative zero printed as 0.
std::string format_number(double value);

// ---- single scenario ----------------------------------------------------------

struct ScenarioRow {
  double t = 0.0;
  double concurrence = 0.0;
  double discord = 0.0;
  double classical = 0.0;
  double mutual_info = 0.0;
  double trace_err = 0.0;
  double min_eig = 0.0;
  int argmin_branch = 1;
  double max_dev = 0.0;  ///< analytic vs numeric, only in RunMode::Both
};

struct ScenarioTable {
  Scenario scenario;
  RunMode mode = RunMode::Numeric;
  bool analytic_fallback = false;  ///< analytic was singular; numeric used
  std::vector<ScenarioRow> rows;
};

/// Times at which evolve_numeric stores samples for this scenario.
std::vector<double> sample_times(const Scenario& s);

/// Evolves the scenario and tabulates the correlation measures per sample.
/// Errors are rethrown with the scenario description prepended.
ScenarioTable run_scenario(const Scenario& s, RunMode mode);
inline ScenarioTable run_scenario(const Scenario& s) { return run_scenario(s, s.mode); }

void write_csv(std::ostream& out, const ScenarioTable& table);

// ---- sweeps --------------------------------------------------------------------

struct SweepRow {
  double axis1 = 0.0;
  double axis2 = 0.0;
  double concurrence = 0.0;
  double discord = 0.0;
  double classical = 0.0;
  std::string error;  ///< empty, or an error_code_name()
};

struct SweepTable {
  SweepGrid grid;
  std::vector<SweepRow> rows;  ///< row-major: axis1 outer, axis2 inner
};

/// Cells without a time axis report values at base.t_end. Failed cells are
/// NaN rows with an error code; the sweep itself never aborts.
SweepTable run_sweep(const SweepGrid& grid);

void write_csv(std::ostream& out, const SweepTable& table);

// ---- closed-system period scan ------------------------------------------------

struct PeriodMinimum {
  double d = 0.0;
  double period = 0.0;
  double min_concurrence = 0.0;
  double t_at_min = 0.0;
};

/// Minimum concurrence of the closed-system Werner trajectory over one period
/// pi / nu of the flip-flop block, sampled at `samples` equally spaced times.
PeriodMinimum min_concurrence_over_period(double p0, const ModelParams& params,
                                          int samples = 4000);

/// Smallest D in [d_lo, d_hi] at which the periodic minimum of the
/// concurrence reaches 0, located by bisection to `tol`. Returns NaN if the
/// minimum is already zero at d_lo or still positive at d_hi.
double locate_critical_d(double p0, double d_lo, double d_hi, double tol = 1e-6);

// ---- regression against reference values ---------------------------------------

enum class Relation { Near, Below, Above };

struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double expected = 0.0;   ///< target (Near) or threshold (Below/Above)
  double tolerance = 0.0;  ///< only for Near
  Relation relation = Relation::Near;
  bool pass = false;
};

struct VerifyOptions {
  /// Coupling used for the t = 2 amplitude-damping snapshot checks.
  double snapshot_gamma = 0.5;
};

std::vector<VerifyCheck> verify_reference_values(const VerifyOptions& opts = {});
void print_verify_report(std::ostream& out, const std::vector<VerifyCheck>& checks);
bool all_passed(const std::vector<VerifyCheck>& checks);

}  // namespace spindyn
