#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "spindyn/error.hpp"
#include "spindyn/harness.hpp"

namespace spindyn {

namespace {

ScenarioRow row_for(double t, const DensityMatrix& state) {
  const CorrelationReport rep = correlations(state);
  ScenarioRow row;
  row.t = t;
  row.concurrence = rep.concurrence;
  row.discord = rep.discord;
  row.classical = rep.classical;
  row.mutual_info = rep.mutual_info;
  row.trace_err = state.trace_error();
  row.min_eig = state.min_eigenvalue();
  row.argmin_branch = rep.argmin_branch;
  return row;
}

// Analytic states at the given times, or nullopt when the closed form is
// singular for these parameters.
std::optional<std::vector<DensityMatrix>> analytic_states(const Scenario& s,
                                                          const std::vector<double>& times) {
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  try {
    for (double t : times) out.push_back(evolve_analytic(s.p0, s.params, s.env, t));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularParameterization) throw;
    return std::nullopt;
  }
  return out;
}

}  // namespace

std::vector<double> sample_times(const Scenario& s) {
  return numeric_sample_times(s.t_end, IntegratorOptions{s.dt, s.stride});
}

ScenarioTable run_scenario(const Scenario& s, RunMode mode) {
  ScenarioTable table{s, mode, false, {}};
  try {
    s.validate();
    const std::vector<double> times = sample_times(s);
    std::vector<DensityMatrix> states;
    std::optional<std::vector<DensityMatrix>> analytic;
    if (mode != RunMode::Numeric) analytic = analytic_states(s, times);
    if (mode == RunMode::Analytic && analytic) {
      states = std::move(*analytic);
    } else {
      table.analytic_fallback = mode == RunMode::Analytic;
      const Trajectory traj =
          evolve_numeric(s.p0, s.params, s.env, s.t_end, IntegratorOptions{s.dt, s.stride});
      states.reserve(traj.samples.size());
      for (const Sample& sample : traj.samples) states.push_back(sample.state);
    }
    table.rows.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      ScenarioRow row = row_for(times[i], states[i]);
      if (mode == RunMode::Both) {
        row.max_dev = analytic ? max_abs_entry(ComplexMat4((*analytic)[i].mat() - states[i].mat()))
                               : std::numeric_limits<double>::quiet_NaN();
      }
      table.rows.push_back(row);
    }
  } catch (const Error& e) {
    throw Error(e.code(), "scenario [" + s.describe() + "]: " + e.what());
  }
  return table;
}

PeriodMinimum min_concurrence_over_period(double p0, const ModelParams& params, int samples) {
  const double period = std::numbers::pi / params.nu();
  const DensityMatrix rho0 = werner_state(p0);
  PeriodMinimum out{params.d, period, std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i <= samples; ++i) {
    const double t = period * i / samples;
    const double c = concurrence_x(DensityMatrix(hermitize(closed_form::unitary(rho0.mat(), params, t))));
    if (c < out.min_concurrence) {
      out.min_concurrence = c;
      out.t_at_min = t;
    }
  }
  return out;
}

double locate_critical_d(double p0, double d_lo, double d_hi, double tol) {
  auto vanishes = [&](double d) {
    return min_concurrence_over_period(p0, ModelParams{1.0, 0.0, d}).min_concurrence <= 0.0;
  };
  if (vanishes(d_lo) || !vanishes(d_hi)) return std::numeric_limits<double>::quiet_NaN();
  while (d_hi - d_lo > tol) {
    const double mid = 0.5 * (d_lo + d_hi);
    (vanishes(mid) ? d_hi : d_lo) = mid;
  }
  return d_hi;
}

}  // namespace spindyn
