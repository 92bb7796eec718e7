#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "spindyn/error.hpp"
#include "spindyn/harness.hpp"

namespace spindyn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void apply_axis(Scenario& s, const std::string& name, double value) {
  if (name == "delta") s.params.delta = value;
  else if (name == "d") s.params.d = value;
  else if (name == "gamma") s.env.gamma = value;
  else if (name == "p") s.p0 = value;
  else if (name == "t") s.t_end = value;
}

void fill_measures(SweepRow& row, const DensityMatrix& state) {
  try {
    const CorrelationReport rep = correlations(state);
    row.concurrence = rep.concurrence;
    row.discord = rep.discord;
    row.classical = rep.classical;
  } catch (const Error& e) {
    row.concurrence = row.discord = row.classical = kNaN;
    row.error = error_code_name(e.code());
  }
}

void mark_failed(SweepRow& row, ErrorCode code) {
  row.concurrence = row.discord = row.classical = kNaN;
  row.error = error_code_name(code);
}

// States of one scenario at the given times, following the scenario's mode.
std::vector<DensityMatrix> states_at(const Scenario& s, const std::vector<double>& times) {
  if (s.mode == RunMode::Analytic) {
    try {
      std::vector<DensityMatrix> out;
      out.reserve(times.size());
      for (double t : times) out.push_back(evolve_analytic(s.p0, s.params, s.env, t));
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularParameterization) throw;
    }
  }
  return evolve_numeric_at(werner_state(s.p0), s.params, s.env, times, s.dt);
}

// One unit of parallel work: a fixed value on the non-time axis (or a single
// cell when neither axis is time), covering a contiguous run of output rows.
struct Task {
  Scenario scenario;
  std::vector<double> times;
  std::vector<std::size_t> rows;  // output row per time
};

}  // namespace

SweepTable run_sweep(const SweepGrid& grid) {
  grid.validate();
  const std::vector<double> v1 = grid.axis1.values();
  const std::vector<double> v2 = grid.axis2.values();
  SweepTable table{grid, std::vector<SweepRow>(v1.size() * v2.size())};
  for (std::size_t i = 0; i < v1.size(); ++i) {
    for (std::size_t j = 0; j < v2.size(); ++j) {
      table.rows[i * v2.size() + j].axis1 = v1[i];
      table.rows[i * v2.size() + j].axis2 = v2[j];
    }
  }

  std::vector<Task> tasks;
  const bool time_is_1 = grid.axis1.name == "t";
  const bool time_is_2 = grid.axis2.name == "t";
  if (time_is_1 || time_is_2) {
    const auto& other = time_is_1 ? v2 : v1;
    const auto& times = time_is_1 ? v1 : v2;
    const std::string& other_name = time_is_1 ? grid.axis2.name : grid.axis1.name;
    for (std::size_t o = 0; o < other.size(); ++o) {
      Task task{grid.base, times, {}};
      apply_axis(task.scenario, other_name, other[o]);
      for (std::size_t k = 0; k < times.size(); ++k)
        task.rows.push_back(time_is_1 ? k * v2.size() + o : o * v2.size() + k);
      tasks.push_back(std::move(task));
    }
  } else {
    for (std::size_t i = 0; i < v1.size(); ++i) {
      for (std::size_t j = 0; j < v2.size(); ++j) {
        Task task{grid.base, {}, {i * v2.size() + j}};
        apply_axis(task.scenario, grid.axis1.name, v1[i]);
        apply_axis(task.scenario, grid.axis2.name, v2[j]);
        task.times = {task.scenario.t_end};
        tasks.push_back(std::move(task));
      }
    }
  }

  auto run_task = [&table](const Task& task) {
    std::vector<DensityMatrix> states;
    try {
      states = states_at(task.scenario, task.times);
    } catch (const Error& e) {
      for (std::size_t r : task.rows) mark_failed(table.rows[r], e.code());
      return;
    }
    for (std::size_t k = 0; k < task.rows.size(); ++k) fill_measures(table.rows[task.rows[k]], states[k]);
  };

  unsigned workers = grid.workers > 0 ? static_cast<unsigned>(grid.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(tasks.size()));
  if (workers <= 1) {
    for (const Task& task : tasks) run_task(task);
    return table;
  }
  // Tasks write disjoint rows, so results do not depend on scheduling.
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t idx = next++; idx < tasks.size(); idx = next++) run_task(tasks[idx]);
    });
  }
  pool.clear();
  return table;
}

}  // namespace spindyn
