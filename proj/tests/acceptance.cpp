// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "random_states.hpp"
#include "spindyn/evolve.hpp"
#include "spindyn/harness.hpp"
#include "spindyn/measures.hpp"

using namespace spindyn;

namespace {

// Two-decimal reference values are compared at half a unit in the last place.
constexpr double kRounding = 0.005;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void near(const std::string& what, double value, double expected, double tol) {
    record(what, value, std::abs(value - expected) <= tol,
           "expected " + fmt(expected) + " +- " + fmt(tol));
  }
  void below(const std::string& what, double value, double bound) {
    record(what, value, value < bound, "expected < " + fmt(bound));
  }
  void at_most(const std::string& what, double value, double bound) {
    record(what, value, value <= bound, "expected <= " + fmt(bound));
  }
  void above(const std::string& what, double value, double bound) {
    record(what, value, value > bound, "expected > " + fmt(bound));
  }
  void require(const std::string& what, bool ok, const std::string& detail = {}) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what + (detail.empty() ? "" : ": " + detail));
    }
  }
  void info(const std::string& text) { notes.push_back(text); }

  static std::string fmt(double v) { return format_number(v); }

 private:
  void record(const std::string& what, double value, bool ok, const std::string& expect) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what + " = " + fmt(value) + " (" + expect + ")");
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Every numeric trajectory produced by the suite, for the structural check.
std::vector<Trajectory> g_trajectories;

const Trajectory& keep(Trajectory tr) {
  g_trajectories.push_back(std::move(tr));
  return g_trajectories.back();
}

const DensityMatrix& state_at(const Trajectory& tr, double t) {
  const auto it = std::find_if(tr.samples.begin(), tr.samples.end(),
                               [&](const Sample& s) { return std::abs(s.t - t) < 1e-9; });
  if (it == tr.samples.end()) throw std::runtime_error("no sample at t=" + format_number(t));
  return it->state;
}

Outcome werner_spot_values() {
  Outcome o;
  const auto start = Clock::now();
  for (double d : {0.0, 1.0, 2.0, 3.0, 5.0}) {
    Scenario s;
    s.p0 = 0.5;
    s.params.d = d;
    s.t_end = 0.1;
    const ScenarioRow row = run_scenario(s).rows.front();
    const std::string tag = "D=" + format_number(d) + " t=0 ";
    o.near(tag + "C", row.concurrence, 0.25, 1e-9);
    o.near(tag + "QD", row.discord, 0.26, kRounding);
    o.near(tag + "CC", row.classical, 0.19, kRounding);
  }
  o.below("runtime [s]", seconds_since(start), 1.0);
  return o;
}

Outcome damped_snapshot() {
  Outcome o;
  const auto start = Clock::now();
  const Trajectory& tr =
      keep(evolve_numeric(0.0, {1.0, 0.4, 0.0}, {EnvKind::Dissipative, 0.5}, 2.0, {1e-3, 10}));
  const DensityMatrix& rho = tr.samples.back().state;
  o.near("rho11", rho(1, 1).real(), 0.11, kRounding);
  o.near("rho22", rho(2, 2).real(), 0.17, kRounding);
  o.near("rho33", rho(3, 3).real(), 0.17, kRounding);
  o.near("rho44", rho(4, 4).real(), 0.55, kRounding);
  o.near("|rho14|", std::abs(rho(1, 4)), 0.17, kRounding);
  o.near("S(rho_A)", von_neumann_entropy(partial_trace(rho.mat(), Subsystem::A)), 0.85, kRounding);
  o.near("S(rho_B)", von_neumann_entropy(partial_trace(rho.mat(), Subsystem::B)), 0.85, kRounding);
  o.near("S(rho)", von_neumann_entropy(rho.mat()), 1.5, kRounding);
  const DiscordResult r = discord_and_classical(rho);
  o.near("S1", r.branches[0], 0.83, kRounding);
  for (int i = 1; i < 5; ++i) o.near("S" + std::to_string(i + 1), r.branches[i], 0.75, kRounding);
  o.near("QD", r.discord, 0.1, kRounding);
  o.near("CC", r.classical, 0.1, kRounding);
  o.below("runtime [s]", seconds_since(start), 5.0);
  return o;
}

Outcome dissipative_asymptotics() {
  Outcome o;
  const double c_inf = asymptotic_concurrence_dissipative(0.2, 0.5);
  o.near("C(t->inf) delta=0.2", c_inf, 0.293, kRounding);

  const EnvSpec env{EnvKind::Dissipative, 0.5};
  const Trajectory& low = keep(evolve_numeric(0.5, {1.0, 0.2, 0.0}, env, 30.0));
  const DensityMatrix& late_low = low.samples.back().state;
  o.near("numeric C(t=30) delta=0.2", concurrence_x(late_low), c_inf, 0.01);
  const DiscordResult r_low = discord_and_classical(late_low);
  o.near("QD(t=30) delta=0.2", r_low.discord, 0.21, kRounding);
  o.near("CC(t=30) delta=0.2", r_low.classical, 0.21, kRounding);

  const Trajectory& high = keep(evolve_numeric(0.5, {1.0, 0.8, 0.0}, env, 30.0));
  const DiscordResult r_high = discord_and_classical(high.samples.back().state);
  o.near("QD(t=30) delta=0.8", r_high.discord, 0.06, kRounding);
  o.near("CC(t=30) delta=0.8", r_high.classical, 0.06, kRounding);

  const DiscordResult s_low = discord_and_classical(asymptotic_state(0.5, {1.0, 0.2, 0.0}, env));
  const DiscordResult s_high = discord_and_classical(asymptotic_state(0.5, {1.0, 0.8, 0.0}, env));
  o.near("QD(steady) delta=0.2", s_low.discord, 0.21, kRounding);
  o.near("QD(steady) delta=0.8", s_high.discord, 0.06, kRounding);
  return o;
}

Outcome environment_limits() {
  Outcome o;
  const Trajectory& noisy =
      keep(evolve_numeric(0.5, {1.0, 0.0, 0.0}, {EnvKind::Noisy, 0.5}, 10.0));
  const DensityMatrix& mixed = noisy.samples.back().state;
  o.below("noisy t=10 max|rho - I/4|", max_abs_entry(ComplexMat4(mixed.mat() - ComplexMat4::Identity() / 4.0)), 1e-4);
  const CorrelationReport n = correlations(mixed);
  o.below("noisy t=10 C", n.concurrence, 1e-3);
  o.below("noisy t=10 QD", n.discord, 1e-3);
  o.below("noisy t=10 CC", n.classical, 1e-3);

  const Trajectory& deph =
      keep(evolve_numeric(0.5, {1.0, 0.0, 0.0}, {EnvKind::Dephasing, 0.5}, 10.0));
  const CorrelationReport d = correlations(deph.samples.back().state);
  o.near("dephasing t=10 CC", d.classical, 0.19, kRounding);
  o.below("dephasing t=10 QD", d.discord, 1e-3);
  o.require("dephasing t=10 C == 0", d.concurrence == 0.0, "C = " + format_number(d.concurrence));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();

  const AuditReport audit = audit_closed_forms(AuditGrid{}, 1e-5);
  o.at_most("analytic vs numeric max deviation", audit.max_deviation, 1e-5);
  o.require("audit compared samples", audit.samples_compared > 0);
  for (const FormulaDiagnostic& d : audit.discrepancies) {
    std::ostringstream os;
    os << "diagnostic " << d.formula_id << ": max dev " << format_number(d.max_deviation)
       << " at p=" << d.p << " delta=" << d.delta << " D=" << d.d << " gamma=" << d.gamma
       << " t=" << format_number(d.t_at_max);
    o.info(os.str());
    o.require("only as-printed variants deviate (" + d.formula_id + ")",
              d.formula_id.ends_with(".as_printed"));
  }

  std::mt19937_64 rng(20240601);
  double worst_discord = 0.0;
  for (int n = 0; n < 50; ++n) {
    const DensityMatrix rho(testing::random_x_state(rng));
    worst_discord =
        std::max(worst_discord, std::abs(discord_and_classical(rho).discord - discord_bruteforce(rho)));
  }
  o.at_most("max |five-branch - brute force| over 50 X states", worst_discord, 2e-3);
  o.info("max |five-branch - brute force| = " + format_number(worst_discord));

  double worst_c = 0.0;
  for (int n = 0; n < 500; ++n) {
    const DensityMatrix rho(testing::random_x_state(rng));
    worst_c = std::max(worst_c, std::abs(concurrence_x(rho) - concurrence_general(rho)));
  }
  o.at_most("max |C_x - C_general| over 500 X states", worst_c, 1e-9);

  o.below("runtime [s]", seconds_since(start), 120.0);
  return o;
}

Outcome structural_invariants() {
  Outcome o;
  std::size_t states = 0;
  double worst_trace = 0.0, worst_herm = 0.0, lowest_eig = 0.0, worst_sum = 0.0;
  for (const Trajectory& tr : g_trajectories) {
    for (const Sample& s : tr.samples) {
      ++states;
      worst_trace = std::max(worst_trace, s.state.trace_error());
      worst_herm = std::max(worst_herm, hermiticity_error(s.state.mat()));
      lowest_eig = std::min(lowest_eig, s.state.min_eigenvalue());
      const DiscordResult r = discord_and_classical(s.state);
      worst_sum = std::max(worst_sum, std::abs(r.discord + r.classical - mutual_information(s.state)));
    }
  }
  o.require("trajectories recorded", states > 0);
  o.info(std::to_string(g_trajectories.size()) + " trajectories, " + std::to_string(states) + " states");
  o.at_most("max |trace - 1|", worst_trace, 1e-7);
  o.at_most("max hermiticity error", worst_herm, 1e-9);
  o.require("min eigenvalue >= -1e-6", lowest_eig >= -1e-6, format_number(lowest_eig));
  o.at_most("max |QD + CC - I|", worst_sum, 1e-9);
  return o;
}

Outcome closed_system() {
  Outcome o;
  const EnvSpec closed{EnvKind::Closed, 0.0};
  const Trajectory& a = keep(evolve_numeric(0.5, {1.0, 0.0, 1.0}, closed, 10.0));
  const Trajectory& b = keep(evolve_numeric(0.5, {1.0, 0.7, 1.0}, closed, 10.0));
  o.require("equal sample grids", a.samples.size() == b.samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.samples.size(), b.samples.size()); ++i) {
    const CorrelationReport ra = correlations(a.samples[i].state);
    const CorrelationReport rb = correlations(b.samples[i].state);
    worst = std::max({worst, std::abs(ra.concurrence - rb.concurrence),
                      std::abs(ra.discord - rb.discord), std::abs(ra.classical - rb.classical)});
  }
  o.at_most("max |measure(delta=0) - measure(delta=0.7)|", worst, 1e-8);

  double previous = INFINITY;
  bool reaches_zero = false;
  std::string mins;
  for (double d : {1.0, 2.0, 3.0, 5.0}) {
    const double m = min_concurrence_over_period(0.5, {1.0, 0.0, d}).min_concurrence;
    o.require("periodic minimum non-increasing at D=" + format_number(d), m <= previous,
              format_number(m) + " > " + format_number(previous));
    previous = m;
    reaches_zero = reaches_zero || m == 0.0;
    mins += " D=" + format_number(d) + ":" + format_number(m);
  }
  o.require("periodic minimum reaches 0 for some D", reaches_zero);
  o.info("periodic minimum of C:" + mins);
  o.info("critical D (reported, not asserted) = " + format_number(locate_critical_d(0.5, 1.0, 5.0)));
  return o;
}

Outcome sudden_death_ordering() {
  Outcome o;
  const Trajectory& tr =
      keep(evolve_numeric(0.5, {1.0, 0.0, 0.0}, {EnvKind::Noisy, 0.5}, 3.0, {1e-3, 1}));
  const auto death = std::find_if(tr.samples.begin(), tr.samples.end(),
                                  [](const Sample& s) { return concurrence_x(s.state) == 0.0; });
  o.require("concurrence reaches exactly 0 in finite time", death != tr.samples.end());
  if (death != tr.samples.end()) {
    const CorrelationReport r = correlations(death->state);
    o.info("C first 0 at t = " + format_number(death->t) + " (QD = " + format_number(r.discord) +
           ", CC = " + format_number(r.classical) + ")");
    o.above("QD at sudden death", r.discord, 0.0);
    o.above("CC at sudden death", r.classical, 0.0);
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  // Criterion 6 audits the trajectories produced by all the others, so it runs last.
  std::vector<Criterion> criteria{
      {1, "Werner spot values at t=0", werner_spot_values},
      {2, "amplitude-damping snapshot at t=2", damped_snapshot},
      {3, "dissipative asymptotics", dissipative_asymptotics},
      {4, "noisy and dephasing limits", environment_limits},
      {5, "oracle equivalence", oracle_equivalence},
      {7, "closed-system checks", closed_system},
      {8, "sudden-death ordering", sudden_death_ordering},
      {6, "structural invariants", structural_invariants},
  };
  std::vector<std::pair<const Criterion*, Outcome>> results;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    results.emplace_back(&c, std::move(o));
  }
  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.first->id < b.first->id; });

  int failures = 0;
  for (const auto& [c, o] : results) {
    std::printf("criterion %d: %s  %s\n", c->id, o.pass ? "PASS" : "FAIL", c->title);
    for (const std::string& note : o.notes) std::printf("    %s\n", note.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
  return failures == 0 ? 0 : 1;
}
