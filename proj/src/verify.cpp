#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "spindyn/harness.hpp"

namespace spindyn {

namespace {

class Checklist {
 public:
  void near(std::string name, double value, double expected, double tol) {
    add({std::move(name), value, expected, tol, Relation::Near,
         std::abs(value - expected) <= tol});
  }
  void below(std::string name, double value, double threshold) {
    add({std::move(name), value, threshold, 0.0, Relation::Below, value < threshold});
  }
  void above(std::string name, double value, double threshold) {
    add({std::move(name), value, threshold, 0.0, Relation::Above, value > threshold});
  }
  std::vector<VerifyCheck> take() { return std::move(checks_); }

 private:
  void add(VerifyCheck c) {
    if (!std::isfinite(c.value)) c.pass = false;
    checks_.push_back(std::move(c));
  }
  std::vector<VerifyCheck> checks_;
};

// Reference values are quoted to 2 decimals.
constexpr double kTwoDecimals = 0.005;

DensityMatrix final_state(double p, const ModelParams& params, const EnvSpec& env, double t) {
  return evolve_numeric(p, params, env, t).samples.back().state;
}

}  // namespace

std::vector<VerifyCheck> verify_reference_values(const VerifyOptions& opts) {
  Checklist list;

  // No decoherence, Werner p = 1/2.
  {
    const DensityMatrix w = werner_state(0.5);
    const DiscordResult dr = discord_and_classical(w);
    list.near("werner(0.5) concurrence", concurrence_general(w), 0.25, 1e-9);
    list.near("werner(0.5) concurrence, X formula", concurrence_x(w), 0.25, 1e-9);
    list.near("werner(0.5) discord", dr.discord, 0.26, kTwoDecimals);
    list.near("werner(0.5) classical correlation", dr.classical, 0.19, kTwoDecimals);
    list.near("werner(1/3) concurrence", concurrence_general(werner_state(1.0 / 3.0)), 0.0, 1e-9);

    Scenario closed_run;
    closed_run.p0 = 0.5;
    closed_run.params.d = 1.0;
    closed_run.t_end = 1.0;
    const ScenarioRow first = run_scenario(closed_run, RunMode::Numeric).rows.front();
    list.near("closed D=1 row t=0: C", first.concurrence, 0.25, 1e-9);
    list.near("closed D=1 row t=0: QD", first.discord, 0.26, kTwoDecimals);
    list.near("closed D=1 row t=0: CC", first.classical, 0.19, kTwoDecimals);
  }

  // Amplitude damping snapshot at t = 2, p = 0, delta = 0.4.
  {
    const ModelParams params{1.0, 0.4, 0.0};
    const EnvSpec env{EnvKind::Dissipative, opts.snapshot_gamma};
    const DensityMatrix rho = final_state(0.0, params, env, 2.0);
    list.near("snapshot rho11", rho(1, 1).real(), 0.11, kTwoDecimals);
    list.near("snapshot rho22", rho(2, 2).real(), 0.17, kTwoDecimals);
    list.near("snapshot rho33", rho(3, 3).real(), 0.17, kTwoDecimals);
    list.near("snapshot rho44", rho(4, 4).real(), 0.55, kTwoDecimals);
    list.near("snapshot |rho14|", std::abs(rho(1, 4)), 0.17, kTwoDecimals);
    list.near("snapshot Im rho14", rho(1, 4).imag(), -0.17, kTwoDecimals);

    const DiscordResult dr = discord_and_classical(rho);
    list.near("snapshot S(rho_A)", von_neumann_entropy(partial_trace(rho.mat(), Subsystem::A)), 0.85,
              kTwoDecimals);
    list.near("snapshot S(rho_B)", von_neumann_entropy(partial_trace(rho.mat(), Subsystem::B)), 0.85,
              kTwoDecimals);
    list.near("snapshot S(rho)", von_neumann_entropy(rho.mat()), 1.5, kTwoDecimals);
    list.near("snapshot mutual information", mutual_information(rho), 0.2, kTwoDecimals);
    list.near("snapshot S1", dr.branches[0], 0.83, kTwoDecimals);
    for (int k = 1; k < 5; ++k)
      list.near("snapshot S" + std::to_string(k + 1), dr.branches[k], 0.75, kTwoDecimals);
    list.near("snapshot discord", dr.discord, 0.1, kTwoDecimals);
    list.near("snapshot classical correlation", dr.classical, 0.1, kTwoDecimals);
  }

  // Amplitude damping, late time.
  {
    list.near("asymptotic C(delta=0.2, gamma=0.5)", asymptotic_concurrence_dissipative(0.2, 0.5), 0.29,
              kTwoDecimals);
    list.near("asymptotic C(delta=0.5, gamma=0.5)", asymptotic_concurrence_dissipative(0.5, 0.5), 0.0,
              1e-12);
    const EnvSpec env{EnvKind::Dissipative, 0.5};
    const DensityMatrix a02 = asymptotic_state(0.5, {1.0, 0.2, 0.0}, env);
    const DensityMatrix a08 = asymptotic_state(0.5, {1.0, 0.8, 0.0}, env);
    list.near("asymptotic state delta=0.2: C (X formula)", concurrence_x(a02), 0.29, kTwoDecimals);
    const DiscordResult d02 = discord_and_classical(a02);
    const DiscordResult d08 = discord_and_classical(a08);
    list.near("asymptotic state delta=0.2: QD", d02.discord, 0.21, kTwoDecimals);
    list.near("asymptotic state delta=0.2: CC", d02.classical, 0.21, kTwoDecimals);
    list.near("asymptotic state delta=0.8: QD", d08.discord, 0.06, kTwoDecimals);
    list.near("asymptotic state delta=0.8: CC", d08.classical, 0.06, kTwoDecimals);

    Scenario isotropic_run;
    isotropic_run.p0 = 0.5;
    isotropic_run.env = env;
    const ScenarioRow last = run_scenario(isotropic_run, RunMode::Numeric).rows.back();
    list.below("delta=0: max(C, QD, CC) at t=10",
               std::max({last.concurrence, last.discord, last.classical}), 0.01);

    Scenario no_revival_run;
    no_revival_run.p0 = 0.0;
    no_revival_run.params.delta = 0.8;
    no_revival_run.env = env;
    no_revival_run.t_end = 20.0;
    const ScenarioTable no_revival = run_scenario(no_revival_run, RunMode::Numeric);
    double max_c = 0.0;
    for (const ScenarioRow& r : no_revival.rows) max_c = std::max(max_c, r.concurrence);
    list.near("p=0 delta=0.8: max C over t in [0, 20]", max_c, 0.0, 0.0);
    list.above("p=0 delta=0.8: QD at t=20", no_revival.rows.back().discord, 0.0);
    list.above("p=0 delta=0.8: CC at t=20", no_revival.rows.back().classical, 0.0);

    SweepGrid delta_time_grid;
    delta_time_grid.base.p0 = 0.5;
    delta_time_grid.base.env = env;
    delta_time_grid.axis1 = {"delta", 0.0, 1.0, 11};
    delta_time_grid.axis2 = {"t", 0.0, 30.0, 4};
    const SweepTable sweep = run_sweep(delta_time_grid);
    double max_c_strong = 0.0;
    for (const SweepRow& r : sweep.rows) {
      if (r.axis2 != 30.0) continue;
      if (r.axis1 > 0.5 + 1e-12) max_c_strong = std::max(max_c_strong, r.concurrence);
      if (std::abs(r.axis1 - 0.2) < 1e-12) {
        list.near("sweep delta=0.2, t=30: QD", r.discord, 0.21, kTwoDecimals);
        list.near("sweep delta=0.2, t=30: CC", r.classical, 0.21, kTwoDecimals);
      }
    }
    list.near("sweep delta>0.5, t=30: max C", max_c_strong, 0.0, 0.0);
  }

  // Noisy and dephasing limits, p = 1/2.
  {
    const ModelParams params{1.0, 0.0, 0.0};
    const DensityMatrix noisy = final_state(0.5, params, {EnvKind::Noisy, 0.5}, 10.0);
    list.near("noisy t=10: max |rho - I/4|",
              max_abs_entry(ComplexMat4(noisy.mat() - ComplexMat4::Identity() / 4.0)), 0.0, 1e-4);
    list.near("noisy asymptotic state: max |rho - I/4|",
              max_abs_entry(ComplexMat4(asymptotic_state(0.5, params, {EnvKind::Noisy, 0.5}).mat() -
                                        ComplexMat4::Identity() / 4.0)),
              0.0, 1e-12);

    const DensityMatrix deph = evolve_analytic(0.5, params, {EnvKind::Dephasing, 0.5}, 40.0);
    list.near("dephasing late rho11", deph(1, 1).real(), 0.125, 1e-9);
    list.near("dephasing late rho22", deph(2, 2).real(), 0.375, 1e-9);
    list.near("dephasing late rho33", deph(3, 3).real(), 0.375, 1e-9);
    list.near("dephasing late rho44", deph(4, 4).real(), 0.125, 1e-9);
    const DensityMatrix deph_num = final_state(0.5, params, {EnvKind::Dephasing, 0.5}, 10.0);
    const CorrelationReport rep = correlations(deph_num);
    list.near("dephasing t=10: CC", rep.classical, 0.19, kTwoDecimals);
    list.below("dephasing t=10: QD", rep.discord, 1e-3);
    list.near("dephasing t=10: C", rep.concurrence, 0.0, 0.0);
  }

  return list.take();
}

void print_verify_report(std::ostream& out, const std::vector<VerifyCheck>& checks) {
  std::size_t failed = 0;
  out << std::left << std::setw(48) << "check" << std::right << std::setw(16) << "value"
      << std::setw(16) << "expected" << std::setw(12) << "tolerance" << "  result\n";
  for (const VerifyCheck& c : checks) {
    std::string expected = format_number(c.expected);
    if (c.relation == Relation::Below) expected = "< " + expected;
    if (c.relation == Relation::Above) expected = "> " + expected;
    out << std::left << std::setw(48) << c.name << std::right << std::setw(16)
        << format_number(c.value) << std::setw(16) << expected << std::setw(12)
        << (c.relation == Relation::Near ? format_number(c.tolerance) : "-") << "  "
        << (c.pass ? "PASS" : "FAIL") << '\n';
    if (!c.pass) ++failed;
  }
  out << checks.size() - failed << "/" << checks.size() << " checks passed\n";
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

}  // namespace spindyn
