#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spindyn/model.hpp"

namespace spindyn {

struct Sample {
  double t;
  DensityMatrix state;
};

struct Trajectory {
  std::vector<Sample> samples;  ///< strictly increasing t, first sample at t = 0
  ModelParams params;
  EnvSpec env;
  std::optional<double> p0;  ///< Werner purity when started from werner_state
};

/// Numeric trajectories abort past these limits with Error(InvariantViolated).
inline constexpr double kTraceDriftLimit = 1e-7;
inline constexpr double kMinEigenvalueLimit = -1e-6;
inline constexpr double kMaxStep = 0.01;

struct IntegratorOptions {
  double dt = 1e-3;  ///< upper bound on the RK4 step, in (0, kMaxStep]
  int stride = 10;   ///< store every stride-th step (plus t = 0 and t_end)
};

/// Fixed-step classical RK4 on the 16 complex components of rho.
/// The step is t_end / ceil(t_end / dt), so t_end is hit exactly.
Trajectory evolve_numeric(const DensityMatrix& rho0, const ModelParams& params,
                          const EnvSpec& env, double t_end, IntegratorOptions opts = {});

/// Times at which evolve_numeric stores samples.
std::vector<double> numeric_sample_times(double t_end, IntegratorOptions opts = {});

/// Same, starting from werner_state(p); records p0.
Trajectory evolve_numeric(double p, const ModelParams& params, const EnvSpec& env,
                          double t_end, IntegratorOptions opts = {});

/// States at each requested time (non-decreasing, >= 0). Each interval
/// between consecutive targets is split into equal RK4 steps no longer than dt.
std::vector<DensityMatrix> evolve_numeric_at(const DensityMatrix& rho0,
                                             const ModelParams& params,
                                             const EnvSpec& env,
                                             std::span<const double> times, double dt);

/// Constants that appear in the closed-form propagators.
struct AnalyticAux {
  double nu;       ///< sqrt(D^2 + J^2)
  Complex omega;   ///< gamma - 2i delta
  Complex kcoef;   ///< sqrt(gamma^2 - 16 (D^2 + J^2)), principal branch

  static AnalyticAux make(const ModelParams& params, double gamma);
};

/// Werner initial state evolved with the closed-form solution for the
/// environment, or by exact diagonalisation of H when env is Closed.
/// Throws Error(SingularParameterization) when a denominator of the closed
/// form (|omega|^2, nu or K) is below 1e-12; fall back to evolve_numeric.
DensityMatrix evolve_analytic(double p, const ModelParams& params, const EnvSpec& env,
                              double t);

/// t -> infinity limit for an open environment with gamma > 0.
/// Throws Error(Unsupported) for Closed and Error(OutOfRange) for gamma <= 0.
DensityMatrix asymptotic_state(double p, const ModelParams& params, const EnvSpec& env);

/// 2 max(0, (gamma delta - delta^2) / (4 delta^2 + gamma^2)).
double asymptotic_concurrence_dissipative(double delta, double gamma);

namespace closed_form {

/// Bracketing of the common term in the rho22/rho33 amplitude-damping
/// populations. The printed form attaches nu^2 to the gamma^2 term only;
/// the ODE requires it on both terms (the two coincide when D = 0 or
/// delta = 0).
enum class PopulationReading { Resolved, AsPrinted };

// Raw complex matrices straight from the formulas (no Hermitisation).
ComplexMat4 dissipative(double p, const ModelParams& params, double gamma, double t,
                        PopulationReading reading = PopulationReading::Resolved);
ComplexMat4 noisy(double p, const ModelParams& params, double gamma, double t);
ComplexMat4 dephasing(double p, const ModelParams& params, double gamma, double t);
ComplexMat4 unitary(const ComplexMat4& rho0, const ModelParams& params, double t);

}  // namespace closed_form

/// A closed-form element that disagrees with the integrated master equation.
struct FormulaDiagnostic {
  std::string formula_id;  ///< e.g. "dissipative.rho22.as_printed"
  double p;
  double delta;
  double d;
  double gamma;
  double t_at_max;
  double max_deviation;
};

struct AuditGrid {
  std::vector<double> p{0.0, 0.5, 1.0};
  std::vector<double> delta{0.0, 0.2, 0.8};
  std::vector<double> d{0.0, 1.0};
  std::vector<double> gamma{0.25, 0.5};
  double t_end = 10.0;
  IntegratorOptions integrator{1e-3, 10};
};

struct AuditReport {
  /// Largest max-entry distance between evolve_analytic and evolve_numeric.
  double max_deviation = 0.0;
  std::size_t samples_compared = 0;
  /// Every element formula (implemented or as-printed) above tolerance.
  std::vector<FormulaDiagnostic> discrepancies;
};

/// Compares the closed forms of all three open environments against RK4
/// over the grid, sample by sample.
AuditReport audit_closed_forms(const AuditGrid& grid, double tolerance);

}  // namespace spindyn
