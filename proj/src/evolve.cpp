#include "spindyn/evolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "spindyn/error.hpp"

namespace spindyn {

namespace {

constexpr double kSingularTol = 1e-12;

using Vec16 = Eigen::Matrix<Complex, 16, 1>;

void check_step_options(double t_end, const IntegratorOptions& opts) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    std::ostringstream os;
    os << "t_end=" << t_end << " must be > 0";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  if (!(opts.dt > 0.0 && opts.dt <= kMaxStep)) {
    std::ostringstream os;
    os << "dt=" << opts.dt << " must lie in (0, " << kMaxStep << "]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  if (opts.stride < 1) throw Error(ErrorCode::OutOfRange, "stride must be >= 1");
}

long step_count(double span, double dt) {
  return std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
}

class Rk4 {
 public:
  Rk4(const ModelParams& params, const EnvSpec& env)
      : generator_(MasterEquation(params, env).superoperator()) {}

  void step(Vec16& y, double h) const {
    const Vec16 k1 = generator_ * y;
    const Vec16 k2 = generator_ * (y + (h / 2.0) * k1);
    const Vec16 k3 = generator_ * (y + (h / 2.0) * k2);
    const Vec16 k4 = generator_ * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

 private:
  MasterEquation::Superoperator generator_;
};

ComplexMat4 as_matrix(const Vec16& y) { return y.reshaped(4, 4); }

DensityMatrix checked_sample(const Vec16& y, double t) {
  const ComplexMat4 m = hermitize(as_matrix(y));
  const double drift = std::abs(m.trace() - 1.0);
  if (!(drift <= kTraceDriftLimit)) {
    std::ostringstream os;
    os << "trace drifted by " << drift << " at t=" << t;
    throw Error(ErrorCode::InvariantViolated, os.str());
  }
  const double lo = hermitian_eigenvalues(m)[3];
  if (lo < kMinEigenvalueLimit) {
    std::ostringstream os;
    os << "eigenvalue " << lo << " below " << kMinEigenvalueLimit << " at t=" << t;
    throw Error(ErrorCode::InvariantViolated, os.str());
  }
  return DensityMatrix(m, StateTolerance{kHermitianTol, kTraceDriftLimit, kMinEigenvalueLimit});
}

// Analytic results carry round-off imaginary parts on the diagonal only.
DensityMatrix finish_analytic(const ComplexMat4& raw) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(raw(i, i).imag()) > 1e-9) {
      std::ostringstream os;
      os << "closed form produced complex population " << raw(i, i);
      throw Error(ErrorCode::InvariantViolated, os.str());
    }
  }
  return DensityMatrix(hermitize(raw));
}

void fill_lower(ComplexMat4& r) {
  r(3, 0) = std::conj(r(0, 3));
  r(2, 1) = std::conj(r(1, 2));
}

Complex coherence23(double p, const ModelParams& params, Complex envelope_j,
                    Complex envelope_d) {
  // p (iJ e_j + D e_d) / (2 (D + iJ))
  const Complex denom = 2.0 * Complex(params.d, params.j);
  return p * (kI * params.j * envelope_j + params.d * envelope_d) / denom;
}

}  // namespace

Trajectory evolve_numeric(const DensityMatrix& rho0, const ModelParams& params,
                          const EnvSpec& env, double t_end, IntegratorOptions opts) {
  check_step_options(t_end, opts);
  const Rk4 rk4(params, env);
  const long n = step_count(t_end, opts.dt);
  const double h = t_end / static_cast<double>(n);

  Trajectory traj{{}, params, env, std::nullopt};
  traj.samples.reserve(static_cast<std::size_t>(n / opts.stride + 2));
  traj.samples.push_back({0.0, rho0});

  Vec16 y = rho0.mat().reshaped();
  for (long k = 1; k <= n; ++k) {
    rk4.step(y, h);
    if (k % opts.stride == 0 || k == n) {
      const double t = k == n ? t_end : static_cast<double>(k) * h;
      traj.samples.push_back({t, checked_sample(y, t)});
    }
  }
  return traj;
}

std::vector<double> numeric_sample_times(double t_end, IntegratorOptions opts) {
  check_step_options(t_end, opts);
  const long n = step_count(t_end, opts.dt);
  const double h = t_end / static_cast<double>(n);
  std::vector<double> out{0.0};
  for (long k = 1; k <= n; ++k)
    if (k % opts.stride == 0 || k == n) out.push_back(k == n ? t_end : static_cast<double>(k) * h);
  return out;
}

Trajectory evolve_numeric(double p, const ModelParams& params, const EnvSpec& env,
                          double t_end, IntegratorOptions opts) {
  Trajectory traj = evolve_numeric(werner_state(p), params, env, t_end, opts);
  traj.p0 = p;
  return traj;
}

std::vector<DensityMatrix> evolve_numeric_at(const DensityMatrix& rho0,
                                             const ModelParams& params,
                                             const EnvSpec& env,
                                             std::span<const double> times, double dt) {
  if (!(dt > 0.0 && dt <= kMaxStep)) {
    std::ostringstream os;
    os << "dt=" << dt << " must lie in (0, " << kMaxStep << "]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  const Rk4 rk4(params, env);
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  Vec16 y = rho0.mat().reshaped();
  double now = 0.0;
  for (double target : times) {
    if (!(target >= now)) throw Error(ErrorCode::OutOfRange, "sample times must be non-decreasing and >= 0");
    if (target > now) {
      const long n = step_count(target - now, dt);
      const double h = (target - now) / static_cast<double>(n);
      for (long k = 0; k < n; ++k) rk4.step(y, h);
      now = target;
    }
    out.push_back(target == 0.0 ? rho0 : checked_sample(y, target));
  }
  return out;
}

AnalyticAux AnalyticAux::make(const ModelParams& params, double gamma) {
  const double nu = params.nu();
  return {nu, Complex(gamma, -2.0 * params.delta),
          std::sqrt(Complex(gamma * gamma - 16.0 * nu * nu, 0.0))};
}

namespace closed_form {

ComplexMat4 dissipative(double p, const ModelParams& params, double g, double t,
                        PopulationReading reading) {
  const AnalyticAux aux = AnalyticAux::make(params, g);
  const double w2 = std::norm(aux.omega);
  if (w2 < kSingularTol || aux.nu < kSingularTol)
    throw Error(ErrorCode::SingularParameterization,
                "amplitude-damping closed form singular (|omega|^2 or nu ~ 0)");
  const double dl = params.delta;
  const double nu = aux.nu;
  const Complex w = aux.omega;
  const Complex wc = std::conj(w);

  // The e^{-2 gamma t} prefactor is distributed into every term so that
  // nothing overflows at late times.
  const double decay = std::exp(-2.0 * g * t);
  const Complex ew = std::exp((w - 2.0 * g) * t);    // e^{-2gt} e^{wt}
  const Complex ewc = std::exp((wc - 2.0 * g) * t);  // e^{-2gt} e^{w*t}
  const Complex rot = std::exp(kI * (4.0 * dl * t)) - 1.0;

  ComplexMat4 r = ComplexMat4::Zero();
  r(0, 0) = ((1.0 - p) * g * g * decay + 2.0 * kI * ew * rot * g * dl +
             4.0 * dl * dl * (1.0 - p * decay)) /
            (4.0 * w2);

  const Complex ewc_plain = std::exp(-wc * t);
  r(0, 3) = g / (4.0 * w2) *
            (rot * g * ewc_plain +
             2.0 * kI * dl * ((rot + 2.0) * ewc_plain - 2.0));

  const Complex d_term = params.d * kI * nu * p * w2 *
                         std::exp(Complex(-g, -2.0 * nu) * t) *
                         (std::exp(kI * (4.0 * nu * t)) - 1.0);
  const Complex gamma_part = g * g * ((p - 1.0) * decay + ew + ewc);
  const double delta_part = 4.0 * dl * dl * (1.0 + p * decay);
  const Complex common = reading == PopulationReading::Resolved
                             ? nu * nu * (gamma_part + delta_part)
                             : nu * nu * gamma_part + delta_part;
  r(1, 1) = (-d_term + common) / (4.0 * nu * nu * w2);
  r(2, 2) = (d_term + common) / (4.0 * nu * nu * w2);

  const double cos_env = std::cos(2.0 * nu * t);
  r(1, 2) = coherence23(p, params, std::exp(-g * t), std::exp(-g * t) * cos_env);

  r(3, 3) = (g * g * ((1.0 - p) * decay + 4.0 - 2.0 * ew - 2.0 * ewc) -
             2.0 * kI * ew * rot * g * dl + 4.0 * dl * dl * (1.0 - p * decay)) /
            (4.0 * w2);
  fill_lower(r);
  return r;
}

ComplexMat4 noisy(double p, const ModelParams& params, double g, double t) {
  const double nu = params.nu();
  if (nu < kSingularTol)
    throw Error(ErrorCode::SingularParameterization, "noisy closed form singular (nu ~ 0)");
  const double decay4 = std::exp(-4.0 * g * t);
  const Complex beat = params.d / (kI * nu) *
                       (std::exp(Complex(-2.0 * g, 2.0 * nu) * t) -
                        std::exp(Complex(-2.0 * g, -2.0 * nu) * t));
  ComplexMat4 r = ComplexMat4::Zero();
  r(0, 0) = r(3, 3) = (1.0 - p * decay4) / 4.0;
  r(1, 1) = (1.0 + p * (decay4 + beat)) / 4.0;
  r(2, 2) = (1.0 + p * (decay4 - beat)) / 4.0;
  const double decay2 = std::exp(-2.0 * g * t);
  r(1, 2) = coherence23(p, params, decay2, decay2 * std::cos(2.0 * nu * t));
  fill_lower(r);
  return r;
}

ComplexMat4 dephasing(double p, const ModelParams& params, double g, double t) {
  const AnalyticAux aux = AnalyticAux::make(params, g);
  const Complex k = aux.kcoef;
  if (std::abs(k) < kSingularTol || aux.nu < kSingularTol)
    throw Error(ErrorCode::SingularParameterization,
                "dephasing closed form singular (K ~ 0)");
  // e^{-gt/2} e^{+-Kt/2}; Re K < gamma so both stay bounded.
  const Complex grow = std::exp((k - g) * t / 2.0);
  const Complex shrink = std::exp(-(k + g) * t / 2.0);
  const Complex imbalance = 4.0 * params.d * (grow - shrink) / k;

  ComplexMat4 r = ComplexMat4::Zero();
  r(0, 0) = r(3, 3) = (1.0 - p) / 4.0;
  r(1, 1) = (1.0 + p * (1.0 + imbalance)) / 4.0;
  r(2, 2) = (1.0 + p * (1.0 - imbalance)) / 4.0;
  const Complex cosh_env = (grow + shrink) / 2.0;
  const Complex sinh_env = (grow - shrink) / 2.0;
  r(1, 2) = coherence23(p, params, std::exp(-g * t), cosh_env - g * sinh_env / k);
  fill_lower(r);
  return r;
}

ComplexMat4 unitary(const ComplexMat4& rho0, const ModelParams& params, double t) {
  const ComplexMat4 h = build_hamiltonian(params);
  Eigen::SelfAdjointEigenSolver<ComplexMat4> solver(h);
  const ComplexMat4& v = solver.eigenvectors();
  Eigen::Matrix<Complex, 4, 1> phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::exp(-kI * (solver.eigenvalues()(i) * t));
  const ComplexMat4 u = v * phases.asDiagonal() * v.adjoint();
  return u * rho0 * u.adjoint();
}

}  // namespace closed_form

DensityMatrix evolve_analytic(double p, const ModelParams& params, const EnvSpec& env,
                              double t) {
  params.validate();
  env.validate();
  if (!(t >= 0.0)) throw Error(ErrorCode::OutOfRange, "t must be >= 0");
  const DensityMatrix rho0 = werner_state(p);
  if (t == 0.0) return rho0;
  const double g = env.effective_gamma();
  switch (env.kind) {
    case EnvKind::Closed:
      return finish_analytic(closed_form::unitary(rho0.mat(), params, t));
    case EnvKind::Dissipative:
      return finish_analytic(closed_form::dissipative(p, params, g, t));
    case EnvKind::Noisy:
      return finish_analytic(closed_form::noisy(p, params, g, t));
    case EnvKind::Dephasing:
      return finish_analytic(closed_form::dephasing(p, params, g, t));
  }
  throw Error(ErrorCode::Unsupported, "unknown environment");
}

DensityMatrix asymptotic_state(double p, const ModelParams& params, const EnvSpec& env) {
  params.validate();
  env.validate();
  if (env.kind == EnvKind::Closed)
    throw Error(ErrorCode::Unsupported, "closed system has no asymptotic state");
  const double g = env.gamma;
  if (!(g > 0.0)) throw Error(ErrorCode::OutOfRange, "asymptotic state needs gamma > 0");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::OutOfRange, "p outside [0, 1]");

  ComplexMat4 r = ComplexMat4::Zero();
  switch (env.kind) {
    case EnvKind::Dissipative: {
      const double dl = params.delta;
      const double denom = 4.0 * dl * dl + g * g;
      r(0, 0) = r(1, 1) = r(2, 2) = dl * dl / denom;
      r(3, 3) = (dl * dl + g * g) / denom;
      r(0, 3) = Complex(0.0, -g * dl / denom);
      r(3, 0) = std::conj(r(0, 3));
      break;
    }
    case EnvKind::Noisy:
      r = ComplexMat4::Identity() / 4.0;
      break;
    case EnvKind::Dephasing:
      // Populations freeze at their initial values; rho23 decays to 0.
      r(0, 0) = r(3, 3) = (1.0 - p) / 4.0;
      r(1, 1) = r(2, 2) = (1.0 + p) / 4.0;
      break;
    case EnvKind::Closed:
      break;
  }
  return DensityMatrix(r);
}

double asymptotic_concurrence_dissipative(double delta, double gamma) {
  if (!(gamma > 0.0) || !(delta >= 0.0))
    throw Error(ErrorCode::OutOfRange, "need gamma > 0 and delta >= 0");
  const double value = (gamma * delta - delta * delta) / (4.0 * delta * delta + gamma * gamma);
  return 2.0 * std::max(0.0, value);
}

AuditReport audit_closed_forms(const AuditGrid& grid, double tolerance) {
  struct Element {
    const char* name;
    int row;
    int col;
  };
  static constexpr std::array<Element, 6> kElements{{{"rho11", 0, 0},
                                                     {"rho22", 1, 1},
                                                     {"rho33", 2, 2},
                                                     {"rho44", 3, 3},
                                                     {"rho14", 0, 3},
                                                     {"rho23", 1, 2}}};
  AuditReport report;
  for (EnvKind kind : {EnvKind::Dissipative, EnvKind::Noisy, EnvKind::Dephasing}) {
    for (double p : grid.p) {
      for (double dl : grid.delta) {
        for (double d : grid.d) {
          for (double g : grid.gamma) {
            const ModelParams params{1.0, dl, d};
            const EnvSpec env{kind, g};
            const Trajectory traj = evolve_numeric(p, params, env, grid.t_end, grid.integrator);

            // (variant, element) -> (max deviation, t at max)
            std::array<std::array<std::pair<double, double>, 6>, 2> worst{};
            const int variants = kind == EnvKind::Dissipative ? 2 : 1;
            for (const Sample& s : traj.samples) {
              const ComplexMat4& numeric = s.state.mat();
              const DensityMatrix analytic = evolve_analytic(p, params, env, s.t);
              report.max_deviation =
                  std::max(report.max_deviation, max_abs_entry(ComplexMat4(analytic.mat() - numeric)));
              ++report.samples_compared;
              for (int v = 0; v < variants; ++v) {
                ComplexMat4 raw;
                if (kind == EnvKind::Dissipative) {
                  raw = closed_form::dissipative(
                      p, params, g, s.t,
                      v == 0 ? closed_form::PopulationReading::Resolved
                             : closed_form::PopulationReading::AsPrinted);
                } else if (kind == EnvKind::Noisy) {
                  raw = closed_form::noisy(p, params, g, s.t);
                } else {
                  raw = closed_form::dephasing(p, params, g, s.t);
                }
                if (s.t == 0.0) raw = werner_state(p).mat();
                for (std::size_t e = 0; e < kElements.size(); ++e) {
                  const double dev = std::abs(raw(kElements[e].row, kElements[e].col) -
                                              numeric(kElements[e].row, kElements[e].col));
                  if (dev > worst[v][e].first) worst[v][e] = {dev, s.t};
                }
              }
            }
            for (int v = 0; v < variants; ++v) {
              for (std::size_t e = 0; e < kElements.size(); ++e) {
                if (worst[v][e].first <= tolerance) continue;
                std::string id = std::string(to_string(kind)) + "." + kElements[e].name;
                if (v == 1) id += ".as_printed";
                report.discrepancies.push_back(
                    {id, p, dl, d, g, worst[v][e].second, worst[v][e].first});
              }
            }
          }
        }
      }
    }
  }
  return report;
}

}  // namespace spindyn
