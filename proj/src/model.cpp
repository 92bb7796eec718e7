#include "spindyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spindyn/error.hpp"

namespace spindyn {

double ModelParams::nu() const { return std::sqrt(d * d + j * j); }

void ModelParams::validate() const {
  const bool finite = std::isfinite(j) && std::isfinite(delta) && std::isfinite(d);
  if (!finite || j <= 0.0 || delta < 0.0 || d < 0.0) {
    std::ostringstream os;
    os << "invalid model parameters (J=" << j << ", delta=" << delta << ", D=" << d
       << "); need J > 0, delta >= 0, D >= 0";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

std::string_view to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::Closed: return "closed";
    case EnvKind::Dissipative: return "dissipative";
    case EnvKind::Noisy: return "noisy";
    case EnvKind::Dephasing: return "dephasing";
  }
  return "closed";
}

EnvKind parse_env_kind(std::string_view name) {
  if (name == "closed") return EnvKind::Closed;
  if (name == "dissipative") return EnvKind::Dissipative;
  if (name == "noisy") return EnvKind::Noisy;
  if (name == "dephasing") return EnvKind::Dephasing;
  throw Error(ErrorCode::Config, "unknown environment '" + std::string(name) +
                                     "' (expected closed|dissipative|noisy|dephasing)");
}

void EnvSpec::validate() const {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    std::ostringstream os;
    os << "coupling strength gamma=" << gamma << " must be finite and >= 0";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

DensityMatrix::DensityMatrix(const ComplexMat4& mat, StateTolerance tol) {
  if (!all_finite(mat))
    throw Error(ErrorCode::InvariantViolated, "density matrix has non-finite entries");
  const double herm = hermiticity_error(mat);
  if (herm > tol.hermitian) {
    std::ostringstream os;
    os << "density matrix not Hermitian (error " << herm << ")";
    throw Error(ErrorCode::InvariantViolated, os.str());
  }
  mat_ = hermitize(mat);
  if (trace_error() > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace off by " << trace_error();
    throw Error(ErrorCode::InvariantViolated, os.str());
  }
  const double lo = min_eigenvalue();
  if (lo < tol.min_eigenvalue) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << lo << " below " << tol.min_eigenvalue;
    throw Error(ErrorCode::InvariantViolated, os.str());
  }
}

double DensityMatrix::trace_error() const { return std::abs(mat_.trace() - 1.0); }

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(mat_)[3]; }

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "Werner purity p=" << p << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  ComplexMat4 rho = ComplexMat4::Identity() * ((1.0 - p) / 4.0);
  rho(1, 1) += p / 2.0;
  rho(2, 2) += p / 2.0;
  rho(1, 2) += p / 2.0;
  rho(2, 1) += p / 2.0;
  return DensityMatrix(rho);
}

namespace {

struct LocalOps {
  ComplexMat4 plus1 = kron(pauli::plus(), pauli::identity());
  ComplexMat4 minus1 = kron(pauli::minus(), pauli::identity());
  ComplexMat4 plus2 = kron(pauli::identity(), pauli::plus());
  ComplexMat4 minus2 = kron(pauli::identity(), pauli::minus());
};

}  // namespace

ComplexMat4 build_hamiltonian(const ModelParams& params) {
  params.validate();
  const LocalOps s;
  const Complex flip_flop(params.j, params.d);
  return flip_flop * s.plus1 * s.minus2 + std::conj(flip_flop) * s.minus1 * s.plus2 +
         params.delta * (s.plus1 * s.plus2 + s.minus1 * s.minus2);
}

std::vector<JumpOperator> jump_operators(const EnvSpec& env) {
  env.validate();
  const double g = env.effective_gamma();
  const LocalOps s;
  switch (env.kind) {
    case EnvKind::Closed:
      return {};
    case EnvKind::Dissipative:
      return {{g, s.minus1}, {g, s.minus2}};
    case EnvKind::Noisy:
      return {{g, s.minus1}, {g, s.minus2}, {g, s.plus1}, {g, s.plus2}};
    case EnvKind::Dephasing:
      return {{g, s.plus1 * s.minus1}, {g, s.plus2 * s.minus2}};
  }
  return {};
}

ComplexMat4 lindblad_dissipator(const ComplexMat4& rho,
                                std::span<const JumpOperator> channels) {
  ComplexMat4 out = ComplexMat4::Zero();
  for (const auto& [rate, op] : channels) {
    const ComplexMat4 op_dag = op.adjoint();
    const ComplexMat4 number = op_dag * op;
    out += (rate / 2.0) * (2.0 * op * rho * op_dag - number * rho - rho * number);
  }
  return out;
}

MasterEquation::MasterEquation(const ModelParams& params, const EnvSpec& env)
    : hamiltonian_(build_hamiltonian(params)), channels_(jump_operators(env)) {}

ComplexMat4 MasterEquation::derivative(const ComplexMat4& rho) const {
  ComplexMat4 out = -kI * (hamiltonian_ * rho - rho * hamiltonian_);
  out += lindblad_dissipator(rho, channels_);
  return out;
}

MasterEquation::Superoperator MasterEquation::superoperator() const {
  Superoperator out;
  for (int col = 0; col < 16; ++col) {
    ComplexMat4 unit = ComplexMat4::Zero();
    unit(col % 4, col / 4) = 1.0;
    out.col(col) = derivative(unit).reshaped();
  }
  return out;
}

ComplexMat4 lindblad_rhs(const DensityMatrix& rho, const ModelParams& params,
                         const EnvSpec& env) {
  return MasterEquation(params, env).derivative(rho.mat());
}

}  // namespace spindyn
