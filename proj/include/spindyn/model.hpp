#pragma once

// Two-qubit XY + Dzyaloshinskii-Moriya model with Lindblad environments.
//
// Basis ordering is {|00>, |01>, |10>, |11>} (qubit A is the left factor).
// Raising/lowering operators follow pauli::plus()/pauli::minus(), so
// sigma+ sigma- projects on |0>: |0> is the level that decays, and amplitude
// damping drives |00> -> {|01>, |10>} -> |11>.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spindyn/linalg.hpp"

namespace spindyn {

struct ModelParams {
  double j = 1.0;      ///< mean coupling (Jx + Jy) / 2; sets the time unit
  double delta = 0.0;  ///< anisotropy (Jx - Jy) / 2
  double d = 0.0;      ///< DM strength along z

  double nu() const;
  /// Throws Error(OutOfRange) unless j > 0, delta >= 0, d >= 0, all finite.
  void validate() const;
};

enum class EnvKind { Closed, Dissipative, Noisy, Dephasing };

std::string_view to_string(EnvKind kind);
/// Accepts closed|dissipative|noisy|dephasing. Throws Error(Config).
EnvKind parse_env_kind(std::string_view name);

struct EnvSpec {
  EnvKind kind = EnvKind::Closed;
  double gamma = 0.0;

  /// Coupling actually applied; Closed always means 0.
  double effective_gamma() const { return kind == EnvKind::Closed ? 0.0 : gamma; }
  void validate() const;
};

/// Tolerances a DensityMatrix is checked against on construction.
struct StateTolerance {
  double hermitian = kHermitianTol;
  double trace = 1e-9;
  double min_eigenvalue = -kNegativeTol;
};

/// Validated two-qubit state. Stores the Hermitized input.
class DensityMatrix {
 public:
  /// Throws Error(InvariantViolated) when any tolerance is exceeded or an
  /// entry is not finite.
  explicit DensityMatrix(const ComplexMat4& mat, StateTolerance tol = {});

  const ComplexMat4& mat() const noexcept { return mat_; }
  /// 1-based element access in the basis above: rho(1, 4) is <00|rho|11>.
  Complex operator()(int row, int col) const { return mat_(row - 1, col - 1); }

  double trace_error() const;
  double min_eigenvalue() const;
  double purity() const;

 private:
  ComplexMat4 mat_;
};

/// (1-p)/4 I + p |phi><phi| with |phi> = (|01> + |10>)/sqrt 2.
DensityMatrix werner_state(double p);

/// H = (J + iD) s1+ s2- + (J - iD) s1- s2+ + Delta (s1+ s2+ + s1- s2-).
ComplexMat4 build_hamiltonian(const ModelParams& params);

struct JumpOperator {
  double rate;
  ComplexMat4 op;
};

/// Lindblad channels for an environment; empty for Closed.
///   Dissipative: sigma-_j at rate gamma
///   Noisy:       sigma-_j and sigma+_j at rate gamma
///   Dephasing:   sigma+_j sigma-_j at rate gamma
std::vector<JumpOperator> jump_operators(const EnvSpec& env);

/// sum_k rate_k / 2 (2 L rho L^dag - L^dag L rho - rho L^dag L).
ComplexMat4 lindblad_dissipator(const ComplexMat4& rho,
                                std::span<const JumpOperator> channels);

/// Generator of the master equation with H and channels precomputed.
/// Works on any 4x4 matrix, including intermediate integrator stages that are
/// not themselves valid states.
class MasterEquation {
 public:
  MasterEquation(const ModelParams& params, const EnvSpec& env);

  using Superoperator = Eigen::Matrix<Complex, 16, 16>;

  ComplexMat4 derivative(const ComplexMat4& rho) const;
  /// The generator as a 16x16 matrix acting on column-major vec(rho), built
  /// column by column from derivative().
  Superoperator superoperator() const;
  const ComplexMat4& hamiltonian() const noexcept { return hamiltonian_; }

 private:
  ComplexMat4 hamiltonian_;
  std::vector<JumpOperator> channels_;
};

/// d rho / dt = -i[H, rho] + dissipator(rho).
ComplexMat4 lindblad_rhs(const DensityMatrix& rho, const ModelParams& params,
                         const EnvSpec& env);

}  // namespace spindyn
