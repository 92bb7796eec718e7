#pragma once

// Entanglement and correlation quantifiers for two-qubit states.
// All entropies are in bits.

#include <array>

#include "spindyn/model.hpp"

namespace spindyn {

/// Entries outside the X pattern (diagonal, rho14, rho23) must stay below this.
inline constexpr double kXPatternTol = 1e-10;

bool is_x_state(const ComplexMat4& rho, double tol = kXPatternTol);

/// Wootters concurrence from the spectrum of rho (sy x sy) rho* (sy x sy),
/// clamped to [0, 1].
double concurrence_general(const DensityMatrix& rho);

/// 2 max(0, |rho23| - sqrt(rho11 rho44), |rho14| - sqrt(rho22 rho33)).
/// Throws Error(NotXState) for states outside the X pattern.
double concurrence_x(const DensityMatrix& rho);

/// S(rho_A) + S(rho_B) - S(rho).
double mutual_information(const DensityMatrix& rho);

struct ThetaParams {
  std::array<double, 6> theta{};  ///< theta0..theta5, clamped to [0, 1]
  double p0 = 0.0;                ///< rho11 + rho33
  double p1 = 0.0;                ///< rho22 + rho44
  bool p0_degenerate = false;     ///< p0 < 1e-12; theta0 reported as 0
  bool p1_degenerate = false;
};

/// Branch parameters of the five-way conditional-entropy minimisation for
/// X states, evaluated literally from the matrix elements. Note theta2..5
/// depend on the phase of rho14 conj(rho23); see canonicalize_x_phases.
ThetaParams theta_params(const DensityMatrix& rho);

/// Local z-rotations that make rho14 and rho23 real and nonnegative.
/// Leaves every entropy, the discord and the concurrence unchanged.
DensityMatrix canonicalize_x_phases(const DensityMatrix& rho);

struct DiscordResult {
  double discord = 0.0;
  double classical = 0.0;
  int argmin_branch = 1;              ///< 1..5, lowest index on ties
  std::array<double, 5> branches{};   ///< S1..S5
  ThetaParams thetas;                 ///< in the canonical phase frame
};

/// Quantum discord and classical correlation (measurement on B) for an X
/// state via the five-branch closed form, after canonicalize_x_phases:
///   QD = S(rho_B) - S(rho) + min S_i,  CC = S(rho_A) - min S_i.
/// Throws Error(NotXState).
DiscordResult discord_and_classical(const DensityMatrix& rho);

/// Reference discord for any state: projective measurements on B swept over
/// a (grid + 1) x (2 grid) lattice in polar/azimuthal angle, then one pass at
/// half spacing around the best lattice point. grid must be >= 64.
double discord_bruteforce(const DensityMatrix& rho, int grid = 64);

/// Conditional entropy sum_i p_i S(rho_i) for the projective measurement on B
/// along Bloch direction (theta, phi).
double measured_conditional_entropy(const DensityMatrix& rho, double theta, double phi);

struct CorrelationReport {
  double concurrence = 0.0;
  double discord = 0.0;
  double classical = 0.0;
  double mutual_info = 0.0;
  int argmin_branch = 1;
  std::array<double, 6> thetas{};
};

/// Full report for an X state. Throws Error(NotXState) otherwise.
CorrelationReport correlations(const DensityMatrix& rho);

}  // namespace spindyn
