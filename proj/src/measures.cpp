#include "spindyn/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spindyn/error.hpp"

namespace spindyn {

namespace {

constexpr double kDegenerateProb = 1e-12;

void require_x_state(const DensityMatrix& rho) {
  if (!is_x_state(rho.mat())) throw Error(ErrorCode::NotXState, "state is not of X form");
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

double branch_theta(double diff, double sum) {
  return std::abs(diff / sum);
}

}  // namespace

bool is_x_state(const ComplexMat4& rho, double tol) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool on_pattern = i == j || i + j == 3;
      if (!on_pattern && std::abs(rho(i, j)) > tol) return false;
    }
  }
  return true;
}

double concurrence_general(const DensityMatrix& rho) {
  const ComplexMat4 yy = kron(pauli::y(), pauli::y());
  const ComplexMat4 flipped = yy * rho.mat().conjugate() * yy;
  const auto lambda = general_real_spectrum(rho.mat() * flipped);
  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) roots[i] = std::sqrt(std::max(lambda[i], 0.0));
  return clamp_unit(roots[0] - roots[1] - roots[2] - roots[3]);
}

double concurrence_x(const DensityMatrix& rho) {
  require_x_state(rho);
  const double r11 = rho(1, 1).real(), r22 = rho(2, 2).real();
  const double r33 = rho(3, 3).real(), r44 = rho(4, 4).real();
  const double a = std::abs(rho(2, 3)) - std::sqrt(std::max(r11 * r44, 0.0));
  const double b = std::abs(rho(1, 4)) - std::sqrt(std::max(r22 * r33, 0.0));
  return clamp_unit(2.0 * std::max({0.0, a, b}));
}

double mutual_information(const DensityMatrix& rho) {
  return von_neumann_entropy(partial_trace(rho.mat(), Subsystem::A)) +
         von_neumann_entropy(partial_trace(rho.mat(), Subsystem::B)) -
         von_neumann_entropy(rho.mat());
}

ThetaParams theta_params(const DensityMatrix& rho) {
  require_x_state(rho);
  const double r11 = rho(1, 1).real(), r22 = rho(2, 2).real();
  const double r33 = rho(3, 3).real(), r44 = rho(4, 4).real();
  const Complex r14 = rho(1, 4), r23 = rho(2, 3);

  ThetaParams out;
  out.p0 = r11 + r33;
  out.p1 = r22 + r44;
  out.p0_degenerate = out.p0 < kDegenerateProb;
  out.p1_degenerate = out.p1 < kDegenerateProb;
  out.theta[0] = out.p0_degenerate ? 0.0 : branch_theta(r11 - r33, out.p0);
  out.theta[1] = out.p1_degenerate ? 0.0 : branch_theta(r22 - r44, out.p1);

  const double polarization = r11 + r22 - r33 - r44;
  const double base = std::norm(r14) + std::norm(r23) + polarization * polarization / 4.0;
  const Complex cross = r14 * std::conj(r23);
  const std::array<double, 4> shifts{2.0 * cross.real(), -2.0 * cross.real(),
                                     2.0 * cross.imag(), -2.0 * cross.imag()};
  for (int k = 0; k < 4; ++k)
    out.theta[2 + k] = 2.0 * std::sqrt(std::max(base + shifts[k], 0.0));

  for (double& th : out.theta) th = clamp_unit(th);
  return out;
}

DensityMatrix canonicalize_x_phases(const DensityMatrix& rho) {
  require_x_state(rho);
  // U = diag(1, e^{-ia}) x diag(1, e^{-ib}) multiplies rho14 by e^{i(a+b)}
  // and rho23 by e^{i(a-b)}; pick a, b to cancel both phases.
  const double phi14 = std::arg(rho(1, 4));
  const double phi23 = std::arg(rho(2, 3));
  const double a = -(phi14 + phi23) / 2.0;
  const double b = (phi23 - phi14) / 2.0;
  ComplexMat2 ua = ComplexMat2::Identity();
  ComplexMat2 ub = ComplexMat2::Identity();
  ua(1, 1) = std::exp(Complex(0.0, -a));
  ub(1, 1) = std::exp(Complex(0.0, -b));
  const ComplexMat4 u = kron(ua, ub);
  ComplexMat4 out = u * rho.mat() * u.adjoint();
  // Exact zeros outside the X pattern and exactly real corners.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3) out(i, j) = 0.0;
  out(0, 3) = out(3, 0) = std::abs(rho(1, 4));
  out(1, 2) = out(2, 1) = std::abs(rho(2, 3));
  return DensityMatrix(out);
}

DiscordResult discord_and_classical(const DensityMatrix& rho) {
  require_x_state(rho);
  const DensityMatrix canon = canonicalize_x_phases(rho);

  DiscordResult out;
  out.thetas = theta_params(canon);
  const auto& th = out.thetas.theta;
  // p h(theta) -> 0 as p -> 0, so degenerate outcomes contribute nothing.
  const double s1_first = out.thetas.p0_degenerate ? 0.0 : out.thetas.p0 * binary_entropy(th[0]);
  const double s1_second = out.thetas.p1_degenerate ? 0.0 : out.thetas.p1 * binary_entropy(th[1]);
  out.branches[0] = s1_first + s1_second;
  for (int k = 0; k < 4; ++k) out.branches[1 + k] = binary_entropy(th[2 + k]);

  int best = 0;
  for (int k = 1; k < 5; ++k)
    if (out.branches[k] < out.branches[best]) best = k;
  out.argmin_branch = best + 1;
  const double min_branch = out.branches[best];

  const double s_a = von_neumann_entropy(partial_trace(rho.mat(), Subsystem::A));
  const double s_b = von_neumann_entropy(partial_trace(rho.mat(), Subsystem::B));
  const double s_ab = von_neumann_entropy(rho.mat());
  out.discord = s_b - s_ab + min_branch;
  out.classical = s_a - min_branch;
  return out;
}

double measured_conditional_entropy(const DensityMatrix& rho, double theta, double phi) {
  const Eigen::Matrix<Complex, 2, 1> v(std::cos(theta / 2.0),
                                       std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0));
  const ComplexMat2 b0 = v * v.adjoint();
  const std::array<ComplexMat2, 2> projectors{b0, ComplexMat2::Identity() - b0};
  double total = 0.0;
  for (const ComplexMat2& b : projectors) {
    const ComplexMat4 lift = kron(pauli::identity(), b);
    const ComplexMat4 post = lift * rho.mat() * lift;
    const double prob = post.trace().real();
    if (prob <= kDegenerateProb) continue;
    total += prob * von_neumann_entropy(ComplexMat4(hermitize(post) / prob));
  }
  return total;
}

double discord_bruteforce(const DensityMatrix& rho, int grid) {
  if (grid < 64) throw Error(ErrorCode::OutOfRange, "brute-force grid must be >= 64");
  const double pi = std::numbers::pi;
  const double d_theta = pi / grid;
  const double d_phi = pi / grid;  // 2 pi over 2 grid azimuthal points

  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  double best_phi = 0.0;
  for (int i = 0; i <= grid; ++i) {
    for (int k = 0; k < 2 * grid; ++k) {
      const double th = i * d_theta;
      const double ph = k * d_phi;
      const double s = measured_conditional_entropy(rho, th, ph);
      if (s < best) {
        best = s;
        best_theta = th;
        best_phi = ph;
      }
    }
  }
  // Refinement: half spacing over the neighbouring cells.
  for (int i = -2; i <= 2; ++i) {
    for (int k = -2; k <= 2; ++k) {
      const double th = std::clamp(best_theta + i * d_theta / 2.0, 0.0, pi);
      const double ph = best_phi + k * d_phi / 2.0;
      best = std::min(best, measured_conditional_entropy(rho, th, ph));
    }
  }
  const double s_b = von_neumann_entropy(partial_trace(rho.mat(), Subsystem::B));
  return s_b - von_neumann_entropy(rho.mat()) + best;
}

CorrelationReport correlations(const DensityMatrix& rho) {
  const DiscordResult dr = discord_and_classical(rho);
  CorrelationReport out;
  out.concurrence = concurrence_x(rho);
  out.discord = dr.discord;
  out.classical = dr.classical;
  out.mutual_info = mutual_information(rho);
  out.argmin_branch = dr.argmin_branch;
  out.thetas = dr.thetas.theta;
  return out;
}

}  // namespace spindyn
