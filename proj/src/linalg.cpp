#include "spindyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "spindyn/error.hpp"

namespace spindyn {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "not_hermitian";
    case ErrorCode::SpectrumNotReal: return "spectrum_not_real";
    case ErrorCode::NotPositive: return "not_positive";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::NotXState: return "not_x_state";
    case ErrorCode::SingularParameterization: return "singular_parameterization";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::InvariantViolated: return "invariant_violated";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

namespace pauli {
ComplexMat2 identity() { return ComplexMat2::Identity(); }

ComplexMat2 x() {
  ComplexMat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMat2 y() {
  ComplexMat2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMat2 z() {
  ComplexMat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMat2 plus() {
  ComplexMat2 m = ComplexMat2::Zero();
  m(0, 1) = 1.0;
  return m;
}

ComplexMat2 minus() {
  ComplexMat2 m = ComplexMat2::Zero();
  m(1, 0) = 1.0;
  return m;
}
}  // namespace pauli

ComplexMat4 kron(const ComplexMat2& a, const ComplexMat2& b) {
  ComplexMat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double max_abs_entry(const ComplexMat4& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs_entry(const ComplexMat2& m) { return m.cwiseAbs().maxCoeff(); }

double hermiticity_error(const ComplexMat4& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMat2& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMat4& m) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

namespace {

template <typename Mat>
void require_hermitian(const Mat& m) {
  const double err = hermiticity_error(m);
  if (!(err <= kHermitianTol)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (max |m - m^dagger| = " << err << ")";
    throw Error(ErrorCode::NotHermitian, os.str());
  }
}

template <int N>
std::array<double, N> self_adjoint_spectrum(const Eigen::Matrix<Complex, N, N>& m) {
  require_hermitian(m);
  // Solver reads one triangle only, so feed it the symmetrized matrix.
  const Eigen::Matrix<Complex, N, N> h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> solver(
      h, Eigen::EigenvaluesOnly);
  std::array<double, N> out{};
  for (int i = 0; i < N; ++i) out[i] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

std::array<double, 4> hermitian_eigenvalues(const ComplexMat4& m) {
  return self_adjoint_spectrum<4>(m);
}

std::array<double, 2> hermitian_eigenvalues(const ComplexMat2& m) {
  return self_adjoint_spectrum<2>(m);
}

std::array<double, 4> general_real_spectrum(const ComplexMat4& m) {
  Eigen::ComplexEigenSolver<ComplexMat4> solver(m, false);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const Complex ev = solver.eigenvalues()(i);
    if (std::abs(ev.imag()) > kSpectrumImagTol) {
      std::ostringstream os;
      os << "eigenvalue " << ev << " has imaginary part above " << kSpectrumImagTol;
      throw Error(ErrorCode::SpectrumNotReal, os.str());
    }
    double re = ev.real();
    if (re < 0.0 && re >= -kClampTol) re = 0.0;
    out[i] = re;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ComplexMat2 partial_trace(const ComplexMat4& rho, Subsystem keep) {
  // rho[(a b),(c d)] with index = 2*a + b; A is the first tensor factor.
  ComplexMat2 out = ComplexMat2::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep == Subsystem::A ? rho(2 * i + k, 2 * j + k)
                                          : rho(2 * k + i, 2 * k + j);
      }
    }
  }
  return out;
}

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -kNegativeTol) {
      std::ostringstream os;
      os << "eigenvalue " << lambda << " below " << -kNegativeTol;
      throw Error(ErrorCode::NotPositive, os.str());
    }
    // Anything in [-kNegativeTol, 0) is numerical noise; 0 log 0 = 0.
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s < 0.0 ? 0.0 : s;
}

double von_neumann_entropy(const ComplexMat4& rho) {
  const auto ev = hermitian_eigenvalues(rho);
  return entropy_of_spectrum(ev);
}

double von_neumann_entropy(const ComplexMat2& rho) {
  const auto ev = hermitian_eigenvalues(rho);
  return entropy_of_spectrum(ev);
}

double binary_entropy(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "binary_entropy argument " << theta << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  theta = std::min(theta, 1.0);
  const std::array<double, 2> probs{(1.0 - theta) / 2.0, (1.0 + theta) / 2.0};
  return entropy_of_spectrum(probs);
}

ComplexMat4 hermitize(const ComplexMat4& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace spindyn
