#pragma once

// Dense complex kernel for two-qubit states. Everything here is sized for
// 4x4 (two qubits) and 2x2 (one qubit); no general-N support.

#include <array>
#include <complex>
#include <span>

#include <Eigen/Dense>

namespace spindyn {

using Complex = std::complex<double>;
using ComplexMat4 = Eigen::Matrix<Complex, 4, 4>;
using ComplexMat2 = Eigen::Matrix<Complex, 2, 2>;

inline constexpr Complex kI{0.0, 1.0};

/// Hermiticity tolerance on max |m - m^dagger| entry.
inline constexpr double kHermitianTol = 1e-9;
/// Eigenvalues in [-kClampTol, 0) are round-off and are set to 0.
inline constexpr double kClampTol = 1e-10;
/// Eigenvalues below -kNegativeTol are a positivity violation.
inline constexpr double kNegativeTol = 1e-8;
/// Largest imaginary part tolerated in the spectrum of rho * rho_tilde.
inline constexpr double kSpectrumImagTol = 1e-8;

enum class Subsystem { A, B };

namespace pauli {
ComplexMat2 identity();
ComplexMat2 x();
ComplexMat2 y();
ComplexMat2 z();
/// |0><1|. Paired with minus() so that plus()*minus() = |0><0|.
ComplexMat2 plus();
/// |1><0|.
ComplexMat2 minus();
}  // namespace pauli

ComplexMat4 kron(const ComplexMat2& a, const ComplexMat2& b);

double max_abs_entry(const ComplexMat4& m);
double max_abs_entry(const ComplexMat2& m);

/// max |m - m^dagger| over entries.
double hermiticity_error(const ComplexMat4& m);
double hermiticity_error(const ComplexMat2& m);

bool all_finite(const ComplexMat4& m);

/// Real eigenvalues of a Hermitian matrix, descending.
/// Throws Error(NotHermitian) if hermiticity_error(m) > kHermitianTol.
std::array<double, 4> hermitian_eigenvalues(const ComplexMat4& m);
std::array<double, 2> hermitian_eigenvalues(const ComplexMat2& m);

/// Spectrum of a product of two PSD Hermitian matrices (rho * rho_tilde),
/// which is real and nonnegative even though the product is not Hermitian.
/// Imaginary parts up to kSpectrumImagTol are dropped, values in
/// [-kClampTol, 0) clamp to 0, result is descending.
/// Throws Error(SpectrumNotReal) if an imaginary part exceeds the tolerance.
std::array<double, 4> general_real_spectrum(const ComplexMat4& m);

ComplexMat2 partial_trace(const ComplexMat4& rho, Subsystem keep);

/// Shannon entropy (base 2) of an eigenvalue list with 0 log 0 = 0.
/// Negative values down to -kNegativeTol clamp to 0; below that throws
/// Error(NotPositive).
double entropy_of_spectrum(std::span<const double> eigenvalues);

/// -Tr(rho log2 rho).
double von_neumann_entropy(const ComplexMat4& rho);
double von_neumann_entropy(const ComplexMat2& rho);

/// Entropy of the two-point distribution {(1-theta)/2, (1+theta)/2}.
/// theta is accepted in [0, 1 + 1e-12]; overshoot clamps to 1.
double binary_entropy(double theta);

/// (m + m^dagger) / 2.
ComplexMat4 hermitize(const ComplexMat4& m);

}  // namespace spindyn
