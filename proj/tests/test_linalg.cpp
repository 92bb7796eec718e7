#include <doctest.h>

#include <numeric>
#include <random>

#include "random_states.hpp"
#include "spindyn/error.hpp"
#include "spindyn/linalg.hpp"
#include "spindyn/model.hpp"

using namespace spindyn;

namespace {

ComplexMat4 bell_projector() {
  ComplexMat4 r = ComplexMat4::Zero();
  r(1, 1) = r(2, 2) = r(1, 2) = r(2, 1) = 0.5;
  return r;
}

ComplexMat4 basis_projector(int k) {
  ComplexMat4 r = ComplexMat4::Zero();
  r(k, k) = 1.0;
  return r;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected spindyn::Error");
  return ErrorCode::Config;
}

}  // namespace

TEST_CASE("hermitian_eigenvalues: identity, diagonal and Pauli spectra") {
  const auto id = hermitian_eigenvalues(ComplexMat4(ComplexMat4::Identity()));
  for (double v : id) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMat4 diag = ComplexMat4::Zero();
  diag.diagonal() << 0.11, 0.55, 0.17, 0.17;
  const auto ev = hermitian_eigenvalues(diag);
  CHECK(ev[0] == doctest::Approx(0.55));
  CHECK(ev[1] == doctest::Approx(0.17));
  CHECK(ev[2] == doctest::Approx(0.17));
  CHECK(ev[3] == doctest::Approx(0.11));

  const auto sy = hermitian_eigenvalues(pauli::y());
  CHECK(sy[0] == doctest::Approx(1.0));
  CHECK(sy[1] == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
  ComplexMat4 m = ComplexMat4::Identity();
  m(0, 1) = 1e-6;
  CHECK(code_of([&] { hermitian_eigenvalues(m); }) == ErrorCode::NotHermitian);
  m(0, 1) = 1e-10;  // inside tolerance
  CHECK_NOTHROW(hermitian_eigenvalues(m));
}

TEST_CASE("property: eigenvalue sum equals trace") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const ComplexMat4 h = testing::random_hermitian(rng);
    const auto ev = hermitian_eigenvalues(h);
    CHECK(std::accumulate(ev.begin(), ev.end(), 0.0) == doctest::Approx(h.trace().real()).epsilon(1e-9));
    CHECK(std::is_sorted(ev.rbegin(), ev.rend()));
  }
}

TEST_CASE("general_real_spectrum of rho * rho_tilde") {
  const ComplexMat4 yy = kron(pauli::y(), pauli::y());
  auto xi = [&](const ComplexMat4& rho) { return ComplexMat4(rho * (yy * rho.conjugate() * yy)); };

  const auto bell = general_real_spectrum(xi(bell_projector()));
  CHECK(bell[0] == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(bell[i]) < 1e-12);

  const auto mixed = general_real_spectrum(xi(ComplexMat4::Identity() / 4.0));
  for (double v : mixed) CHECK(v == doctest::Approx(1.0 / 16.0));

  const auto product = general_real_spectrum(xi(basis_projector(0)));
  for (double v : product) CHECK(v == 0.0);
}

TEST_CASE("general_real_spectrum flags complex spectra") {
  ComplexMat4 rot = ComplexMat4::Zero();
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;  // eigenvalues +-i
  CHECK(code_of([&] { general_real_spectrum(rot); }) == ErrorCode::SpectrumNotReal);
}

TEST_CASE("property: xi spectrum is nonnegative for random states") {
  std::mt19937_64 rng(5);
  const ComplexMat4 yy = kron(pauli::y(), pauli::y());
  for (int n = 0; n < 200; ++n) {
    const ComplexMat4 rho = testing::random_density(rng);
    const auto ev = general_real_spectrum(ComplexMat4(rho * yy * rho.conjugate() * yy));
    for (double v : ev) CHECK(v >= 0.0);
  }
}

TEST_CASE("partial_trace") {
  const ComplexMat2 a = partial_trace(bell_projector(), Subsystem::A);
  CHECK(max_abs_entry(ComplexMat2(a - ComplexMat2::Identity() / 2.0)) < 1e-15);

  // |01><01| keeps |0><0| on A and |1><1| on B.
  const ComplexMat2 keep_a = partial_trace(basis_projector(1), Subsystem::A);
  const ComplexMat2 keep_b = partial_trace(basis_projector(1), Subsystem::B);
  CHECK(keep_a(0, 0) == Complex(1.0));
  CHECK(keep_a(1, 1) == Complex(0.0));
  CHECK(keep_b(1, 1) == Complex(1.0));
  CHECK(keep_b(0, 0) == Complex(0.0));

  const ComplexMat2 w = partial_trace(werner_state(0.5).mat(), Subsystem::B);
  CHECK(max_abs_entry(ComplexMat2(w - ComplexMat2::Identity() / 2.0)) < 1e-15);
}

TEST_CASE("partial_trace distinguishes the two factors") {
  const ComplexMat2 sa = pauli::plus() * pauli::minus();          // |0><0|
  const ComplexMat2 sb = (pauli::identity() + pauli::x()) / 2.0;  // |+><+|
  const ComplexMat4 rho = kron(sa, sb);
  CHECK(max_abs_entry(ComplexMat2(partial_trace(rho, Subsystem::A) - sa)) < 1e-15);
  CHECK(max_abs_entry(ComplexMat2(partial_trace(rho, Subsystem::B) - sb)) < 1e-15);
}

TEST_CASE("property: reduced states keep unit trace") {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 100; ++n) {
    const ComplexMat4 rho = testing::random_density(rng);
    CHECK(std::abs(partial_trace(rho, Subsystem::A).trace() - 1.0) < 1e-9);
    CHECK(std::abs(partial_trace(rho, Subsystem::B).trace() - 1.0) < 1e-9);
  }
}

TEST_CASE("von_neumann_entropy") {
  CHECK(von_neumann_entropy(bell_projector()) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(ComplexMat4(ComplexMat4::Identity() / 4.0)) == doctest::Approx(2.0));
  CHECK(von_neumann_entropy(ComplexMat2(ComplexMat2::Identity() / 2.0)) == doctest::Approx(1.0));

  ComplexMat4 bad = ComplexMat4::Zero();
  bad.diagonal() << 0.6, 0.3, 0.2, -0.1;
  CHECK(code_of([&] { von_neumann_entropy(bad); }) == ErrorCode::NotPositive);

  // Round-off negatives are tolerated.
  ComplexMat4 noisy = basis_projector(3);
  noisy(0, 0) = -5e-11;
  CHECK(von_neumann_entropy(noisy) == doctest::Approx(0.0));
}

TEST_CASE("property: entropy is unitarily invariant") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 100; ++n) {
    const ComplexMat4 rho = testing::random_density(rng);
    const ComplexMat4 u = testing::random_unitary(rng);
    const ComplexMat4 rotated = u * rho * u.adjoint();
    CHECK(std::abs(von_neumann_entropy(hermitize(rotated)) - von_neumann_entropy(rho)) < 1e-9);
  }
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == doctest::Approx(1.0));
  CHECK(binary_entropy(1.0) == 0.0);
  // -(1/4) log2(1/4) - (3/4) log2(3/4)
  CHECK(binary_entropy(0.5) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(binary_entropy(1.0 + 5e-13) == 0.0);
  CHECK(code_of([] { binary_entropy(1.1); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { binary_entropy(-0.01); }) == ErrorCode::OutOfRange);

  double prev = binary_entropy(0.0);
  for (int i = 1; i <= 100; ++i) {
    const double cur = binary_entropy(i / 100.0);
    CHECK(cur < prev);
    prev = cur;
  }
}
