#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cwelch/errors.hpp"
#include "cwelch/numerics.hpp"
#include "support.hpp"

using cwelch::Complex;
using cwelch::ComplexMatrix;
using cwelch::EigenDecomposition;
using cwelch::HermitianMatrix;
using testsupport::close;
using testsupport::random_hermitian;

namespace {

HermitianMatrix diag2(double a, double b) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return HermitianMatrix(std::move(m));
}

double reconstruction_residual(const HermitianMatrix& a, const EigenDecomposition& eig) {
  const ComplexMatrix lambda_v = [&] {
    ComplexMatrix m = eig.eigenvectors;
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= eig.eigenvalues[j];
    return m;
  }();
  return (lambda_v * eig.eigenvectors.adjoint() - a.matrix()).frobenius_norm();
}

}  // namespace

TEST_CASE("hermitian validation") {
  ComplexMatrix bad(2, 2);
  bad(0, 1) = Complex(1.0, 0.5);
  bad(1, 0) = Complex(1.0, 0.5);  // conjugate symmetry violated
  CHECK_THROWS_AS(HermitianMatrix{std::move(bad)}, std::invalid_argument);

  ComplexMatrix imag_diag(1, 1);
  imag_diag(0, 0) = Complex(1.0, 1e-3);
  CHECK_THROWS_AS(HermitianMatrix{std::move(imag_diag)}, std::invalid_argument);
}

TEST_CASE("eig: identity has unit eigenvalues") {
  const HermitianMatrix a{ComplexMatrix::identity(3)};
  const EigenDecomposition eig = cwelch::eig_hermitian(a);
  for (double lambda : eig.eigenvalues) CHECK(lambda == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig: diagonal matrix is returned sorted with basis eigenvectors") {
  const EigenDecomposition eig = cwelch::eig_hermitian(diag2(5.0, 2.0));
  CHECK(eig.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(5.0));
  CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(eig.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig: 2x2 symmetric with known spectrum") {
  // [[2, 1], [1, 2]] has characteristic polynomial (2 - x)^2 - 1: roots 1, 3
  ComplexMatrix m(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  const EigenDecomposition eig = cwelch::eig_hermitian(HermitianMatrix(std::move(m)));
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("eig: random Hermitian invariants") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t d = 1 + seed % 16;
    const HermitianMatrix a = random_hermitian(d, seed, seed % 3 != 0);
    const EigenDecomposition eig = cwelch::eig_hermitian(a);

    double trace = 0.0;
    double fro_sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) trace += a(i, i).real();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) fro_sq += std::norm(a(i, j));

    double sum = 0.0;
    double sum_sq = 0.0;
    for (double lambda : eig.eigenvalues) {
      sum += lambda;
      sum_sq += lambda * lambda;
    }
    CHECK(close(sum, trace, 1e-10));
    CHECK(close(sum_sq, fro_sq, 1e-10));

    CHECK(reconstruction_residual(a, eig) <= 1e-10 * std::max(1.0, a.matrix().frobenius_norm()));

    // columns orthonormal
    const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK((gram - ComplexMatrix::identity(d)).frobenius_norm() <= 1e-10);

    for (std::size_t j = 0; j + 1 < d; ++j)
      CHECK(eig.eigenvalues[j] <= eig.eigenvalues[j + 1]);
  }
}

TEST_CASE("solve_hpd: identity and scalar cases") {
  ComplexMatrix b(2, 2);
  b(0, 0) = Complex(1.0, 2.0);
  b(0, 1) = Complex(-3.0, 0.5);
  b(1, 0) = Complex(0.0, -1.0);
  b(1, 1) = Complex(4.0, 0.0);

  const ComplexMatrix x_id = cwelch::solve_hpd(HermitianMatrix{ComplexMatrix::identity(2)}, b);
  CHECK((x_id - b).frobenius_norm() <= 1e-12);

  const ComplexMatrix x_half = cwelch::solve_hpd(diag2(2.0, 2.0), ComplexMatrix::identity(2));
  CHECK(x_half(0, 0).real() == doctest::Approx(0.5));
  CHECK(x_half(1, 1).real() == doctest::Approx(0.5));
}

TEST_CASE("solve_hpd: hand-eliminated 2x2 system") {
  // [[2, 1], [1, 2]] x = (3, 3)^T has solution (1, 1)^T
  ComplexMatrix a(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 2.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  ComplexMatrix b(2, 1);
  b(0, 0) = 3.0;
  b(1, 0) = 3.0;
  const ComplexMatrix x = cwelch::solve_hpd(HermitianMatrix(std::move(a)), b);
  CHECK(x(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x(1, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_hpd: rejects indefinite and singular operators") {
  CHECK_THROWS_AS(cwelch::solve_hpd(diag2(1.0, -1.0), ComplexMatrix::identity(2)),
                  cwelch::SingularOperatorError);
  CHECK_THROWS_AS(cwelch::solve_hpd(diag2(1.0, 0.0), ComplexMatrix::identity(2)),
                  cwelch::SingularOperatorError);
}

TEST_CASE("solve_hpd: multiply-back round trip over seeded instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 1 + seed % 8;
    // A = M M^H + I is Hermitian positive definite
    const HermitianMatrix m = random_hermitian(d, 1000 + seed);
    ComplexMatrix a = m.matrix() * m.matrix().adjoint();
    for (std::size_t i = 0; i < d; ++i) a(i, i) += 1.0;
    const HermitianMatrix hpd{std::move(a)};

    cwelch::SplitMix64 rng(2000 + seed);
    ComplexMatrix b(d, 2);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());

    const ComplexMatrix x = cwelch::solve_hpd(hpd, b);
    CHECK((hpd.matrix() * x - b).frobenius_norm() <= 1e-10 * std::max(1.0, b.frobenius_norm()));
  }
}

TEST_CASE("matrix_power_trace") {
  CHECK(cwelch::matrix_power_trace(HermitianMatrix{ComplexMatrix::identity(5)}, 3.7) ==
        doctest::Approx(5.0));

  ComplexMatrix scalar(1, 1);
  scalar(0, 0) = 4.0;
  CHECK(cwelch::matrix_power_trace(HermitianMatrix{std::move(scalar)}, 0.5) ==
        doctest::Approx(2.0));

  CHECK(cwelch::matrix_power_trace(diag2(1.0, 4.0), 2.0) == doctest::Approx(17.0));

  CHECK_THROWS_AS(cwelch::matrix_power_trace(diag2(1.0, -1.0), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(cwelch::matrix_power_trace(diag2(1.0, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("matrix_power_trace: integer powers match repeated products") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t d = 2 + seed % 6;
    const HermitianMatrix m = random_hermitian(d, 3000 + seed);
    const ComplexMatrix psd = m.matrix() * m.matrix().adjoint();
    const HermitianMatrix a{[&] {
      ComplexMatrix c = psd;
      for (std::size_t i = 0; i < d; ++i) c(i, i) = Complex(c(i, i).real(), 0.0);
      return c;
    }()};
    const ComplexMatrix cube = a.matrix() * a.matrix() * a.matrix();
    double trace_direct = 0.0;
    for (std::size_t i = 0; i < d; ++i) trace_direct += cube(i, i).real();
    CHECK(close(cwelch::matrix_power_trace(a, 3.0), trace_direct, 1e-9));
  }
}
