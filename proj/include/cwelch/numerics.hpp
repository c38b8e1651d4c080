#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace cwelch {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t d) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Complex>& data() const { return data_; }

  bool all_finite() const;
  double frobenius_norm() const;
  ComplexMatrix adjoint() const;
  ComplexMatrix scaled(Complex factor) const;

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Square matrix validated to be self-adjoint: entry(j,k) = conj(entry(k,j))
/// within 1e-12 absolute and diagonal imaginary parts below 1e-12.
class HermitianMatrix {
public:
  explicit HermitianMatrix(ComplexMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, paired with eigenvalues
};

/// Cyclic complex Jacobi diagonalization. Sweeps until the off-diagonal
/// Frobenius mass drops below 1e-14 * |A|_F, capped at 100 sweeps
/// (NumericError beyond the cap).
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

/// Solve A X = B for Hermitian positive definite A via the eigendecomposition.
/// Throws SingularOperatorError unless min eigenvalue > 1e-12 * max eigenvalue.
ComplexMatrix solve_hpd(const HermitianMatrix& a, const ComplexMatrix& b);

/// Tra(A^r) = sum_k lambda_k^r for positive semidefinite A. Eigenvalues below
/// 1e-14 * lambda_max are clamped to zero; more negative ones are rejected.
double matrix_power_trace(const HermitianMatrix& a, double r);

/// V diag(f(lambda)) V^H from a precomputed eigendecomposition.
ComplexMatrix hermitian_function(const EigenDecomposition& eig,
                                 const std::function<double(double)>& f);

}  // namespace cwelch
