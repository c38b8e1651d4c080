#include "cwelch/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cwelch/errors.hpp"

namespace cwelch {

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const Complex& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) *= factor;
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(i, k);
      if (a == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix sum: shape mismatch");
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix difference: shape mismatch");
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

namespace {
constexpr double kHermitianTol = 1e-12;
constexpr double kOffdiagTarget = 1e-14;
constexpr int kMaxSweeps = 100;
constexpr double kPsdClampRel = 1e-14;
constexpr double kHpdRel = 1e-12;

double offdiag_frobenius(const ComplexMatrix& w) {
  const std::size_t d = w.rows();
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) sum += std::norm(w(i, j));
  return std::sqrt(sum);
}
}  // namespace

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("hermitian: matrix not square");
  if (m_.rows() == 0) throw std::invalid_argument("hermitian: empty matrix");
  if (!m_.all_finite()) throw std::invalid_argument("hermitian: non-finite entry");
  const std::size_t d = m_.rows();
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(m_(i, i).imag()) > kHermitianTol)
      throw std::invalid_argument("hermitian: diagonal entry has imaginary part");
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::abs(m_(i, j) - std::conj(m_(j, i))) > kHermitianTol)
        throw std::invalid_argument("hermitian: conjugate symmetry violated");
    }
  }
}

EigenDecomposition eig_hermitian(const HermitianMatrix& a) {
  const std::size_t d = a.dim();
  ComplexMatrix w = a.matrix();
  ComplexMatrix v = ComplexMatrix::identity(d);
  const double scale = w.frobenius_norm();

  if (scale > 0.0 && d > 1) {
    const double target = kOffdiagTarget * scale;
    const double skip = 1e-18 * scale;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (offdiag_frobenius(w) <= target) {
        converged = true;
        break;
      }
      for (std::size_t p = 0; p + 1 < d; ++p) {
        for (std::size_t q = p + 1; q < d; ++q) {
          const Complex apq = w(p, q);
          const double beta = std::abs(apq);
          if (beta <= skip) {
            w(p, q) = Complex(0.0, 0.0);
            w(q, p) = Complex(0.0, 0.0);
            continue;
          }
          const Complex phase = apq / beta;           // e^{i arg(apq)}
          const Complex cphase = std::conj(phase);
          const double alpha = w(p, p).real();
          const double delta = w(q, q).real();
          const double tau = (delta - alpha) / (2.0 * beta);
          const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          // unitary columns: U(:,p) = (c, -s*conj(phase)), U(:,q) = (s, c*conj(phase))
          for (std::size_t i = 0; i < d; ++i) {
            if (i == p || i == q) continue;
            const Complex wip = w(i, p);
            const Complex wiq = w(i, q);
            w(i, p) = c * wip - s * cphase * wiq;
            w(i, q) = s * wip + c * cphase * wiq;
            w(p, i) = std::conj(w(i, p));
            w(q, i) = std::conj(w(i, q));
          }
          w(p, p) = Complex(alpha - t * beta, 0.0);
          w(q, q) = Complex(delta + t * beta, 0.0);
          w(p, q) = Complex(0.0, 0.0);
          w(q, p) = Complex(0.0, 0.0);

          for (std::size_t i = 0; i < d; ++i) {
            const Complex vip = v(i, p);
            const Complex viq = v(i, q);
            v(i, p) = c * vip - s * cphase * viq;
            v(i, q) = s * vip + c * cphase * viq;
          }
        }
      }
    }
    if (!converged && offdiag_frobenius(w) > target)
      throw NumericError("eig_hermitian: no convergence within 100 sweeps");
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(d);
  for (std::size_t i = 0; i < d; ++i) diag[i] = w(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  EigenDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors = ComplexMatrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    out.eigenvalues[j] = diag[order[j]];
    for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

ComplexMatrix hermitian_function(const EigenDecomposition& eig,
                                 const std::function<double(double)>& f) {
  const std::size_t d = eig.eigenvalues.size();
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      Complex sum(0.0, 0.0);
      for (std::size_t k = 0; k < d; ++k)
        sum += f(eig.eigenvalues[k]) * eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
      out(i, j) = sum;
      out(j, i) = std::conj(sum);
    }
    out(i, i) = Complex(out(i, i).real(), 0.0);
  }
  return out;
}

ComplexMatrix solve_hpd(const HermitianMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.rows()) throw std::invalid_argument("solve_hpd: shape mismatch");
  const EigenDecomposition eig = eig_hermitian(a);
  const double lo = eig.eigenvalues.front();
  const double hi = eig.eigenvalues.back();
  if (hi <= 0.0 || lo <= kHpdRel * hi)
    throw SingularOperatorError("solve_hpd: operator not positive definite");
  const ComplexMatrix inv = hermitian_function(eig, [](double x) { return 1.0 / x; });
  return inv * b;
}

double matrix_power_trace(const HermitianMatrix& a, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("matrix_power_trace: exponent must be positive");
  const EigenDecomposition eig = eig_hermitian(a);
  const double hi = std::max(eig.eigenvalues.back(), 0.0);
  const double clamp = kPsdClampRel * hi;
  double sum = 0.0;
  for (double lambda : eig.eigenvalues) {
    if (lambda < -clamp)
      throw std::invalid_argument("matrix_power_trace: matrix not positive semidefinite");
    const double x = std::max(lambda, 0.0);
    sum += (x > 0.0) ? std::pow(x, r) : 0.0;
  }
  return sum;
}

}  // namespace cwelch
