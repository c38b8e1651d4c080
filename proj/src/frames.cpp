#include "cwelch/frames.hpp"

#include <cmath>
#include <stdexcept>

#include "cwelch/errors.hpp"

namespace cwelch {

namespace {
constexpr double kNormalizedTol = 1e-10;
constexpr double kSpanRel = 1e-12;
constexpr double kDualTol = 1e-8;

double norm_sq(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

// S^{-1} or S^{-1/2} applied to every frame vector.
SampledFrame apply_spectral(const SampledFrame& f, double exponent, const char* who) {
  const FrameOperatorReport rep = frame_operator(f);
  if (rep.upper <= 0.0 || rep.lower <= kSpanRel * rep.upper)
    throw SingularOperatorError(std::string(who) + ": family does not span, frame operator singular");
  const ComplexMatrix m =
      hermitian_function(rep.eig, [&](double x) { return std::pow(x, exponent); });
  const std::size_t d = f.dim();
  std::vector<std::vector<Complex>> out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    std::vector<Complex> y(d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
      Complex s(0.0, 0.0);
      for (std::size_t j = 0; j < d; ++j) s += m(i, j) * f.vector(a)[j];
      y[i] = s;
    }
    out[a] = std::move(y);
  }
  return SampledFrame::create(f.field(), d, f.measure(), std::move(out));
}
}  // namespace

SampledFrame SampledFrame::create(char field, std::size_t dim, QuadratureMeasure measure,
                                  std::vector<std::vector<Complex>> vectors,
                                  bool require_normalized) {
  if (field != 'R' && field != 'C')
    throw std::invalid_argument("frame: field must be 'R' or 'C'");
  if (dim == 0) throw std::invalid_argument("frame: dimension must be >= 1");
  if (vectors.size() != measure.size())
    throw std::invalid_argument("frame: one vector per measure node required");
  bool normalized = true;
  for (const auto& v : vectors) {
    if (v.size() != dim) throw std::invalid_argument("frame: vector length differs from dim");
    double s = 0.0;
    for (const Complex& z : v) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("frame: non-finite vector entry");
      if (field == 'R' && z.imag() != 0.0)
        throw std::invalid_argument("frame: real-field vector has imaginary part");
      s += std::norm(z);
    }
    if (std::abs(std::sqrt(s) - 1.0) > kNormalizedTol) normalized = false;
  }
  if (require_normalized && !normalized)
    throw std::invalid_argument("frame: normalized family requested but a vector is not unit-norm");
  return SampledFrame(field, dim, std::move(measure), std::move(vectors), normalized);
}

Complex inner_product(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner_product: length mismatch");
  Complex s(0.0, 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * std::conj(v[k]);
  return s;
}

FrameOperatorReport frame_operator(const SampledFrame& f) {
  const std::size_t d = f.dim();
  ComplexMatrix s(d, d);
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double w = f.measure().weight(a);
    const std::vector<Complex>& tau = f.vector(a);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) s(i, j) += w * tau[i] * std::conj(tau[j]);
  }
  for (std::size_t i = 0; i < d; ++i) {
    s(i, i) = Complex(s(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) s(j, i) = std::conj(s(i, j));
  }
  HermitianMatrix op(std::move(s));
  EigenDecomposition eig = eig_hermitian(op);
  FrameOperatorReport rep{std::move(op), std::move(eig), 0.0, 0.0, 0.0, 0.0};
  rep.lower = rep.eig.eigenvalues.front();
  rep.upper = rep.eig.eigenvalues.back();
  for (double lambda : rep.eig.eigenvalues) {
    rep.trace += lambda;
    rep.trace_sq += lambda * lambda;
  }
  return rep;
}

TraceIdentities trace_identities(const SampledFrame& f) {
  TraceIdentities out;
  const std::size_t n = f.size();
  std::vector<double> ns(n);
  for (std::size_t a = 0; a < n; ++a) {
    ns[a] = norm_sq(f.vector(a));
    out.trace_direct += f.measure().weight(a) * ns[a];
  }
  double diag = 0.0;
  double off = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double wa = f.measure().weight(a);
    diag += wa * wa * ns[a] * ns[a];
    for (std::size_t b = a + 1; b < n; ++b)
      off += wa * f.measure().weight(b) * std::norm(inner_product(f.vector(a), f.vector(b)));
  }
  out.trace_sq_direct = diag + 2.0 * off;
  return out;
}

SampledFrame canonical_dual(const SampledFrame& f) { return apply_spectral(f, -1.0, "canonical_dual"); }

SampledFrame canonical_parseval(const SampledFrame& f) {
  return apply_spectral(f, -0.5, "canonical_parseval");
}

DualPairCheck is_dual_pair(const SampledFrame& tau, const SampledFrame& omega) {
  if (tau.field() != omega.field() || tau.dim() != omega.dim() || tau.size() != omega.size())
    throw std::invalid_argument("is_dual_pair: mismatched field, dimension, or node count");
  const std::size_t d = tau.dim();
  ComplexMatrix m(d, d);
  for (std::size_t a = 0; a < tau.size(); ++a) {
    const double w = tau.measure().weight(a);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        m(i, j) += w * omega.vector(a)[i] * std::conj(tau.vector(a)[j]);
  }
  for (std::size_t i = 0; i < d; ++i) m(i, i) -= Complex(1.0, 0.0);
  DualPairCheck check;
  check.residual = m.frobenius_norm();
  check.dual = check.residual <= kDualTol * std::sqrt(static_cast<double>(d));
  return check;
}

Complex trace_via_frame(const ComplexMatrix& t, const SampledFrame& f) {
  if (t.rows() != f.dim() || t.cols() != f.dim())
    throw std::invalid_argument("trace_via_frame: operator shape differs from frame dimension");
  const SampledFrame parseval = canonical_parseval(f);
  Complex sum(0.0, 0.0);
  const std::size_t d = f.dim();
  for (std::size_t a = 0; a < parseval.size(); ++a) {
    const std::vector<Complex>& phi = parseval.vector(a);
    std::vector<Complex> tphi(d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) tphi[i] += t(i, j) * phi[j];
    sum += parseval.measure().weight(a) * inner_product(tphi, phi);
  }
  return sum;
}

}  // namespace cwelch
