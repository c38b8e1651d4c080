#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cwelch/measure.hpp"
#include "cwelch/numerics.hpp"

namespace cwelch {

/// A sampled vector family {tau_alpha} over a quadrature measure: one complex
/// d-vector per node. Real-field frames keep imaginary parts exactly zero.
class SampledFrame {
public:
  static SampledFrame create(char field, std::size_t dim, QuadratureMeasure measure,
                             std::vector<std::vector<Complex>> vectors,
                             bool require_normalized = false);

  char field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const QuadratureMeasure& measure() const { return measure_; }
  const std::vector<Complex>& vector(std::size_t i) const { return vectors_[i]; }
  const std::vector<std::vector<Complex>>& vectors() const { return vectors_; }

  /// True when every node vector is unit-norm within 1e-10 (detected at
  /// construction; the theorems for normalized families key off this flag).
  bool normalized() const { return normalized_; }

private:
  SampledFrame(char field, std::size_t dim, QuadratureMeasure measure,
               std::vector<std::vector<Complex>> vectors, bool normalized)
      : field_(field), dim_(dim), measure_(std::move(measure)),
        vectors_(std::move(vectors)), normalized_(normalized) {}

  char field_ = 'C';
  std::size_t dim_ = 0;
  QuadratureMeasure measure_;
  std::vector<std::vector<Complex>> vectors_;
  bool normalized_ = false;
};

/// <u, v> = sum_k u_k conj(v_k); linear in the first argument.
Complex inner_product(const std::vector<Complex>& u, const std::vector<Complex>& v);

/// Frame operator S = sum_alpha w_alpha tau_alpha tau_alpha^* with its
/// spectral digest: extreme eigenvalues (the frame bounds) and the first two
/// trace powers computed from the spectrum.
struct FrameOperatorReport {
  HermitianMatrix op;
  EigenDecomposition eig;
  double lower = 0.0;
  double upper = 0.0;
  double trace = 0.0;
  double trace_sq = 0.0;
};

FrameOperatorReport frame_operator(const SampledFrame& f);

/// Direct quadrature routes for Tra(S) and Tra(S^2):
/// sum_a w_a |tau_a|^2 and the full double sum of w_a w_b |<tau_a,tau_b>|^2.
struct TraceIdentities {
  double trace_direct = 0.0;
  double trace_sq_direct = 0.0;
};

TraceIdentities trace_identities(const SampledFrame& f);

/// Canonical dual {S^{-1} tau_alpha} over the same measure.
SampledFrame canonical_dual(const SampledFrame& f);

/// Parseval-normalized family {S^{-1/2} tau_alpha}.
SampledFrame canonical_parseval(const SampledFrame& f);

struct DualPairCheck {
  bool dual = false;
  double residual = 0.0;  // |sum_a w_a omega_a tau_a^* - I|_F
};

/// Checks sum_alpha w_alpha omega_alpha tau_alpha^* = I within 1e-8 * sqrt(d).
DualPairCheck is_dual_pair(const SampledFrame& tau, const SampledFrame& omega);

/// Tra(T) evaluated through the frame: integral of
/// <T S^{-1/2} tau_a, S^{-1/2} tau_a> over the measure.
Complex trace_via_frame(const ComplexMatrix& t, const SampledFrame& f);

/// Builtin families, selected by a compact "name:params" spec:
///   cos_sin:N              (cos a, sin a) on the trapezoid grid of [0, 2pi]
///   onb:D                  standard basis of C^D, counting measure
///   simplex_etf:D          D+1 unit vectors in R^D, pairwise inner product -1/D
///   harmonic:N,D           character-matrix rows restricted to D coordinates
///   sic_d2                 4 unit vectors in C^2, pairwise |<.,.>|^2 = 1/3
///   random_unit:N,D,F,SEED seeded uniform unit vectors, counting measure
///   cp_monte_carlo:D,F,N,SEED  Monte Carlo sphere samples as the family
SampledFrame builtin_frame(const std::string& spec);

}  // namespace cwelch
