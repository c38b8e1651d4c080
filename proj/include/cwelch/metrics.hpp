#pragma once

#include <optional>

#include "cwelch/bounds.hpp"
#include "cwelch/frames.hpp"

namespace cwelch {

struct EquiangularityReport {
  bool equiangular = false;
  double gamma = 0.0;          // measure-weighted mean off-diagonal |<.,.>|
  double max_deviation = 0.0;  // max over distinct node pairs of ||<.,.>| - gamma|
};

/// Whether the squared coherence attains the first-order sup Welch bound.
struct EqualityCertificate {
  double coherence_sq = 0.0;
  double sup_rhs = 0.0;
  bool equiangular = false;
  bool equality = false;
};

struct MetricsReport {
  std::optional<double> coherence;  // absent for single-node families
  std::optional<double> crms;       // absent unless normalized with offdiag mass
  double potential = 0.0;
  bool tight = false;
  std::optional<double> tight_ratio;  // upper/lower; absent when lower = 0
  EquiangularityReport angles;
  std::optional<EqualityCertificate> certificate;
};

/// sup over distinct node pairs of |<tau_a, tau_b>|. Needs >= 2 nodes.
double coherence(const SampledFrame& f);

/// Continuous root-mean-square off-diagonal correlation of a normalized
/// family; needs off-diagonal mass.
double crms(const SampledFrame& f);

/// Frame potential: full double quadrature sum of |<tau_a, tau_b>|^2.
double frame_potential(const SampledFrame& f);

EquiangularityReport equiangularity(const SampledFrame& f, double tol = 1e-8);

/// Needs a normalized family with off-diagonal mass.
EqualityCertificate equality_certificate(const SampledFrame& f);

MetricsReport compute_metrics(const SampledFrame& f);
MetricsReport compute_metrics(const SampledFrame& f, const FrameOperatorReport& op);

}  // namespace cwelch
