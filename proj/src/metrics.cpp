#include "cwelch/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace cwelch {

namespace {
constexpr double kTightTol = 1e-6;

struct PairScan {
  double sup_abs = 0.0;
  double off_sum_abs = 0.0;     // sum over ordered distinct pairs of w w |g|
  double off_sum_sq = 0.0;      // same with |g|^2
  double diag_sum_abs = 0.0;    // diagonal terms w^2 |g_aa|
  double diag_sum_sq = 0.0;
};

PairScan scan_pairs(const SampledFrame& f) {
  PairScan s;
  const auto& w = f.measure().weights();
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double gaa = std::abs(inner_product(f.vector(a), f.vector(a)));
    s.diag_sum_abs += w[a] * w[a] * gaa;
    s.diag_sum_sq += w[a] * w[a] * gaa * gaa;
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      const double g = std::abs(inner_product(f.vector(a), f.vector(b)));
      s.sup_abs = std::max(s.sup_abs, g);
      s.off_sum_abs += 2.0 * w[a] * w[b] * g;
      s.off_sum_sq += 2.0 * w[a] * w[b] * g * g;
    }
  }
  return s;
}
}  // namespace

double coherence(const SampledFrame& f) {
  if (f.size() < 2) throw std::invalid_argument("coherence: needs at least two nodes");
  double best = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = a + 1; b < f.size(); ++b)
      best = std::max(best, std::abs(inner_product(f.vector(a), f.vector(b))));
  return best;
}

double crms(const SampledFrame& f) {
  if (!f.normalized()) throw std::invalid_argument("crms: requires a normalized family");
  const MassSummary mass = f.measure().mass();
  if (!(mass.offdiag > 0.0)) throw std::invalid_argument("crms: needs off-diagonal mass");
  const PairScan s = scan_pairs(f);
  const double off_integral =
      f.measure().atomic() ? s.off_sum_sq : s.off_sum_sq + s.diag_sum_sq;
  return std::sqrt(off_integral / mass.offdiag);
}

double frame_potential(const SampledFrame& f) { return evaluate_lhs(f, 1).full; }

EquiangularityReport equiangularity(const SampledFrame& f, double tol) {
  if (f.size() < 2) throw std::invalid_argument("equiangularity: needs at least two nodes");
  const MassSummary mass = f.measure().mass();
  const PairScan s = scan_pairs(f);
  EquiangularityReport out;
  if (f.measure().atomic()) {
    out.gamma = (mass.offdiag > 0.0) ? s.off_sum_abs / mass.offdiag : 0.0;
  } else {
    out.gamma = (s.off_sum_abs + s.diag_sum_abs) / (mass.total * mass.total);
  }
  double max_dev = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      const double g = std::abs(inner_product(f.vector(a), f.vector(b)));
      max_dev = std::max(max_dev, std::abs(g - out.gamma));
    }
  out.max_deviation = max_dev;
  out.equiangular = max_dev <= tol;
  return out;
}

EqualityCertificate equality_certificate(const SampledFrame& f) {
  if (!f.normalized())
    throw std::invalid_argument("equality_certificate: requires a normalized family");
  const MassSummary mass = f.measure().mass();
  if (!(mass.offdiag > 0.0) || f.size() < 2)
    throw std::invalid_argument("equality_certificate: needs off-diagonal mass");
  const double coh = coherence(f);
  const ContinuousWelch cw = welch_continuous(mass, f.dim(), 1);
  EqualityCertificate out;
  out.coherence_sq = coh * coh;
  out.sup_rhs = cw.sup_lb;
  out.equiangular = equiangularity(f).equiangular;
  out.equality =
      std::abs(out.coherence_sq - out.sup_rhs) <= kBoundTol * std::max(1.0, std::abs(out.sup_rhs));
  return out;
}

MetricsReport compute_metrics(const SampledFrame& f) {
  return compute_metrics(f, frame_operator(f));
}

MetricsReport compute_metrics(const SampledFrame& f, const FrameOperatorReport& op) {
  MetricsReport out;
  const MassSummary mass = f.measure().mass();
  if (f.size() >= 2) {
    out.coherence = coherence(f);
    out.angles = equiangularity(f);
  }
  if (f.normalized() && mass.offdiag > 0.0 && f.size() >= 2) {
    out.crms = crms(f);
    out.certificate = equality_certificate(f);
  }
  out.potential = frame_potential(f);
  if (op.lower > 0.0) {
    out.tight_ratio = op.upper / op.lower;
    out.tight = *out.tight_ratio <= 1.0 + kTightTol;
  } else {
    out.tight = false;
  }
  return out;
}

}  // namespace cwelch
