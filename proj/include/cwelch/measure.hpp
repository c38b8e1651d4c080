#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cwelch {

/// Masses of a discretized measure space: mu(Omega), the product-measure mass
/// of the diagonal, and the off-diagonal remainder total^2 - diagonal.
struct MassSummary {
  double total = 0.0;
  double diagonal = 0.0;
  double offdiag = 0.0;
};

/// Weighted node set discretizing a measure space (Omega, mu). `atomic`
/// distinguishes genuine atoms (counting-type measures, diagonal mass
/// sum of squared weights) from quadrature cells of an atomless measure
/// (diagonal mass exactly zero).
class QuadratureMeasure {
public:
  QuadratureMeasure(std::vector<double> weights, bool atomic,
                    std::vector<std::vector<double>> points = {});

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  bool atomic() const { return atomic_; }

  /// Parameter points per node (angles, sampled coordinates); may be empty
  /// for label-only measures such as the counting measure.
  const std::vector<std::vector<double>>& points() const { return points_; }

  MassSummary mass() const;

private:
  std::vector<double> weights_;
  std::vector<std::vector<double>> points_;
  bool atomic_ = true;
};

/// n atoms of weight 1 labeled 1..n.
QuadratureMeasure counting_measure(std::size_t n);

/// Composite trapezoid discretization of Lebesgue measure on [a, b]:
/// n equally spaced nodes, end weights h/2, interior weights h.
QuadratureMeasure uniform_interval(double a, double b, std::size_t n);

/// n i.i.d. uniform points on the unit sphere of field^d (Gaussian sampling
/// plus normalization), each of weight 1/n; total mass 1, atomless. Node
/// points carry the sampled coordinates (re/im interleaved for field 'C').
QuadratureMeasure monte_carlo_sphere(std::size_t d, char field, std::size_t n,
                                     std::uint64_t seed);

MassSummary mass_summary(const QuadratureMeasure& q);

}  // namespace cwelch
