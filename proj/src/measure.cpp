#include "cwelch/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "cwelch/prng.hpp"

namespace cwelch {

QuadratureMeasure::QuadratureMeasure(std::vector<double> weights, bool atomic,
                                     std::vector<std::vector<double>> points)
    : weights_(std::move(weights)), points_(std::move(points)), atomic_(atomic) {
  if (weights_.empty()) throw std::invalid_argument("measure: needs at least one node");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("measure: weights must be positive and finite");
  }
  if (!points_.empty() && points_.size() != weights_.size())
    throw std::invalid_argument("measure: node point count differs from weight count");
}

namespace {
// compensated summation keeps the totals at one rounding of the exact sum
double kahan_total(const std::vector<double>& xs, bool squared) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    const double term = squared ? x * x : x;
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}
}  // namespace

MassSummary QuadratureMeasure::mass() const {
  MassSummary m;
  m.total = kahan_total(weights_, false);
  m.diagonal = atomic_ ? kahan_total(weights_, true) : 0.0;
  m.offdiag = m.total * m.total - m.diagonal;
  return m;
}

QuadratureMeasure counting_measure(std::size_t n) {
  if (n == 0) throw std::invalid_argument("counting_measure: n must be >= 1");
  std::vector<std::vector<double>> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = {static_cast<double>(i + 1)};
  return QuadratureMeasure(std::vector<double>(n, 1.0), /*atomic=*/true, std::move(points));
}

QuadratureMeasure uniform_interval(double a, double b, std::size_t n) {
  if (!(b > a)) throw std::invalid_argument("uniform_interval: requires b > a");
  if (n < 2) throw std::invalid_argument("uniform_interval: requires n >= 2");
  const double h = (b - a) / static_cast<double>(n - 1);
  std::vector<double> weights(n, h);
  weights.front() = 0.5 * h;
  weights.back() = 0.5 * h;
  std::vector<std::vector<double>> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = {a + h * static_cast<double>(i)};
  return QuadratureMeasure(std::move(weights), /*atomic=*/false, std::move(points));
}

QuadratureMeasure monte_carlo_sphere(std::size_t d, char field, std::size_t n,
                                     std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("monte_carlo_sphere: d must be >= 1");
  if (n == 0) throw std::invalid_argument("monte_carlo_sphere: n must be >= 1");
  if (field != 'R' && field != 'C')
    throw std::invalid_argument("monte_carlo_sphere: field must be 'R' or 'C'");
  const std::size_t coords = (field == 'C') ? 2 * d : d;
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> points(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(coords);
    double norm_sq = 0.0;
    do {
      norm_sq = 0.0;
      for (std::size_t k = 0; k < coords; ++k) {
        x[k] = rng.next_gaussian();
        norm_sq += x[k] * x[k];
      }
    } while (norm_sq < 1e-24);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& c : x) c *= inv;
    points[i] = std::move(x);
  }
  return QuadratureMeasure(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                           /*atomic=*/false, std::move(points));
}

MassSummary mass_summary(const QuadratureMeasure& q) { return q.mass(); }

}  // namespace cwelch
