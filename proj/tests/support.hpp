#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cwelch/frames.hpp"
#include "cwelch/numerics.hpp"
#include "cwelch/prng.hpp"

namespace testsupport {

using cwelch::Complex;

inline bool close(double a, double b, double rel, double abs_floor = 0.0) {
  const double scale = std::max({std::abs(a), std::abs(b), abs_floor});
  return std::abs(a - b) <= rel * std::max(scale, 1e-300);
}

inline cwelch::HermitianMatrix random_hermitian(std::size_t d, std::uint64_t seed,
                                                bool complex_entries = true) {
  cwelch::SplitMix64 rng(seed);
  cwelch::ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = Complex(2.0 * rng.next_gaussian(), 0.0);
    for (std::size_t j = i + 1; j < d; ++j) {
      const double re = rng.next_gaussian();
      const double im = complex_entries ? rng.next_gaussian() : 0.0;
      m(i, j) = Complex(re, im);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return cwelch::HermitianMatrix(std::move(m));
}

enum class MeasureKind { counting, weighted_atoms, atomless_cells };

/// Random normalized Bessel family: unit vectors over one of three measure
/// discretizations, cycling by index.
inline cwelch::SampledFrame random_frame(std::size_t n, std::size_t d, char field,
                                         std::uint64_t seed, MeasureKind kind) {
  cwelch::SplitMix64 rng(seed);
  std::vector<std::vector<Complex>> vecs(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> v(d);
    double s = 0.0;
    do {
      s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double re = rng.next_gaussian();
        const double im = (field == 'C') ? rng.next_gaussian() : 0.0;
        v[k] = Complex(re, im);
        s += std::norm(v[k]);
      }
    } while (s < 1e-24);
    const double inv = 1.0 / std::sqrt(s);
    for (Complex& z : v) z *= inv;
    vecs[j] = std::move(v);
  }

  if (kind == MeasureKind::counting) {
    return cwelch::SampledFrame::create(field, d, cwelch::counting_measure(n), std::move(vecs),
                                        true);
  }
  std::vector<double> weights(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = rng.next_double();
    weights[j] = (kind == MeasureKind::weighted_atoms) ? 0.5 + 1.5 * u
                                                       : (0.5 + u) / static_cast<double>(n);
  }
  cwelch::QuadratureMeasure q(std::move(weights), kind == MeasureKind::weighted_atoms);
  return cwelch::SampledFrame::create(field, d, std::move(q), std::move(vecs), true);
}

struct SweepSpec {
  std::size_t n, d;
  char field;
  MeasureKind kind;
  std::uint64_t seed;
};

/// Deterministic parameter sweep used by the trace-identity and bound-validity
/// suites: both fields, n <= 32, d <= 8, atomic measures.
inline std::vector<SweepSpec> sweep_specs(std::size_t count, std::uint64_t master_seed) {
  std::vector<SweepSpec> specs;
  specs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    cwelch::SplitMix64 rng(cwelch::SplitMix64::stream_seed(master_seed, i));
    SweepSpec s{};
    s.d = 1 + static_cast<std::size_t>(rng.next_u64() % 8);
    s.n = s.d + static_cast<std::size_t>(rng.next_u64() % (33 - s.d));
    s.field = (rng.next_u64() & 1u) ? 'C' : 'R';
    s.kind = (i % 2 == 0) ? MeasureKind::counting : MeasureKind::weighted_atoms;
    s.seed = rng.next_u64();
    specs.push_back(s);
  }
  return specs;
}

}  // namespace testsupport
