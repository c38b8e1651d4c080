#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwelch/frames.hpp"
#include "cwelch/prng.hpp"

namespace cwelch {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::size_t parse_count(const std::string& s, const char* what) {
  try {
    std::size_t idx = 0;
    const unsigned long long v = std::stoull(s, &idx);
    if (idx != s.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("builtin: bad ") + what + " '" + s + "'");
  }
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t idx = 0;
    const unsigned long long v = std::stoull(s, &idx);
    if (idx != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("builtin: bad seed '" + s + "'");
  }
}

char parse_field(const std::string& s) {
  if (s == "C" || s == "c") return 'C';
  if (s == "R" || s == "r") return 'R';
  throw std::invalid_argument("builtin: field must be R or C, got '" + s + "'");
}

SampledFrame make_cos_sin(std::size_t nodes) {
  QuadratureMeasure q = uniform_interval(0.0, 2.0 * kPi, nodes);
  std::vector<std::vector<Complex>> vecs(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double alpha = q.points()[i][0];
    vecs[i] = {Complex(std::cos(alpha), 0.0), Complex(std::sin(alpha), 0.0)};
  }
  return SampledFrame::create('R', 2, std::move(q), std::move(vecs), true);
}

SampledFrame make_onb(std::size_t d) {
  if (d == 0) throw std::invalid_argument("builtin onb: dimension must be >= 1");
  std::vector<std::vector<Complex>> vecs(d, std::vector<Complex>(d, Complex(0.0, 0.0)));
  for (std::size_t i = 0; i < d; ++i) vecs[i][i] = Complex(1.0, 0.0);
  return SampledFrame::create('C', d, counting_measure(d), std::move(vecs), true);
}

// d+1 unit vectors in R^d with pairwise inner product -1/d: simplex vertices
// centered and expressed in the Helmert basis of the sum-zero hyperplane.
SampledFrame make_simplex_etf(std::size_t d) {
  if (d == 0) throw std::invalid_argument("builtin simplex_etf: dimension must be >= 1");
  const std::size_t n = d + 1;
  const double center = 1.0 / static_cast<double>(n);
  const double edge = std::sqrt(static_cast<double>(d) / static_cast<double>(n));
  std::vector<std::vector<Complex>> vecs(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> u(n, -center);
    u[j] += 1.0;
    for (double& c : u) c /= edge;
    std::vector<Complex> x(d, Complex(0.0, 0.0));
    for (std::size_t k = 1; k <= d; ++k) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(k) * static_cast<double>(k + 1));
      double dot = 0.0;
      for (std::size_t i = 0; i < k; ++i) dot += u[i];
      dot -= static_cast<double>(k) * u[k];
      x[k - 1] = Complex(dot * scale, 0.0);
    }
    vecs[j] = std::move(x);
  }
  return SampledFrame::create('R', d, counting_measure(n), std::move(vecs), true);
}

SampledFrame make_harmonic(std::size_t n, std::size_t d) {
  if (d == 0 || n < d)
    throw std::invalid_argument("builtin harmonic: requires n >= d >= 1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<std::vector<Complex>> vecs(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> v(d);
    for (std::size_t k = 0; k < d; ++k) {
      const double theta =
          2.0 * kPi * static_cast<double>(j) * static_cast<double>(k) / static_cast<double>(n);
      v[k] = scale * Complex(std::cos(theta), std::sin(theta));
    }
    vecs[j] = std::move(v);
  }
  return SampledFrame::create('C', d, counting_measure(n), std::move(vecs), true);
}

// The tetrahedron configuration in C^2: 4 unit vectors, all pairwise
// |<.,.>|^2 = 1/3.
SampledFrame make_sic_d2() {
  const double t = 1.0 / std::sqrt(3.0);
  const double a = std::sqrt((1.0 + t) / 2.0);
  const double b = std::sqrt((1.0 - t) / 2.0);
  const double q = kPi / 4.0;
  auto polar = [](double r, double phi) { return Complex(r * std::cos(phi), r * std::sin(phi)); };
  std::vector<std::vector<Complex>> vecs = {
      {Complex(a, 0.0), polar(b, q)},
      {Complex(b, 0.0), polar(a, -q)},
      {Complex(b, 0.0), polar(a, 3.0 * q)},
      {Complex(a, 0.0), polar(b, -3.0 * q)},
  };
  return SampledFrame::create('C', 2, counting_measure(4), std::move(vecs), true);
}

SampledFrame make_random_unit(std::size_t n, std::size_t d, char field, std::uint64_t seed) {
  if (n == 0 || d == 0) throw std::invalid_argument("builtin random_unit: requires n, d >= 1");
  SplitMix64 rng(seed);
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
  return SampledFrame::create(field, d, counting_measure(n), std::move(vecs), true);
}

SampledFrame make_cp_monte_carlo(std::size_t d, char field, std::size_t n, std::uint64_t seed) {
  QuadratureMeasure q = monte_carlo_sphere(d, field, n, seed);
  std::vector<std::vector<Complex>> vecs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<double>& p = q.points()[j];
    std::vector<Complex> v(d);
    for (std::size_t k = 0; k < d; ++k)
      v[k] = (field == 'C') ? Complex(p[2 * k], p[2 * k + 1]) : Complex(p[k], 0.0);
    vecs[j] = std::move(v);
  }
  return SampledFrame::create(field, d, std::move(q), std::move(vecs), true);
}

}  // namespace

SampledFrame builtin_frame(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<std::string> args;
  if (colon != std::string::npos) args = split(spec.substr(colon + 1), ',');

  auto want = [&](std::size_t count) {
    if (args.size() != count)
      throw std::invalid_argument("builtin '" + name + "': expected " + std::to_string(count) +
                                  " parameter(s)");
  };

  if (name == "cos_sin") {
    want(1);
    return make_cos_sin(parse_count(args[0], "node count"));
  }
  if (name == "onb") {
    want(1);
    return make_onb(parse_count(args[0], "dimension"));
  }
  if (name == "simplex_etf") {
    want(1);
    return make_simplex_etf(parse_count(args[0], "dimension"));
  }
  if (name == "harmonic") {
    want(2);
    return make_harmonic(parse_count(args[0], "n"), parse_count(args[1], "dimension"));
  }
  if (name == "sic_d2") {
    if (!args.empty()) throw std::invalid_argument("builtin sic_d2: takes no parameters");
    return make_sic_d2();
  }
  if (name == "random_unit") {
    want(4);
    return make_random_unit(parse_count(args[0], "n"), parse_count(args[1], "dimension"),
                            parse_field(args[2]), parse_seed(args[3]));
  }
  if (name == "cp_monte_carlo") {
    want(4);
    return make_cp_monte_carlo(parse_count(args[0], "dimension"), parse_field(args[1]),
                               parse_count(args[2], "n"), parse_seed(args[3]));
  }
  throw std::invalid_argument("unknown builtin frame '" + name + "'");
}

}  // namespace cwelch
