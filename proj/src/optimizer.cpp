#include "cwelch/optimizer.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "cwelch/bounds.hpp"
#include "cwelch/metrics.hpp"
#include "cwelch/prng.hpp"

namespace cwelch {

namespace {

double ipow(double x, std::size_t m) {
  double r = 1.0;
  while (m > 0) {
    if (m & 1u) r *= x;
    x *= x;
    m >>= 1u;
  }
  return r;
}

struct Gram {
  std::size_t n = 0;
  std::vector<Complex> entry;  // row-major upper triangle used, j < k
  double max_abs = 0.0;
  const Complex& at(std::size_t j, std::size_t k) const { return entry[j * n + k]; }
};

Gram compute_gram(const VectorConfig& x) {
  Gram g;
  g.n = x.size();
  g.entry.assign(g.n * g.n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = j + 1; k < g.n; ++k) {
      Complex s(0.0, 0.0);
      for (std::size_t i = 0; i < x[j].size(); ++i) s += x[j][i] * std::conj(x[k][i]);
      g.entry[j * g.n + k] = s;
      g.max_abs = std::max(g.max_abs, std::abs(s));
    }
  return g;
}

VectorConfig zero_like(const VectorConfig& x) {
  VectorConfig g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    g[j].assign(x[j].size(), Complex(0.0, 0.0));
  return g;
}

// grad_j += 2 * coeff * g_jk * t_k, grad_k += 2 * coeff * conj(g_jk) * t_j
void add_pair_gradient(VectorConfig& grad, const VectorConfig& x, std::size_t j, std::size_t k,
                       Complex gjk, double coeff) {
  for (std::size_t i = 0; i < x[j].size(); ++i) {
    grad[j][i] += 2.0 * coeff * gjk * x[k][i];
    grad[k][i] += 2.0 * coeff * std::conj(gjk) * x[j][i];
  }
}

bool renormalize(VectorConfig& x) {
  for (auto& v : x) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    if (!(s > 1e-24) || !std::isfinite(s)) return false;
    const double inv = 1.0 / std::sqrt(s);
    for (Complex& z : v) z *= inv;
  }
  return true;
}

VectorConfig random_config(std::size_t n, std::size_t d, char field, std::uint64_t seed) {
  SplitMix64 rng(seed);
  VectorConfig x(n, std::vector<Complex>(d));
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    do {
      s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double re = rng.next_gaussian();
        const double im = (field == 'C') ? rng.next_gaussian() : 0.0;
        x[j][i] = Complex(re, im);
        s += std::norm(x[j][i]);
      }
    } while (s < 1e-24);
    const double inv = 1.0 / std::sqrt(s);
    for (Complex& z : x[j]) z *= inv;
  }
  return x;
}

struct RestartOutcome {
  VectorConfig x;
  double achieved = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
};

double direct_coherence(const VectorConfig& x) {
  return compute_gram(x).max_abs;
}

// Backtracking gradient descent with renormalization; returns iterations used.
template <typename ObjFn, typename GradFn>
std::size_t descend(VectorConfig& x, double& f, const ObjFn& obj, const GradFn& grad,
                    double step0, double tol, std::size_t budget) {
  double step = step0;
  double window_best = f;
  std::size_t window = 0;
  std::size_t iters = 0;
  while (iters < budget) {
    ++iters;
    const VectorConfig g = grad(x);
    double gnorm_sq = 0.0;
    for (const auto& row : g)
      for (const Complex& z : row) gnorm_sq += std::norm(z);
    if (gnorm_sq <= 1e-30) break;

    bool accepted = false;
    while (step >= 1e-18) {
      VectorConfig candidate = x;
      for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t i = 0; i < x[j].size(); ++i) candidate[j][i] -= step * g[j][i];
      if (!renormalize(candidate)) {
        step *= 0.5;
        continue;
      }
      const double fc = obj(candidate);
      if (fc < f) {
        x = std::move(candidate);
        f = fc;
        step *= 1.25;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    if (++window >= 50) {
      if (window_best - f <= tol * std::max(1.0, std::abs(f))) break;
      window_best = f;
      window = 0;
    }
  }
  return iters;
}

RestartOutcome run_restart(const OptimizerConfig& cfg, std::uint64_t restart_seed) {
  RestartOutcome out;
  out.x = random_config(cfg.n, cfg.d, cfg.field, restart_seed);
  std::size_t remaining = cfg.max_iters;

  if (cfg.objective == Objective::coherence) {
    std::size_t stages_left = cfg.p_schedule.size();
    for (double p : cfg.p_schedule) {
      if (remaining == 0) break;
      const std::size_t stage_budget = std::max<std::size_t>(1, remaining / stages_left--);
      auto obj = [p](const VectorConfig& v) { return smoothed_coherence(v, p); };
      auto grd = [p](const VectorConfig& v) { return smoothed_coherence_gradient(v, p); };
      double f = obj(out.x);
      const std::size_t used = descend(out.x, f, obj, grd, cfg.step, cfg.tol, stage_budget);
      out.iterations += used;
      remaining -= std::min(used, remaining);
    }
    renormalize(out.x);
    out.achieved = direct_coherence(out.x);
  } else {
    const std::size_t m = cfg.m;
    auto obj = [m](const VectorConfig& v) { return offdiag_power_sum(v, m); };
    auto grd = [m](const VectorConfig& v) { return offdiag_power_sum_gradient(v, m); };
    double f = obj(out.x);
    out.iterations = descend(out.x, f, obj, grd, cfg.step, cfg.tol, remaining);
    renormalize(out.x);
    out.achieved = offdiag_power_sum(out.x, m) + static_cast<double>(cfg.n);
  }
  return out;
}

void validate_config(const OptimizerConfig& cfg, Objective expected) {
  if (cfg.objective != expected) throw std::invalid_argument("optimizer: objective mismatch");
  if (cfg.d == 0 || cfg.n < cfg.d) throw std::invalid_argument("optimizer: requires n >= d >= 1");
  if (cfg.field != 'R' && cfg.field != 'C')
    throw std::invalid_argument("optimizer: field must be 'R' or 'C'");
  if (cfg.restarts == 0) throw std::invalid_argument("optimizer: restarts must be >= 1");
  if (cfg.m == 0) throw std::invalid_argument("optimizer: potential order must be >= 1");
  double prev = 1.0;
  for (double p : cfg.p_schedule) {
    if (!(p > prev)) throw std::invalid_argument("optimizer: p_schedule must ascend and stay > 1");
    prev = p;
  }
  if (cfg.p_schedule.empty()) throw std::invalid_argument("optimizer: p_schedule must not be empty");
}

std::vector<RestartOutcome> run_all_restarts(const OptimizerConfig& cfg) {
  std::vector<RestartOutcome> outs(cfg.restarts);
  const std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, cfg.restarts));
  if (jobs == 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r)
      outs[r] = run_restart(cfg, SplitMix64::stream_seed(cfg.seed, r));
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t r = next.fetch_add(1);
        if (r >= cfg.restarts) return;
        outs[r] = run_restart(cfg, SplitMix64::stream_seed(cfg.seed, r));
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return outs;
}

OptimizerResult finalize(const OptimizerConfig& cfg, std::vector<RestartOutcome> outs,
                         const Certificate& cert) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < outs.size(); ++r)
    if (outs[r].achieved < outs[best].achieved) best = r;

  SampledFrame frame = SampledFrame::create(cfg.field, cfg.d, counting_measure(cfg.n),
                                            std::move(outs[best].x), true);
  constexpr double kReportTol = 1e-4;
  OptimizerResult res{std::move(frame), outs[best].achieved, cert,
                      outs[best].achieved - cert.value, false, false, {}};
  res.iterations_used.reserve(outs.size());
  for (const RestartOutcome& o : outs) res.iterations_used.push_back(o.iterations);

  if (cfg.n >= 2) {
    const EquiangularityReport ang = equiangularity(res.frame, kReportTol);
    res.equiangular = ang.equiangular;
  }
  if (cfg.objective == Objective::potential && cfg.m == 1) {
    res.tight = res.gap <= 1e-6 * std::max(1.0, cert.value);
  } else {
    const FrameOperatorReport op = frame_operator(res.frame);
    res.tight = op.lower > 0.0 && op.upper / op.lower <= 1.0 + kReportTol;
  }
  return res;
}

}  // namespace

double smoothed_coherence(const VectorConfig& x, double p) {
  const Gram g = compute_gram(x);
  if (g.max_abs <= 0.0) return 0.0;
  double fhat = 0.0;
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = j + 1; k < g.n; ++k) {
      const double r = std::abs(g.at(j, k)) / g.max_abs;
      fhat += std::pow(r * r, p);
    }
  return g.max_abs * g.max_abs * std::pow(fhat, 1.0 / p);
}

VectorConfig smoothed_coherence_gradient(const VectorConfig& x, double p) {
  const Gram g = compute_gram(x);
  VectorConfig grad = zero_like(x);
  if (g.max_abs <= 0.0) return grad;
  double fhat = 0.0;
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = j + 1; k < g.n; ++k) {
      const double r = std::abs(g.at(j, k)) / g.max_abs;
      fhat += std::pow(r * r, p);
    }
  if (fhat <= 0.0) return grad;
  // scale-free coefficient: F^{1/p-1} |g|^{2p-2} = fhat^{1/p-1} r^{2p-2}
  const double fpow = std::pow(fhat, 1.0 / p - 1.0);
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = j + 1; k < g.n; ++k) {
      const double r = std::abs(g.at(j, k)) / g.max_abs;
      const double coeff = fpow * std::pow(r * r, p - 1.0);
      add_pair_gradient(grad, x, j, k, g.at(j, k), coeff);
    }
  return grad;
}

double offdiag_power_sum(const VectorConfig& x, std::size_t m) {
  const Gram g = compute_gram(x);
  double sum = 0.0;
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = j + 1; k < g.n; ++k) sum += 2.0 * ipow(std::norm(g.at(j, k)), m);
  return sum;
}

VectorConfig offdiag_power_sum_gradient(const VectorConfig& x, std::size_t m) {
  const Gram g = compute_gram(x);
  VectorConfig grad = zero_like(x);
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t k = j + 1; k < g.n; ++k) {
      const Complex gjk = g.at(j, k);
      const double coeff = 2.0 * static_cast<double>(m) * ipow(std::norm(gjk), m - 1);
      add_pair_gradient(grad, x, j, k, gjk, coeff);
    }
  return grad;
}

OptimizerResult minimize_coherence(const OptimizerConfig& cfg) {
  validate_config(cfg, Objective::coherence);
  Certificate cert{0.0, "trivial"};
  const DiscreteWelch welch = welch_discrete(cfg.n, cfg.d, 1);
  if (welch.max_applicable) {
    cert = {std::sqrt(std::max(0.0, welch.max_lb)), "welch_sup"};
  }
  if (cfg.n >= 2) {
    const AltBounds alt = alt_bounds(cfg.n, cfg.d, cfg.field);
    auto consider = [&](const std::optional<double>& v, const char* name) {
      if (v.has_value() && *v > cert.value) cert = {*v, name};
    };
    consider(alt.bukh_cox, "bukh_cox");
    consider(alt.orthoplex, "orthoplex");
    consider(alt.levenstein, "levenstein");
    consider(alt.exponential, "exponential");
  }
  return finalize(cfg, run_all_restarts(cfg), cert);
}

OptimizerResult minimize_potential(const OptimizerConfig& cfg) {
  validate_config(cfg, Objective::potential);
  const double n = static_cast<double>(cfg.n);
  Certificate cert{n * n / static_cast<double>(sym_dim(cfg.d, cfg.m)), "welch_sum"};
  return finalize(cfg, run_all_restarts(cfg), cert);
}

GradientCheckReport gradient_check(const OptimizerConfig& cfg, std::uint64_t probe_seed) {
  if (cfg.d == 0 || cfg.n < cfg.d) throw std::invalid_argument("optimizer: requires n >= d >= 1");
  const VectorConfig x0 = random_config(cfg.n, cfg.d, cfg.field, SplitMix64::stream_seed(probe_seed, 0));
  const double probe_p = 4.0;
  auto obj = [&](const VectorConfig& v) {
    return cfg.objective == Objective::coherence ? smoothed_coherence(v, probe_p)
                                                 : offdiag_power_sum(v, cfg.m);
  };
  const VectorConfig analytic = cfg.objective == Objective::coherence
                                    ? smoothed_coherence_gradient(x0, probe_p)
                                    : offdiag_power_sum_gradient(x0, cfg.m);

  const double h = 1e-6;
  double fd_inf = 0.0;
  double max_abs_err = 0.0;
  double grad_norm_sq = 0.0;
  for (std::size_t j = 0; j < x0.size(); ++j) {
    for (std::size_t i = 0; i < x0[j].size(); ++i) {
      grad_norm_sq += std::norm(analytic[j][i]);
      const int comps = (cfg.field == 'C') ? 2 : 1;
      for (int c = 0; c < comps; ++c) {
        VectorConfig plus = x0;
        VectorConfig minus = x0;
        const Complex dz = (c == 0) ? Complex(h, 0.0) : Complex(0.0, h);
        plus[j][i] += dz;
        minus[j][i] -= dz;
        const double fd = (obj(plus) - obj(minus)) / (2.0 * h);
        const double an = (c == 0) ? analytic[j][i].real() : analytic[j][i].imag();
        fd_inf = std::max(fd_inf, std::abs(fd));
        max_abs_err = std::max(max_abs_err, std::abs(an - fd));
      }
    }
  }
  GradientCheckReport rep;
  rep.grad_norm = std::sqrt(grad_norm_sq);
  rep.max_rel_error = max_abs_err / std::max(fd_inf, 1e-12);
  rep.pass = rep.max_rel_error <= 1e-5;
  return rep;
}

}  // namespace cwelch
