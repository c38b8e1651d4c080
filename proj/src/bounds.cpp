#include "cwelch/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "cwelch/errors.hpp"

namespace cwelch {

namespace {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

double ipow(double x, std::size_t m) {
  double r = 1.0;
  while (m > 0) {
    if (m & 1u) r *= x;
    x *= x;
    m >>= 1u;
  }
  return r;
}

double vec_norm_sq(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

void require_normalized(const SampledFrame& f, const char* who) {
  if (!f.normalized())
    throw std::invalid_argument(std::string(who) + ": requires a normalized family");
}

bool unit_weight_atoms(const SampledFrame& f) {
  if (!f.measure().atomic()) return false;
  for (double w : f.measure().weights())
    if (w != 1.0) return false;
  return true;
}

double frame_coherence_value(const SampledFrame& f) {
  double best = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = a + 1; b < f.size(); ++b)
      best = std::max(best, std::abs(inner_product(f.vector(a), f.vector(b))));
  return best;
}

}  // namespace

BoundReport make_bound_report(std::string id, double order, double lhs, double rhs) {
  BoundReport r;
  r.id = std::move(id);
  r.order = order;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = lhs - rhs;
  const double slack = kBoundTol * std::max(1.0, std::abs(rhs));
  r.satisfied = r.gap >= -slack;
  r.equality = std::abs(r.gap) <= slack;
  return r;
}

BoundReport inapplicable_report(std::string id, double order, std::string reason) {
  BoundReport r;
  r.id = std::move(id);
  r.order = order;
  r.applicable = false;
  r.note = std::move(reason);
  return r;
}

std::uint64_t sym_dim(std::size_t d, std::size_t m) {
  if (d == 0 || m == 0) throw std::invalid_argument("sym_dim: requires d >= 1 and m >= 1");
  constexpr std::uint64_t kExactLimit = 1ull << 53;
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    r *= d - 1 + i;  // binomial partial products stay integral
    r /= i;
    if (r > kExactLimit) throw std::range_error("sym_dim: binomial exceeds 2^53");
  }
  return static_cast<std::uint64_t>(r);
}

ContinuousWelch welch_continuous(const MassSummary& mass, std::size_t d, std::size_t m) {
  const double c = static_cast<double>(sym_dim(d, m));
  ContinuousWelch out;
  out.integral_lb = mass.total * mass.total / c;
  if (mass.offdiag > 0.0) {
    out.sup_lb = (out.integral_lb - mass.diagonal) / mass.offdiag;
    out.sup_applicable = true;
  } else {
    out.sup_lb = 0.0;
    out.sup_applicable = false;
  }
  return out;
}

DiscreteWelch welch_discrete(std::size_t n, std::size_t d, std::size_t m) {
  if (n < d || d == 0) throw std::invalid_argument("welch_discrete: requires n >= d >= 1");
  const double nd = static_cast<double>(n);
  MassSummary mass;
  mass.total = nd;
  mass.diagonal = nd;
  mass.offdiag = nd * nd - nd;
  const ContinuousWelch cw = welch_continuous(mass, d, m);
  DiscreteWelch out;
  out.sum_lb = cw.integral_lb;
  out.max_lb = cw.sup_lb;
  out.max_applicable = cw.sup_applicable;
  return out;
}

LhsSums evaluate_lhs(const SampledFrame& f, std::size_t m) {
  if (m == 0) throw std::invalid_argument("evaluate_lhs: order must be >= 1");
  const std::size_t n = f.size();
  const auto& w = f.measure().weights();
  KahanSum diag;
  KahanSum off2;  // sum over unordered pairs, doubled below
  double sup = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    diag.add(w[a] * w[a] * ipow(vec_norm_sq(f.vector(a)), 2 * m));
    for (std::size_t b = a + 1; b < n; ++b) {
      const double g2 = std::norm(inner_product(f.vector(a), f.vector(b)));
      const double gm = ipow(g2, m);
      off2.add(w[a] * w[b] * gm);
      sup = std::max(sup, gm);
    }
  }
  LhsSums out;
  out.full = diag.value() + 2.0 * off2.value();
  out.offdiag = f.measure().atomic() ? 2.0 * off2.value() : out.full;
  if (n >= 2) out.sup = sup;
  return out;
}

std::pair<BoundReport, BoundReport> welch_generalized(const SampledFrame& f, std::size_t m) {
  const double c = static_cast<double>(sym_dim(f.dim(), m));
  const LhsSums lhs = evaluate_lhs(f, m);
  const MassSummary mass = f.measure().mass();
  const auto& w = f.measure().weights();

  KahanSum norm_int;  // integral of |tau|^{2m}
  KahanSum diag_term; // integral of |tau|^{4m} over the diagonal
  for (std::size_t a = 0; a < f.size(); ++a) {
    const double ns = vec_norm_sq(f.vector(a));
    norm_int.add(w[a] * ipow(ns, m));
    if (f.measure().atomic()) diag_term.add(w[a] * w[a] * ipow(ns, 2 * m));
  }
  const double integral_rhs = norm_int.value() * norm_int.value() / c;

  BoundReport integral =
      make_bound_report("welch_gen_integral", static_cast<double>(m), lhs.full, integral_rhs);

  BoundReport sup;
  if (mass.offdiag > 0.0 && lhs.sup.has_value()) {
    sup = make_bound_report("welch_gen_sup", static_cast<double>(m), *lhs.sup,
                            (integral_rhs - diag_term.value()) / mass.offdiag);
    sup.approximate = !f.measure().atomic();
  } else {
    sup = inapplicable_report("welch_gen_sup", static_cast<double>(m),
                              "needs off-diagonal mass and at least two nodes");
  }
  return {std::move(integral), std::move(sup)};
}

BoundReport p_welch(const SampledFrame& f, double p) {
  if (!(p > 2.0)) throw std::invalid_argument("p_welch: requires p > 2");
  require_normalized(f, "p_welch");
  const MassSummary mass = f.measure().mass();
  if (!(mass.offdiag > 0.0))
    return inapplicable_report("p_welch", p, "needs off-diagonal mass");

  const std::size_t n = f.size();
  const auto& w = f.measure().weights();
  KahanSum full;
  for (std::size_t a = 0; a < n; ++a) {
    full.add(w[a] * w[a] * std::pow(vec_norm_sq(f.vector(a)), p / 2.0));
    for (std::size_t b = a + 1; b < n; ++b) {
      const double g = std::abs(inner_product(f.vector(a), f.vector(b)));
      full.add(2.0 * w[a] * w[b] * std::pow(g, p));
    }
  }
  const double d = static_cast<double>(f.dim());
  // first-order off-diagonal integral bound; clamped at zero when vacuous
  const double base = std::max(0.0, mass.total * mass.total / d - mass.diagonal);
  const double rhs = std::pow(mass.offdiag, 1.0 - p / 2.0) * std::pow(base, p / 2.0) + mass.diagonal;
  return make_bound_report("p_welch", p, full.value(), rhs);
}

BoundReport trace_power_bound(const SampledFrame& f, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("trace_power_bound: requires r > 0");
  require_normalized(f, "trace_power_bound");
  const FrameOperatorReport rep = frame_operator(f);
  const double d = static_cast<double>(f.dim());
  double power_trace = 0.0;
  for (double lambda : rep.eig.eigenvalues) power_trace += std::pow(std::max(lambda, 0.0), r);
  const double mean_power = power_trace / d;
  const double jensen = std::pow(f.measure().mass().total / d, r);
  if (r >= 1.0) return make_bound_report("trace_power_lower", r, mean_power, jensen);
  return make_bound_report("trace_power_upper", r, jensen, mean_power);
}

std::uint64_t gerzon(std::size_t d, char field) {
  if (d == 0) throw std::invalid_argument("gerzon: requires d >= 1");
  const std::uint64_t du = d;
  return (field == 'C') ? du * du : du * (du + 1) / 2;
}

AltBounds alt_bounds(std::size_t n, std::size_t d, char field) {
  if (n < 2 || d == 0) throw std::invalid_argument("alt_bounds: requires n >= 2, d >= 1");
  if (field != 'R' && field != 'C') throw std::invalid_argument("alt_bounds: field must be R or C");
  const double m = (field == 'C') ? 1.0 : 0.5;
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  AltBounds out;
  if (n > d) {
    const double z = static_cast<double>(gerzon(n - d, field));
    const double excess = static_cast<double>(n - d);
    const double denom = nd * (1.0 + m * (excess - 1.0) * std::sqrt(1.0 / m + excess)) - z;
    out.bukh_cox = z / denom;
  }
  const std::uint64_t zd = gerzon(d, field);
  if (n > zd) {
    out.orthoplex = 1.0 / std::sqrt(dd);
    out.levenstein =
        std::sqrt((nd * (m + 1.0) - dd * (m * dd + 1.0)) / ((nd - dd) * (m * dd + 1.0)));
  }
  if (d >= 2) out.exponential = 1.0 - 2.0 * std::pow(nd, -1.0 / (dd - 1.0));
  return out;
}

DualWelchReport dual_welch(const SampledFrame& tau, const SampledFrame& omega) {
  const DualPairCheck check = is_dual_pair(tau, omega);
  if (!check.dual)
    throw std::invalid_argument("dual_welch: families are not a dual pair (residual " +
                                std::to_string(check.residual) + ")");
  const std::size_t n = tau.size();
  const auto& w = tau.measure().weights();
  const MassSummary mass = tau.measure().mass();
  const double d = static_cast<double>(tau.dim());

  std::vector<Complex> pairing(n);
  Complex mean(0.0, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    pairing[a] = inner_product(tau.vector(a), omega.vector(a));
    mean += w[a] * pairing[a];
  }
  mean /= mass.total;
  double max_dev = 0.0;
  for (const Complex& c : pairing) max_dev = std::max(max_dev, std::abs(c - mean));
  const bool constant = max_dev <= 1e-8 * std::max(1.0, std::abs(mean));

  double sup = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) sup = std::max(sup, std::norm(inner_product(tau.vector(a), omega.vector(b))));

  DualWelchReport out;
  out.constant_pairing = constant;
  out.pairing_mean = mean;

  if (!(mass.offdiag > 0.0) || n < 2) {
    out.main = inapplicable_report("dual_welch", 1.0, "needs off-diagonal mass");
    out.corollary = inapplicable_report("dual_welch_corollary", 1.0, "needs off-diagonal mass");
    return out;
  }

  if (constant) {
    const double rhs = d * (mass.total * mass.total - d * mass.diagonal) /
                       (mass.total * mass.total * mass.offdiag);
    out.main = make_bound_report("dual_welch", 1.0, sup, rhs);
    out.main.approximate = !tau.measure().atomic();
  } else {
    out.main = inapplicable_report("dual_welch", 1.0, "pairing <tau_a, omega_a> not constant");
  }

  KahanSum diag_pair;
  if (tau.measure().atomic())
    for (std::size_t a = 0; a < n; ++a) diag_pair.add(w[a] * w[a] * std::norm(pairing[a]));
  out.corollary =
      make_bound_report("dual_welch_corollary", 1.0, sup, (d - diag_pair.value()) / mass.offdiag);
  out.corollary.approximate = !tau.measure().atomic();
  return out;
}

BoundReport dual_dim_check(const SampledFrame& tau, const SampledFrame& omega) {
  const DualPairCheck check = is_dual_pair(tau, omega);
  if (!check.dual)
    throw std::invalid_argument("dual_dim_check: families are not a dual pair (residual " +
                                std::to_string(check.residual) + ")");
  const auto& w = tau.measure().weights();
  KahanSum full;
  for (std::size_t a = 0; a < tau.size(); ++a)
    for (std::size_t b = 0; b < tau.size(); ++b)
      full.add(w[a] * w[b] * std::norm(inner_product(tau.vector(a), omega.vector(b))));
  return make_bound_report("dual_dim", 1.0, full.value(), static_cast<double>(tau.dim()));
}

std::vector<BoundReport> check_all(const SampledFrame& f, const std::vector<int>& orders,
                                   const std::vector<double>& ps, const std::vector<double>& rs) {
  std::vector<BoundReport> out;
  const MassSummary mass = f.measure().mass();
  const bool atomless = !f.measure().atomic();

  for (int m_signed : orders) {
    if (m_signed < 1) throw std::invalid_argument("check_all: orders must be >= 1");
    const std::size_t m = static_cast<std::size_t>(m_signed);
    const double order = static_cast<double>(m);
    if (f.normalized()) {
      const ContinuousWelch cw = welch_continuous(mass, f.dim(), m);
      const LhsSums lhs = evaluate_lhs(f, m);
      out.push_back(make_bound_report("welch_integral", order, lhs.full, cw.integral_lb));
      if (cw.sup_applicable && lhs.sup.has_value()) {
        BoundReport sup = make_bound_report("welch_sup", order, *lhs.sup, cw.sup_lb);
        sup.approximate = atomless;
        out.push_back(std::move(sup));
      } else {
        out.push_back(inapplicable_report("welch_sup", order,
                                          "needs off-diagonal mass and at least two nodes"));
      }
    } else {
      auto [integral, sup] = welch_generalized(f, m);
      out.push_back(std::move(integral));
      out.push_back(std::move(sup));
    }
  }

  for (double p : ps) {
    if (f.normalized())
      out.push_back(p_welch(f, p));
    else
      out.push_back(inapplicable_report("p_welch", p, "needs a normalized family"));
  }

  for (double r : rs) {
    if (f.normalized())
      out.push_back(trace_power_bound(f, r));
    else
      out.push_back(inapplicable_report(r >= 1.0 ? "trace_power_lower" : "trace_power_upper", r,
                                        "needs a normalized family"));
  }

  // packing bounds compare against plain coherence; they apply to unit
  // vectors under the counting measure
  const bool packing = f.normalized() && unit_weight_atoms(f) && f.size() >= 2;
  if (packing) {
    const double coh = frame_coherence_value(f);
    const AltBounds alt = alt_bounds(f.size(), f.dim(), f.field());
    auto push = [&](const char* id, const std::optional<double>& v, const char* cond) {
      if (v.has_value())
        out.push_back(make_bound_report(id, 1.0, coh, *v));
      else
        out.push_back(inapplicable_report(id, 1.0, cond));
    };
    push("bukh_cox", alt.bukh_cox, "requires n > d");
    push("orthoplex", alt.orthoplex, "requires n > gerzon(d)");
    push("levenstein", alt.levenstein, "requires n > gerzon(d)");
    push("exponential", alt.exponential, "requires d >= 2");
  }
  return out;
}

}  // namespace cwelch
