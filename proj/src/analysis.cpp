#include "cwelch/analysis.hpp"

#include <cmath>
#include <sstream>

#include "cwelch/bounds.hpp"
#include "cwelch/metrics.hpp"
#include "cwelch/version.hpp"

namespace cwelch {

namespace {

nlohmann::json bound_to_json(const BoundReport& b) {
  nlohmann::json j;
  j["id"] = b.id;
  j["order"] = b.order;
  j["applicable"] = b.applicable;
  if (b.applicable) {
    j["lhs"] = b.lhs;
    j["rhs"] = b.rhs;
    j["satisfied"] = b.satisfied;
    j["gap"] = b.gap;
    j["equality"] = b.equality;
    j["approximate"] = b.approximate;
  } else {
    j["note"] = b.note;
  }
  return j;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(nlohmann::json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

nlohmann::json analyze(const SampledFrame& f, const AnalysisOptions& opts) {
  const FrameOperatorReport op = frame_operator(f);
  const MetricsReport metrics = compute_metrics(f, op);
  const MassSummary mass = f.measure().mass();
  const std::vector<BoundReport> bounds = check_all(f, opts.orders, opts.ps, opts.rs);

  nlohmann::json report;
  report["version"] = kVersion;

  nlohmann::json frame;
  frame["field"] = std::string(1, f.field());
  frame["dim"] = f.dim();
  frame["node_count"] = f.size();
  frame["atomic"] = f.measure().atomic();
  frame["normalized"] = f.normalized();
  frame["mass"] = {{"total", mass.total}, {"diagonal", mass.diagonal}, {"offdiag", mass.offdiag}};
  report["frame"] = std::move(frame);

  nlohmann::json opj;
  opj["lower"] = op.lower;
  opj["upper"] = op.upper;
  opj["trace"] = op.trace;
  opj["trace_sq"] = op.trace_sq;
  if (opts.include_matrix) opj["matrix"] = matrix_to_json(op.op.matrix());
  report["frame_operator"] = std::move(opj);

  nlohmann::json mj;
  if (metrics.coherence.has_value()) mj["coherence"] = *metrics.coherence;
  if (metrics.crms.has_value()) mj["crms"] = *metrics.crms;
  mj["frame_potential"] = metrics.potential;
  mj["tight"] = metrics.tight;
  if (metrics.tight_ratio.has_value()) mj["tight_ratio"] = *metrics.tight_ratio;
  if (f.size() >= 2) {
    mj["equiangular"] = metrics.angles.equiangular;
    mj["gamma"] = metrics.angles.gamma;
    mj["max_angle_deviation"] = metrics.angles.max_deviation;
  }
  if (metrics.certificate.has_value()) {
    mj["equality_certificate"] = {{"coherence_sq", metrics.certificate->coherence_sq},
                                  {"sup_rhs", metrics.certificate->sup_rhs},
                                  {"equiangular", metrics.certificate->equiangular},
                                  {"equality", metrics.certificate->equality}};
  }
  report["metrics"] = std::move(mj);

  nlohmann::json bj = nlohmann::json::array();
  bool all_ok = true;
  for (const BoundReport& b : bounds) {
    if (b.applicable && !b.approximate && !b.satisfied) all_ok = false;
    bj.push_back(bound_to_json(b));
  }
  report["bounds"] = std::move(bj);
  report["all_satisfied"] = all_ok;
  return report;
}

bool all_bounds_satisfied(const nlohmann::json& report) {
  return report.value("all_satisfied", false);
}

std::string gram_csv(const SampledFrame& f) {
  std::ostringstream out;
  out << "i,j,abs_inner\n";
  char buf[64];
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = a + 1; b < f.size(); ++b) {
      const double g = std::abs(inner_product(f.vector(a), f.vector(b)));
      std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g\n", a, b, g);
      out << buf;
    }
  return out.str();
}

nlohmann::json bounds_table(std::size_t n, std::size_t d, char field,
                            const std::vector<int>& orders, const std::vector<double>& ps) {
  if (n < d || d == 0) throw std::invalid_argument("bounds_table: requires n >= d >= 1");
  nlohmann::json out;
  out["version"] = kVersion;
  out["n"] = n;
  out["d"] = d;
  out["field"] = std::string(1, field);
  out["gerzon"] = gerzon(d, field);

  nlohmann::json welch = nlohmann::json::array();
  for (int m : orders) {
    if (m < 1) throw std::invalid_argument("bounds_table: orders must be >= 1");
    const DiscreteWelch w = welch_discrete(n, d, static_cast<std::size_t>(m));
    nlohmann::json row;
    row["m"] = m;
    row["sym_dim"] = sym_dim(d, static_cast<std::size_t>(m));
    row["sum_lb"] = w.sum_lb;
    if (w.max_applicable)
      row["max_lb"] = w.max_lb;
    else
      row["max_lb_note"] = "not applicable for n = 1";
    welch.push_back(std::move(row));
  }
  out["welch"] = std::move(welch);

  if (!ps.empty()) {
    // p-th power bound floors for n unit vectors under the counting measure
    nlohmann::json pj = nlohmann::json::array();
    const double nd = static_cast<double>(n);
    const double offdiag = nd * nd - nd;
    for (double p : ps) {
      if (!(p > 2.0)) throw std::invalid_argument("bounds_table: p exponents must be > 2");
      nlohmann::json row;
      row["p"] = p;
      if (offdiag > 0.0) {
        const double base = std::max(0.0, nd * nd / static_cast<double>(d) - nd);
        row["sum_lb"] = std::pow(offdiag, 1.0 - p / 2.0) * std::pow(base, p / 2.0) + nd;
      } else {
        row["sum_lb_note"] = "not applicable for n = 1";
      }
      pj.push_back(std::move(row));
    }
    out["p_welch"] = std::move(pj);
  }

  const AltBounds alt = alt_bounds(n, d, field);
  nlohmann::json aj;
  auto put = [&](const char* key, const std::optional<double>& v, const char* cond) {
    if (v.has_value())
      aj[key] = *v;
    else
      aj[std::string(key) + "_note"] = cond;
  };
  put("bukh_cox", alt.bukh_cox, "requires n > d");
  put("orthoplex", alt.orthoplex, "requires n > gerzon(d)");
  put("levenstein", alt.levenstein, "requires n > gerzon(d)");
  put("exponential", alt.exponential, "requires d >= 2");
  out["packing"] = std::move(aj);
  return out;
}

nlohmann::json optimizer_report(const OptimizerConfig& cfg, const OptimizerResult& result) {
  nlohmann::json out;
  out["version"] = kVersion;
  out["objective"] = cfg.objective == Objective::coherence ? "coherence" : "potential";
  out["n"] = cfg.n;
  out["d"] = cfg.d;
  out["field"] = std::string(1, cfg.field);
  out["m"] = cfg.m;
  out["seed"] = cfg.seed;
  out["restarts"] = cfg.restarts;
  out["max_iters"] = cfg.max_iters;
  out["achieved"] = result.achieved;
  out["certificate"] = {{"value", result.certificate.value},
                        {"source", result.certificate.source}};
  out["gap"] = result.gap;
  out["equiangular"] = result.equiangular;
  out["tight"] = result.tight;
  out["iterations_used"] = result.iterations_used;
  return out;
}

}  // namespace cwelch
