#include "cwelch.h"

#include <cstring>
#include <new>
#include <string>

#include "cwelch/analysis.hpp"
#include "cwelch/bounds.hpp"
#include "cwelch/errors.hpp"
#include "cwelch/frame_io.hpp"
#include "cwelch/frames.hpp"
#include "cwelch/optimizer.hpp"
#include "cwelch/version.hpp"

struct cwelch_frame {
  cwelch::SampledFrame value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
cwelch_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CWELCH_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CWELCH_ERR_INVALID_ARGUMENT;
  } catch (const std::range_error& e) {
    g_last_error = e.what();
    return CWELCH_ERR_INVALID_ARGUMENT;
  } catch (const cwelch::SingularOperatorError& e) {
    g_last_error = e.what();
    return CWELCH_ERR_SINGULAR;
  } catch (const cwelch::NumericError& e) {
    g_last_error = e.what();
    return CWELCH_ERR_NUMERIC;
  } catch (const cwelch::ParseError& e) {
    g_last_error = e.what();
    return CWELCH_ERR_PARSE;
  } catch (const std::ios_base::failure& e) {
    g_last_error = e.what();
    return CWELCH_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CWELCH_ERR_INTERNAL;
  }
}

cwelch_status require(bool ok, const char* message) {
  if (ok) return CWELCH_OK;
  g_last_error = message;
  return CWELCH_ERR_INVALID_ARGUMENT;
}

// NULL list pointers keep the defaults; non-NULL with count 0 selects none.
cwelch::AnalysisOptions convert_options(const cwelch_analysis_options* options) {
  cwelch::AnalysisOptions opts;
  if (options == nullptr) return opts;
  if (options->orders != nullptr)
    opts.orders.assign(options->orders, options->orders + options->n_orders);
  if (options->ps != nullptr) opts.ps.assign(options->ps, options->ps + options->n_ps);
  if (options->rs != nullptr) opts.rs.assign(options->rs, options->rs + options->n_rs);
  opts.include_matrix = options->include_matrix != 0;
  return opts;
}

}  // namespace

extern "C" {

const char* cwelch_version(void) { return cwelch::kVersion; }

const char* cwelch_status_name(cwelch_status status) {
  switch (status) {
    case CWELCH_OK: return "ok";
    case CWELCH_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CWELCH_ERR_SINGULAR: return "singular operator";
    case CWELCH_ERR_NUMERIC: return "numeric failure";
    case CWELCH_ERR_PARSE: return "parse error";
    case CWELCH_ERR_IO: return "io error";
    case CWELCH_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* cwelch_last_error(void) { return g_last_error.c_str(); }

void cwelch_string_free(char* s) { delete[] s; }

cwelch_status cwelch_frame_builtin(const char* spec, cwelch_frame** out) {
  if (cwelch_status st = require(spec && out, "cwelch_frame_builtin: null argument")) return st;
  return guarded([&] { *out = new cwelch_frame{cwelch::builtin_frame(spec)}; });
}

cwelch_status cwelch_frame_parse(const char* json_text, cwelch_frame** out) {
  if (cwelch_status st = require(json_text && out, "cwelch_frame_parse: null argument")) return st;
  return guarded([&] { *out = new cwelch_frame{cwelch::parse_frame(json_text)}; });
}

cwelch_status cwelch_frame_load(const char* path, cwelch_frame** out) {
  if (cwelch_status st = require(path && out, "cwelch_frame_load: null argument")) return st;
  return guarded([&] { *out = new cwelch_frame{cwelch::load_frame(path)}; });
}

cwelch_status cwelch_frame_to_json(const cwelch_frame* frame, char** json_out) {
  if (cwelch_status st = require(frame && json_out, "cwelch_frame_to_json: null argument"))
    return st;
  return guarded([&] { *json_out = dup_string(cwelch::frame_to_json(frame->value).dump(2)); });
}

cwelch_status cwelch_frame_save(const cwelch_frame* frame, const char* path) {
  if (cwelch_status st = require(frame && path, "cwelch_frame_save: null argument")) return st;
  return guarded([&] { cwelch::save_frame(frame->value, path); });
}

void cwelch_frame_free(cwelch_frame* frame) { delete frame; }

int cwelch_frame_dim(const cwelch_frame* frame) {
  return frame ? static_cast<int>(frame->value.dim()) : 0;
}

long long cwelch_frame_node_count(const cwelch_frame* frame) {
  return frame ? static_cast<long long>(frame->value.size()) : 0;
}

char cwelch_frame_field(const cwelch_frame* frame) {
  return frame ? frame->value.field() : '?';
}

int cwelch_frame_normalized(const cwelch_frame* frame) {
  return frame != nullptr && frame->value.normalized() ? 1 : 0;
}

double cwelch_frame_total_mass(const cwelch_frame* frame) {
  return frame ? frame->value.measure().mass().total : 0.0;
}

cwelch_status cwelch_frame_canonical_dual(const cwelch_frame* frame, cwelch_frame** out) {
  if (cwelch_status st = require(frame && out, "cwelch_frame_canonical_dual: null argument"))
    return st;
  return guarded([&] { *out = new cwelch_frame{cwelch::canonical_dual(frame->value)}; });
}

cwelch_status cwelch_is_dual_pair(const cwelch_frame* tau, const cwelch_frame* omega,
                                  int* is_dual, double* residual) {
  if (cwelch_status st =
          require(tau && omega && is_dual && residual, "cwelch_is_dual_pair: null argument"))
    return st;
  return guarded([&] {
    const cwelch::DualPairCheck check = cwelch::is_dual_pair(tau->value, omega->value);
    *is_dual = check.dual ? 1 : 0;
    *residual = check.residual;
  });
}

cwelch_status cwelch_dual_bounds(const cwelch_frame* tau, const cwelch_frame* omega,
                                 char** json_out) {
  if (cwelch_status st = require(tau && omega && json_out, "cwelch_dual_bounds: null argument"))
    return st;
  return guarded([&] {
    const cwelch::DualWelchReport rep = cwelch::dual_welch(tau->value, omega->value);
    const cwelch::BoundReport dim = cwelch::dual_dim_check(tau->value, omega->value);
    nlohmann::json out;
    auto encode = [](const cwelch::BoundReport& b) {
      nlohmann::json j;
      j["id"] = b.id;
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
    };
    out["sup"] = encode(rep.main);
    out["sup_corollary"] = encode(rep.corollary);
    out["dim"] = encode(dim);
    out["constant_pairing"] = rep.constant_pairing;
    out["pairing_mean"] = {rep.pairing_mean.real(), rep.pairing_mean.imag()};
    *json_out = dup_string(out.dump(2));
  });
}

cwelch_status cwelch_analyze(const cwelch_frame* frame, const cwelch_analysis_options* options,
                             char** json_out) {
  if (cwelch_status st = require(frame && json_out, "cwelch_analyze: null argument")) return st;
  return guarded([&] {
    const nlohmann::json report = cwelch::analyze(frame->value, convert_options(options));
    *json_out = dup_string(report.dump(2));
  });
}

cwelch_status cwelch_gram_csv(const cwelch_frame* frame, char** csv_out) {
  if (cwelch_status st = require(frame && csv_out, "cwelch_gram_csv: null argument")) return st;
  return guarded([&] { *csv_out = dup_string(cwelch::gram_csv(frame->value)); });
}

cwelch_status cwelch_bounds_table(int n, int d, char field, const int* orders, int n_orders,
                                  const double* ps, int n_ps, char** json_out) {
  if (cwelch_status st = require(json_out != nullptr, "cwelch_bounds_table: null output"))
    return st;
  if (cwelch_status st = require(n >= 1 && d >= 1, "cwelch_bounds_table: requires n, d >= 1"))
    return st;
  return guarded([&] {
    std::vector<int> ms = {1, 2, 3};
    if (orders != nullptr && n_orders > 0) ms.assign(orders, orders + n_orders);
    std::vector<double> pexp;
    if (ps != nullptr && n_ps > 0) pexp.assign(ps, ps + n_ps);
    const nlohmann::json table = cwelch::bounds_table(
        static_cast<std::size_t>(n), static_cast<std::size_t>(d), field, ms, pexp);
    *json_out = dup_string(table.dump(2));
  });
}

cwelch_status cwelch_optimize(const cwelch_optimize_options* options, char** json_out,
                              cwelch_frame** frame_out) {
  if (cwelch_status st = require(options && json_out, "cwelch_optimize: null argument")) return st;
  if (cwelch_status st = require(options->objective != nullptr, "cwelch_optimize: null objective"))
    return st;
  return guarded([&] {
    cwelch::OptimizerConfig cfg;
    if (options->n < 1 || options->d < 1)
      throw std::invalid_argument("cwelch_optimize: requires n, d >= 1");
    cfg.n = static_cast<std::size_t>(options->n);
    cfg.d = static_cast<std::size_t>(options->d);
    cfg.field = options->field;
    const std::string objective = options->objective;
    if (objective == "coherence")
      cfg.objective = cwelch::Objective::coherence;
    else if (objective == "potential")
      cfg.objective = cwelch::Objective::potential;
    else
      throw std::invalid_argument("cwelch_optimize: objective must be coherence or potential");
    cfg.m = options->m > 0 ? static_cast<std::size_t>(options->m) : 1;
    cfg.seed = options->seed;
    if (options->restarts > 0) cfg.restarts = static_cast<std::size_t>(options->restarts);
    if (options->max_iters > 0) cfg.max_iters = static_cast<std::size_t>(options->max_iters);
    if (options->step > 0.0) cfg.step = options->step;
    if (options->tol > 0.0) cfg.tol = options->tol;
    if (options->jobs > 0) cfg.jobs = static_cast<std::size_t>(options->jobs);

    const cwelch::OptimizerResult result = cfg.objective == cwelch::Objective::coherence
                                               ? cwelch::minimize_coherence(cfg)
                                               : cwelch::minimize_potential(cfg);
    *json_out = dup_string(cwelch::optimizer_report(cfg, result).dump(2));
    if (frame_out != nullptr) *frame_out = new cwelch_frame{result.frame};
  });
}

cwelch_status cwelch_gradient_check(int n, int d, char field, const char* objective, int m,
                                    unsigned long long probe_seed, double* max_rel_error) {
  if (cwelch_status st = require(objective && max_rel_error, "cwelch_gradient_check: null argument"))
    return st;
  cwelch_status status = CWELCH_OK;
  const cwelch_status guard = guarded([&] {
    cwelch::OptimizerConfig cfg;
    if (n < 1 || d < 1) throw std::invalid_argument("cwelch_gradient_check: requires n, d >= 1");
    cfg.n = static_cast<std::size_t>(n);
    cfg.d = static_cast<std::size_t>(d);
    cfg.field = field;
    const std::string obj = objective;
    if (obj == "coherence")
      cfg.objective = cwelch::Objective::coherence;
    else if (obj == "potential")
      cfg.objective = cwelch::Objective::potential;
    else
      throw std::invalid_argument("cwelch_gradient_check: objective must be coherence or potential");
    cfg.m = m > 0 ? static_cast<std::size_t>(m) : 1;
    const cwelch::GradientCheckReport rep = cwelch::gradient_check(cfg, probe_seed);
    *max_rel_error = rep.max_rel_error;
    if (!rep.pass) {
      g_last_error = "gradient check failed: max relative error " + std::to_string(rep.max_rel_error);
      status = CWELCH_ERR_NUMERIC;
    }
  });
  return guard != CWELCH_OK ? guard : status;
}

}  // extern "C"
