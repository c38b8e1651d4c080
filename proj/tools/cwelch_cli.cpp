// cwelch command line tool. Talks to the library exclusively through the
// C API in cwelch.h; JSON reports are re-rendered here for terminal output.
//
// Exit codes: 0 success / all bounds satisfied, 1 bound violation detected,
// 2 usage error, 3 input validation error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cwelch.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitInternal = 4;

using nlohmann::json;

struct StringGuard {
  char* value = nullptr;
  ~StringGuard() { cwelch_string_free(value); }
};

struct FrameGuard {
  cwelch_frame* value = nullptr;
  ~FrameGuard() { cwelch_frame_free(value); }
};

int fail(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return code;
}

int map_status(cwelch_status status) {
  switch (status) {
    case CWELCH_OK: return kExitOk;
    case CWELCH_ERR_INVALID_ARGUMENT: return kExitUsage;
    case CWELCH_ERR_PARSE:
    case CWELCH_ERR_IO:
    case CWELCH_ERR_SINGULAR: return kExitBadInput;
    default: return kExitInternal;
  }
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t pos = csv.find(',', start);
    const std::string item = csv.substr(start, pos == std::string::npos ? pos : pos - start);
    if (item.empty()) throw std::invalid_argument("empty list entry");
    out.push_back(std::stoi(item));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t pos = csv.find(',', start);
    const std::string item = csv.substr(start, pos == std::string::npos ? pos : pos - start);
    if (item.empty()) throw std::invalid_argument("empty list entry");
    out.push_back(std::stod(item));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int default_jobs() {
  if (const char* env = std::getenv("CWELCH_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

// ---- bounds ------------------------------------------------------------

int run_bounds(int n, int d, const std::string& field, const std::string& orders_csv,
               const std::string& ps_csv, const std::string& json_path) {
  if (field != "R" && field != "C") return fail(kExitUsage, "--field must be R or C");
  if (n < 1 || d < 1 || n < d) return fail(kExitUsage, "requires n >= d >= 1");
  std::vector<int> orders;
  std::vector<double> ps;
  try {
    orders = parse_int_list(orders_csv);
    if (!ps_csv.empty()) ps = parse_double_list(ps_csv);
  } catch (const std::exception&) {
    return fail(kExitUsage, "bad --orders/--ps list");
  }
  for (int m : orders)
    if (m < 1) return fail(kExitUsage, "--orders entries must be >= 1");
  for (double p : ps)
    if (!(p > 2.0)) return fail(kExitUsage, "--ps entries must be > 2");

  StringGuard out;
  const cwelch_status st =
      cwelch_bounds_table(n, d, field[0], orders.data(), static_cast<int>(orders.size()),
                          ps.data(), static_cast<int>(ps.size()), &out.value);
  if (st != CWELCH_OK) return fail(map_status(st), cwelch_last_error());

  const json table = json::parse(out.value);
  std::printf("n = %d, d = %d, field = %s\n", n, d, field.c_str());
  std::printf("gerzon bound (max equiangular lines): %lld\n\n",
              table["gerzon"].get<long long>());
  std::printf("%-4s %-10s %-22s %-22s\n", "m", "sym_dim", "sum lower bound", "max lower bound");
  for (const json& row : table["welch"]) {
    std::printf("%-4d %-10llu %-22.16g ", row["m"].get<int>(),
                row["sym_dim"].get<unsigned long long>(), row["sum_lb"].get<double>());
    if (row.contains("max_lb"))
      std::printf("%-22.16g\n", row["max_lb"].get<double>());
    else
      std::printf("%s\n", row["max_lb_note"].get<std::string>().c_str());
  }
  if (table.contains("p_welch")) {
    std::printf("\np-th power bound floors on the full double sum:\n");
    for (const json& row : table["p_welch"]) {
      if (row.contains("sum_lb"))
        std::printf("  p = %-6.3g %.16g\n", row["p"].get<double>(), row["sum_lb"].get<double>());
      else
        std::printf("  p = %-6.3g (%s)\n", row["p"].get<double>(),
                    row["sum_lb_note"].get<std::string>().c_str());
    }
  }
  std::printf("\npacking bounds on |<.,.>|:\n");
  const json& packing = table["packing"];
  auto print_packing = [&](const char* key) {
    if (packing.contains(key))
      std::printf("  %-12s %.16g\n", key, packing[key].get<double>());
    else
      std::printf("  %-12s (%s)\n", key,
                  packing[std::string(key) + "_note"].get<std::string>().c_str());
  };
  print_packing("bukh_cox");
  print_packing("orthoplex");
  print_packing("levenstein");
  print_packing("exponential");

  if (!json_path.empty() && !write_file(json_path, std::string(out.value) + "\n"))
    return fail(kExitBadInput, "cannot write " + json_path);
  return kExitOk;
}

// ---- analyze ------------------------------------------------------------

int acquire_frame(const std::string& frame_path, const std::string& builtin_spec,
                  FrameGuard& frame) {
  if (frame_path.empty() == builtin_spec.empty()) {
    return fail(kExitUsage, "exactly one of --frame or --builtin is required");
  }
  cwelch_status st = CWELCH_OK;
  if (!builtin_spec.empty()) {
    st = cwelch_frame_builtin(builtin_spec.c_str(), &frame.value);
  } else {
    st = cwelch_frame_load(frame_path.c_str(), &frame.value);
  }
  if (st != CWELCH_OK) return fail(map_status(st), cwelch_last_error());
  return kExitOk;
}

void print_analysis(const json& report) {
  const json& frame = report["frame"];
  const json& op = report["frame_operator"];
  const json& metrics = report["metrics"];
  std::printf("frame: field %s, dim %lld, %lld nodes, %s, %s\n",
              frame["field"].get<std::string>().c_str(), frame["dim"].get<long long>(),
              frame["node_count"].get<long long>(),
              frame["atomic"].get<bool>() ? "atomic" : "atomless",
              frame["normalized"].get<bool>() ? "normalized" : "not normalized");
  std::printf("mass: total %.16g, diagonal %.16g, offdiag %.16g\n",
              frame["mass"]["total"].get<double>(), frame["mass"]["diagonal"].get<double>(),
              frame["mass"]["offdiag"].get<double>());
  std::printf("frame operator: bounds [%.16g, %.16g], trace %.16g, trace_sq %.16g\n",
              op["lower"].get<double>(), op["upper"].get<double>(), op["trace"].get<double>(),
              op["trace_sq"].get<double>());
  if (metrics.contains("coherence"))
    std::printf("coherence: %.16g\n", metrics["coherence"].get<double>());
  if (metrics.contains("crms")) std::printf("crms: %.16g\n", metrics["crms"].get<double>());
  std::printf("frame potential: %.16g\n", metrics["frame_potential"].get<double>());
  std::printf("tight: %s", metrics["tight"].get<bool>() ? "yes" : "no");
  if (metrics.contains("tight_ratio"))
    std::printf(" (b/a = %.16g)", metrics["tight_ratio"].get<double>());
  std::printf("\n");
  if (metrics.contains("equiangular"))
    std::printf("equiangular: %s (gamma %.16g, max deviation %.3g)\n",
                metrics["equiangular"].get<bool>() ? "yes" : "no",
                metrics["gamma"].get<double>(), metrics["max_angle_deviation"].get<double>());

  std::printf("\n%-22s %-6s %-22s %-22s %-10s %-8s\n", "bound", "order", "lhs", "rhs", "status",
              "equality");
  for (const json& b : report["bounds"]) {
    if (!b["applicable"].get<bool>()) {
      std::printf("%-22s %-6.3g (not applicable: %s)\n", b["id"].get<std::string>().c_str(),
                  b["order"].get<double>(), b["note"].get<std::string>().c_str());
      continue;
    }
    std::string status = b["satisfied"].get<bool>() ? "ok" : "VIOLATED";
    if (b["approximate"].get<bool>()) status += "*";
    std::printf("%-22s %-6.3g %-22.16g %-22.16g %-10s %-8s\n", b["id"].get<std::string>().c_str(),
                b["order"].get<double>(), b["lhs"].get<double>(), b["rhs"].get<double>(),
                status.c_str(), b["equality"].get<bool>() ? "yes" : "no");
  }
  std::printf("\nall satisfied: %s   (* = sup over quadrature nodes of an atomless mesh)\n",
              report["all_satisfied"].get<bool>() ? "yes" : "no");
}

int run_analyze(const std::string& frame_path, const std::string& builtin_spec,
                const std::string& orders_csv, const std::string& ps_csv,
                const std::string& rs_csv, const std::string& out_path,
                const std::string& gram_path) {
  std::vector<int> orders;
  std::vector<double> ps;
  std::vector<double> rs;
  try {
    orders = parse_int_list(orders_csv);
    ps = ps_csv.empty() ? std::vector<double>{} : parse_double_list(ps_csv);
    rs = rs_csv.empty() ? std::vector<double>{} : parse_double_list(rs_csv);
  } catch (const std::exception&) {
    return fail(kExitUsage, "bad --orders/--ps/--rs list");
  }
  for (int m : orders)
    if (m < 1) return fail(kExitUsage, "--orders entries must be >= 1");
  for (double p : ps)
    if (!(p > 2.0)) return fail(kExitUsage, "--ps entries must be > 2");
  for (double r : rs)
    if (!(r > 0.0)) return fail(kExitUsage, "--rs entries must be > 0");

  FrameGuard frame;
  if (const int code = acquire_frame(frame_path, builtin_spec, frame)) return code;

  cwelch_analysis_options opts{};
  opts.orders = orders.data();
  opts.n_orders = static_cast<int>(orders.size());
  opts.ps = ps.data();
  opts.n_ps = static_cast<int>(ps.size());
  opts.rs = rs.data();
  opts.n_rs = static_cast<int>(rs.size());
  opts.include_matrix = 1;

  StringGuard out;
  const cwelch_status st = cwelch_analyze(frame.value, &opts, &out.value);
  if (st != CWELCH_OK) return fail(map_status(st), cwelch_last_error());
  const json report = json::parse(out.value);
  print_analysis(report);

  if (!out_path.empty() && !write_file(out_path, std::string(out.value) + "\n"))
    return fail(kExitBadInput, "cannot write " + out_path);
  if (!gram_path.empty()) {
    StringGuard csv;
    const cwelch_status gst = cwelch_gram_csv(frame.value, &csv.value);
    if (gst != CWELCH_OK) return fail(map_status(gst), cwelch_last_error());
    if (!write_file(gram_path, csv.value)) return fail(kExitBadInput, "cannot write " + gram_path);
  }
  return report["all_satisfied"].get<bool>() ? kExitOk : kExitViolation;
}

// ---- optimize ------------------------------------------------------------

int run_optimize(int n, int d, const std::string& field, const std::string& objective, int m,
                 unsigned long long seed, int restarts, long long iters, double step, double tol,
                 int jobs, const std::string& out_path, const std::string& report_path) {
  if (field != "R" && field != "C") return fail(kExitUsage, "--field must be R or C");
  if (objective != "coherence" && objective != "potential")
    return fail(kExitUsage, "--objective must be coherence or potential");
  if (n < 1 || d < 1 || n < d) return fail(kExitUsage, "requires n >= d >= 1");
  if (m < 1) return fail(kExitUsage, "--m must be >= 1");
  if (restarts < 1) return fail(kExitUsage, "--restarts must be >= 1");
  if (iters < 1) return fail(kExitUsage, "--iters must be >= 1");

  cwelch_optimize_options opts{};
  opts.n = n;
  opts.d = d;
  opts.field = field[0];
  opts.objective = objective.c_str();
  opts.m = m;
  opts.seed = seed;
  opts.restarts = restarts;
  opts.max_iters = iters;
  opts.step = step;
  opts.tol = tol;
  opts.jobs = jobs > 0 ? jobs : default_jobs();

  StringGuard out;
  FrameGuard best;
  const cwelch_status st = cwelch_optimize(&opts, &out.value, &best.value);
  if (st != CWELCH_OK) return fail(map_status(st), cwelch_last_error());

  const json report = json::parse(out.value);
  std::printf("objective: %s (m = %d), n = %d, d = %d, field = %s, seed = %llu\n",
              objective.c_str(), m, n, d, field.c_str(), seed);
  std::printf("achieved: %.16g\n", report["achieved"].get<double>());
  std::printf("certificate: %.16g (%s)\n", report["certificate"]["value"].get<double>(),
              report["certificate"]["source"].get<std::string>().c_str());
  std::printf("gap: %.16g\n", report["gap"].get<double>());
  std::printf("equiangular: %s, tight: %s\n", report["equiangular"].get<bool>() ? "yes" : "no",
              report["tight"].get<bool>() ? "yes" : "no");
  std::printf("iterations per restart:");
  for (const json& it : report["iterations_used"]) std::printf(" %lld", it.get<long long>());
  std::printf("\n");

  if (!report_path.empty() && !write_file(report_path, std::string(out.value) + "\n"))
    return fail(kExitBadInput, "cannot write " + report_path);
  if (!out_path.empty()) {
    const cwelch_status sst = cwelch_frame_save(best.value, out_path.c_str());
    if (sst != CWELCH_OK) return fail(map_status(sst), cwelch_last_error());
  }
  return kExitOk;
}

// ---- circle-check ---------------------------------------------------------
// Evaluates the analytic circle family (cos a, sin a) on [0, 2pi] and checks
// the four closed-form facts about it: frame operator pi*I, frame potential
// 2*pi^2, equality in the first-order integral bound, and sup coherence
// against the 0.5 sup lower bound.

int run_circle_check(long long nodes) {
  constexpr double kPi = 3.14159265358979323846;
  if (nodes < 3) return fail(kExitUsage, "--nodes must be >= 3");

  FrameGuard frame;
  const std::string spec = "cos_sin:" + std::to_string(nodes);
  cwelch_status st = cwelch_frame_builtin(spec.c_str(), &frame.value);
  if (st != CWELCH_OK) return fail(map_status(st), cwelch_last_error());

  const int orders[] = {1};
  cwelch_analysis_options opts{};
  opts.orders = orders;
  opts.n_orders = 1;
  opts.ps = nullptr;
  opts.rs = nullptr;
  opts.include_matrix = 1;
  StringGuard out;
  st = cwelch_analyze(frame.value, &opts, &out.value);
  if (st != CWELCH_OK) return fail(map_status(st), cwelch_last_error());
  const json report = json::parse(out.value);

  bool all_ok = true;
  auto verdict = [&](bool ok) {
    all_ok = all_ok && ok;
    return ok ? "pass" : "FAIL";
  };

  // |S - pi I|_F / |pi I|_F
  double resid_sq = 0.0;
  const json& matrix = report["frame_operator"]["matrix"];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double re = matrix[i][j][0].get<double>() - (i == j ? kPi : 0.0);
      const double im = matrix[i][j][1].get<double>();
      resid_sq += re * re + im * im;
    }
  const double op_rel = std::sqrt(resid_sq) / (kPi * std::sqrt(2.0));
  std::printf("frame operator ~ pi*I     : relative Frobenius error %.3e  [%s, tol 1e-6]\n",
              op_rel, verdict(op_rel <= 1e-6));

  const double fp = report["metrics"]["frame_potential"].get<double>();
  const double fp_rel = std::abs(fp - 2.0 * kPi * kPi) / (2.0 * kPi * kPi);
  std::printf("frame potential ~ 2*pi^2  : %.16g, relative error %.3e  [%s, tol 1e-6]\n", fp,
              fp_rel, verdict(fp_rel <= 1e-6));

  bool equality = false;
  double sup_rhs = 0.0;
  bool have_sup = false;
  for (const json& b : report["bounds"]) {
    if (b["id"] == "welch_integral" && b["order"].get<double>() == 1.0)
      equality = b["applicable"].get<bool>() && b["equality"].get<bool>();
    if (b["id"] == "welch_sup" && b["order"].get<double>() == 1.0 && b["applicable"].get<bool>()) {
      sup_rhs = b["rhs"].get<double>();
      have_sup = true;
    }
  }
  std::printf("integral bound equality   : %s  [%s]\n", equality ? "yes" : "no",
              verdict(equality));

  const double coh = report["metrics"]["coherence"].get<double>();
  const bool sup_ok = have_sup && coh >= 0.999 && sup_rhs == 0.5 &&
                      coh * coh >= sup_rhs;
  std::printf("sup coherence             : %.16g >= 0.999 vs sup bound %.16g  [%s]\n", coh,
              sup_rhs, verdict(sup_ok));

  return all_ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame analysis, Welch-type bounds, and low-coherence search"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "discrete Welch and packing bound table");
  int b_n = 0, b_d = 0;
  std::string b_field = "C", b_orders = "1,2,3", b_ps, b_json;
  bounds->add_option("--n", b_n, "number of vectors")->required();
  bounds->add_option("--d", b_d, "dimension")->required();
  bounds->add_option("--field", b_field, "R or C");
  bounds->add_option("--orders", b_orders, "comma separated Welch orders");
  bounds->add_option("--ps", b_ps, "comma separated p exponents (> 2)");
  bounds->add_option("--json", b_json, "write the table as JSON to this path");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "evaluate metrics and every bound for a frame");
  std::string a_frame, a_builtin, a_orders = "1,2,3", a_ps = "4", a_rs = "2", a_out, a_gram;
  analyze->add_option("--frame", a_frame, "frame file (JSON)");
  analyze->add_option("--builtin", a_builtin, "builtin spec, e.g. cos_sin:513 or onb:3");
  analyze->add_option("--orders", a_orders, "comma separated Welch orders");
  analyze->add_option("--ps", a_ps, "comma separated p exponents (> 2); empty disables");
  analyze->add_option("--rs", a_rs, "comma separated trace powers (> 0); empty disables");
  analyze->add_option("--out", a_out, "write the JSON report to this path");
  analyze->add_option("--dump-gram", a_gram, "write Gram magnitude CSV to this path");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "search for low-coherence/low-potential frames");
  int o_n = 0, o_d = 0, o_m = 1, o_restarts = 4, o_jobs = 0;
  long long o_iters = 20000;
  unsigned long long o_seed = 0;
  double o_step = 0.1, o_tol = 1e-10;
  std::string o_field = "C", o_objective = "coherence", o_out, o_report;
  optimize->add_option("--n", o_n, "number of vectors")->required();
  optimize->add_option("--d", o_d, "dimension")->required();
  optimize->add_option("--field", o_field, "R or C");
  optimize->add_option("--objective", o_objective, "coherence or potential");
  optimize->add_option("--m", o_m, "potential order");
  optimize->add_option("--seed", o_seed, "PRNG seed");
  optimize->add_option("--restarts", o_restarts, "independent restarts");
  optimize->add_option("--iters", o_iters, "max gradient steps per restart");
  optimize->add_option("--step", o_step, "initial step size");
  optimize->add_option("--tol", o_tol, "stagnation tolerance");
  optimize->add_option("--jobs", o_jobs, "parallel restarts (default $CWELCH_JOBS or 1)");
  optimize->add_option("--out", o_out, "write the best frame to this path");
  optimize->add_option("--report", o_report, "write the run report JSON to this path");

  // circle-check
  auto* circle = app.add_subcommand("circle-check",
                                    "verify the analytic circle family against closed forms");
  long long c_nodes = 513;
  circle->add_option("--nodes", c_nodes, "quadrature nodes on [0, 2pi]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (bounds->parsed()) return run_bounds(b_n, b_d, b_field, b_orders, b_ps, b_json);
    if (analyze->parsed())
      return run_analyze(a_frame, a_builtin, a_orders, a_ps, a_rs, a_out, a_gram);
    if (optimize->parsed())
      return run_optimize(o_n, o_d, o_field, o_objective, o_m, o_seed, o_restarts, o_iters,
                          o_step, o_tol, o_jobs, o_out, o_report);
    if (circle->parsed()) return run_circle_check(c_nodes);
  } catch (const std::exception& e) {
    return fail(kExitInternal, e.what());
  }
  return kExitUsage;
}
