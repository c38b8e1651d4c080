#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cwelch/frames.hpp"
#include "cwelch/measure.hpp"

namespace cwelch {

/// Relative tolerance for equality detection and satisfaction slack,
/// against max(1, |rhs|).
inline constexpr double kBoundTol = 1e-6;

/// One evaluated inequality, normalized so that satisfaction means
/// lhs >= rhs. `approximate` marks sup-type bounds whose left side is the
/// max over quadrature nodes of an atomless discretization (a mesh proxy
/// that under-approximates the true supremum).
struct BoundReport {
  std::string id;
  double order = 0.0;  // m, p or r as applicable
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  double gap = 0.0;
  bool equality = false;
  bool applicable = true;
  bool approximate = false;
  std::string note;
};

BoundReport make_bound_report(std::string id, double order, double lhs, double rhs);
BoundReport inapplicable_report(std::string id, double order, std::string reason);

/// dim Sym^m of a d-dimensional space: C(d+m-1, m), exact integer.
/// Throws std::range_error above 2^53.
std::uint64_t sym_dim(std::size_t d, std::size_t m);

struct DiscreteWelch {
  double sum_lb = 0.0;        // lower bound on the full double sum
  double max_lb = 0.0;        // lower bound on max_{j != k} |<t_j, t_k>|^{2m}
  bool max_applicable = true; // false when n = 1
};

struct ContinuousWelch {
  double integral_lb = 0.0;   // mu(Omega)^2 / C(d+m-1, m)
  double sup_lb = 0.0;        // (integral_lb - diagonal) / offdiag
  bool sup_applicable = true; // false when offdiag = 0
};

ContinuousWelch welch_continuous(const MassSummary& mass, std::size_t d, std::size_t m);

/// Discrete Welch bounds for n unit vectors, evaluated through the
/// counting-measure instance of welch_continuous so the reduction is
/// bit-for-bit.
DiscreteWelch welch_discrete(std::size_t n, std::size_t d, std::size_t m);

/// Sum-and-sup Welch bounds for families that need not be normalized:
/// RHS built from the norm integral of |tau|^{2m}. Returns the integral-form
/// and sup-form reports.
std::pair<BoundReport, BoundReport> welch_generalized(const SampledFrame& f, std::size_t m);

/// p-th power bound for 2 < p < infinity on a normalized family.
BoundReport p_welch(const SampledFrame& f, double p);

/// Jensen trace-power bound (1/d) Tra(S^r) vs (mu(Omega)/d)^r; the inequality
/// direction flips at r = 1 and the report is arranged so lhs >= rhs always
/// expresses the theorem ("trace_power_lower" for r >= 1, "trace_power_upper"
/// for r < 1).
BoundReport trace_power_bound(const SampledFrame& f, double r);

/// Gerzon bound: d^2 over C, d(d+1)/2 over R.
std::uint64_t gerzon(std::size_t d, char field);

/// Coherence lower bounds on |<.,.>| (not squared) for n unit vectors in
/// field^d. Absent optionals mean the side condition fails.
struct AltBounds {
  std::optional<double> bukh_cox;     // requires n > d
  std::optional<double> orthoplex;    // requires n > gerzon(d)
  std::optional<double> levenstein;   // requires n > gerzon(d)
  std::optional<double> exponential;  // requires d >= 2
};

AltBounds alt_bounds(std::size_t n, std::size_t d, char field);

/// Dual-pair sup bound: main form needs <tau_a, omega_a> constant in a
/// (checked within 1e-8); the corollary form applies without it.
struct DualWelchReport {
  BoundReport main;
  BoundReport corollary;
  bool constant_pairing = false;
  Complex pairing_mean{0.0, 0.0};
};

DualWelchReport dual_welch(const SampledFrame& tau, const SampledFrame& omega);

/// Double integral of |<tau_a, omega_b>|^2 against d = dim(H).
BoundReport dual_dim_check(const SampledFrame& tau, const SampledFrame& omega);

/// LHS quantities of the order-m bounds: full double quadrature sum,
/// the off-diagonal integral per the measure convention (exact exclusion for
/// atoms, full sum for atomless), and the sup over distinct node pairs.
struct LhsSums {
  double full = 0.0;
  double offdiag = 0.0;
  std::optional<double> sup;  // absent for single-node families
};

LhsSums evaluate_lhs(const SampledFrame& f, std::size_t m);

/// Every applicable bound for one frame: order-m Welch (plain for normalized
/// families, generalized otherwise), p-th power bounds, trace-power bounds,
/// and the packing bounds when the frame is a plain unit-vector list.
std::vector<BoundReport> check_all(const SampledFrame& f, const std::vector<int>& orders,
                                   const std::vector<double>& ps, const std::vector<double>& rs);

}  // namespace cwelch
