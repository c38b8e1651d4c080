#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cwelch/frames.hpp"
#include "cwelch/optimizer.hpp"

namespace cwelch {

struct AnalysisOptions {
  std::vector<int> orders = {1, 2, 3};
  std::vector<double> ps = {4.0};
  std::vector<double> rs = {2.0};
  bool include_matrix = true;
};

/// Full machine-readable report: frame digest, frame operator digest, metrics
/// and one entry per bound. Schema documented in the README.
nlohmann::json analyze(const SampledFrame& f, const AnalysisOptions& opts);

/// True when every applicable, non-approximate bound in the report holds.
bool all_bounds_satisfied(const nlohmann::json& report);

/// Plot-ready CSV of the Gram magnitude distribution: i,j,abs_inner per
/// distinct pair.
std::string gram_csv(const SampledFrame& f);

nlohmann::json bounds_table(std::size_t n, std::size_t d, char field,
                            const std::vector<int>& orders, const std::vector<double>& ps = {});

nlohmann::json optimizer_report(const OptimizerConfig& cfg, const OptimizerResult& result);

}  // namespace cwelch
