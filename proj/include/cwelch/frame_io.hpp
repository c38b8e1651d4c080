#pragma once

#include <string>

#include <json.hpp>

#include "cwelch/frames.hpp"

namespace cwelch {

/// Frame file format (UTF-8 JSON):
///   { "field": "C"|"R", "dim": d, "atomic": bool,
///     "nodes": [ { "weight": w, "vector": [[re, im], ...] }, ... ] }
/// Real-field files may abbreviate vector entries to bare reals.
SampledFrame parse_frame(const std::string& text);
SampledFrame load_frame(const std::string& path);

nlohmann::json frame_to_json(const SampledFrame& f);
void save_frame(const SampledFrame& f, const std::string& path);

}  // namespace cwelch
