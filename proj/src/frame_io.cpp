#include "cwelch/frame_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cwelch/errors.hpp"

namespace cwelch {

namespace {

double finite_number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("frame file: ") + what + " is not a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string("frame file: non-finite ") + what);
  return x;
}

Complex parse_entry(const nlohmann::json& j, char field) {
  if (j.is_number()) {
    return Complex(finite_number(j, "vector entry"), 0.0);
  }
  if (j.is_array() && j.size() == 2) {
    const double re = finite_number(j[0], "vector entry");
    const double im = finite_number(j[1], "vector entry");
    if (field == 'R' && im != 0.0)
      throw ParseError("frame file: real-field entry has nonzero imaginary part");
    return Complex(re, im);
  }
  throw ParseError("frame file: vector entry must be a number or an [re, im] pair");
}

}  // namespace

SampledFrame parse_frame(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("frame file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("frame file: top level must be an object");
  if (!doc.contains("field") || !doc["field"].is_string())
    throw ParseError("frame file: missing string field 'field'");
  const std::string field_s = doc["field"].get<std::string>();
  if (field_s != "R" && field_s != "C")
    throw ParseError("frame file: 'field' must be \"R\" or \"C\"");
  const char field = field_s[0];
  if (!doc.contains("dim") || !doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() == 0)
    throw ParseError("frame file: 'dim' must be a positive integer");
  const std::size_t dim = doc["dim"].get<std::size_t>();
  if (!doc.contains("atomic") || !doc["atomic"].is_boolean())
    throw ParseError("frame file: missing boolean field 'atomic'");
  const bool atomic = doc["atomic"].get<bool>();
  if (!doc.contains("nodes") || !doc["nodes"].is_array() || doc["nodes"].empty())
    throw ParseError("frame file: 'nodes' must be a non-empty array");

  std::vector<double> weights;
  std::vector<std::vector<Complex>> vectors;
  weights.reserve(doc["nodes"].size());
  vectors.reserve(doc["nodes"].size());
  for (const nlohmann::json& node : doc["nodes"]) {
    if (!node.is_object() || !node.contains("weight") || !node.contains("vector"))
      throw ParseError("frame file: each node needs 'weight' and 'vector'");
    const double w = finite_number(node["weight"], "weight");
    if (!(w > 0.0)) throw ParseError("frame file: weights must be positive");
    weights.push_back(w);
    const nlohmann::json& vec = node["vector"];
    if (!vec.is_array() || vec.size() != dim)
      throw ParseError("frame file: vector length differs from 'dim'");
    std::vector<Complex> v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = parse_entry(vec[k], field);
    vectors.push_back(std::move(v));
  }
  try {
    QuadratureMeasure q(std::move(weights), atomic);
    return SampledFrame::create(field, dim, std::move(q), std::move(vectors));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("frame file: ") + e.what());
  }
}

SampledFrame load_frame(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("frame file: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_frame(buf.str());
}

nlohmann::json frame_to_json(const SampledFrame& f) {
  nlohmann::json doc;
  doc["field"] = std::string(1, f.field());
  doc["dim"] = f.dim();
  doc["atomic"] = f.measure().atomic();
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t a = 0; a < f.size(); ++a) {
    nlohmann::json vec = nlohmann::json::array();
    for (const Complex& z : f.vector(a)) {
      if (f.field() == 'R')
        vec.push_back(z.real());
      else
        vec.push_back(nlohmann::json::array({z.real(), z.imag()}));
    }
    nodes.push_back({{"weight", f.measure().weight(a)}, {"vector", std::move(vec)}});
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

void save_frame(const SampledFrame& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("frame file: cannot write '" + path + "'");
  out << frame_to_json(f).dump(2) << "\n";
}

}  // namespace cwelch
