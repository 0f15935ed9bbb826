#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"
#include "minkray/hypergraph.hpp"
#include "minkray/norm.hpp"
#include "minkray/progression.hpp"

namespace minkray {

// Insertion-ordered JSON keeps emitted files readable and byte-stable.
using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Accepts JSON numbers or decimal strings.
inline double to_real(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      double out = std::stod(s, &used);
      if (used == s.size()) return out;
    } catch (const std::exception&) {
    }
  }
  throw Error(errc::bad_input, "expected a number or a decimal string, got " + v.dump());
}

inline json vec_to_json(Vec2 v) { return json::array({v.x, v.y}); }

inline Vec2 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error(errc::bad_input, "expected a point as [x, y], got " + j.dump());
  return {to_real(j[0]), to_real(j[1])};
}

inline json norm_to_json(const Norm& n) {
  json j;
  if (n.is_polygonal()) {
    j["type"] = "polygon";
    json verts = json::array();
    for (Vec2 v : n.polygonal().vertices()) verts.push_back(vec_to_json(v));
    j["vertices"] = std::move(verts);
  } else {
    j["type"] = "lp";
    j["p"] = n.lp_exponent();
  }
  return j;
}

inline Norm norm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw Error(errc::bad_input, "norm JSON needs a \"type\" field");
  const std::string type = j["type"].get<std::string>();
  if (type == "lp") {
    if (!j.contains("p")) throw Error(errc::bad_input, "lp norm JSON needs \"p\"");
    return Norm::lp(to_real(j["p"]));
  }
  if (type == "polygon") {
    if (!j.contains("vertices")) throw Error(errc::bad_input, "polygon norm JSON needs \"vertices\"");
    std::vector<Vec2> verts;
    for (const json& v : j["vertices"]) verts.push_back(vec_from_json(v));
    return Norm::polygon(std::move(verts));
  }
  throw Error(errc::bad_input, "unknown norm type '" + type + "'");
}

/// FNV-1a over the canonical serialization; used to pin norms in manifests.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

inline std::string norm_hash(const Norm& n) { return fnv1a_hex(norm_to_json(n).dump()); }

inline json sequence_to_json(double q, bool include_zero, const std::vector<Vec2>& pts) {
  json j;
  j["q"] = q;
  j["include_zero"] = include_zero;
  json arr = json::array();
  for (Vec2 p : pts) arr.push_back(vec_to_json(p));
  j["points"] = std::move(arr);
  return j;
}

struct SequenceFile {
  double q = 0.0;
  bool include_zero = false;
  std::vector<Vec2> pts;
};

inline SequenceFile sequence_from_json(const json& j) {
  SequenceFile s;
  if (!j.contains("q") || !j.contains("points"))
    throw Error(errc::bad_input, "sequence JSON needs \"q\" and \"points\"");
  s.q = to_real(j["q"]);
  s.include_zero = j.value("include_zero", false);
  for (const json& p : j["points"]) s.pts.push_back(vec_from_json(p));
  return s;
}

inline json hypergraph_to_json(const FiniteHypergraph& h) {
  json j;
  j["V"] = h.vertex_count;
  json edges = json::array();
  for (const auto& e : h.edges) edges.push_back(json(e));
  j["edges"] = std::move(edges);
  return j;
}

inline FiniteHypergraph hypergraph_from_json(const json& j) {
  if (!j.contains("V") || !j.contains("edges"))
    throw Error(errc::bad_input, "hypergraph JSON needs \"V\" and \"edges\"");
  std::vector<std::set<int>> edges;
  for (const json& e : j["edges"]) {
    std::set<int> edge;
    for (const json& v : e) edge.insert(v.get<int>());
    edges.push_back(std::move(edge));
  }
  return FiniteHypergraph::make(j["V"].get<int>(), std::move(edges));
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::bad_input, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(errc::bad_input, "malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(errc::bad_input, "cannot write " + path);
  out << text;
}

}  // namespace minkray
