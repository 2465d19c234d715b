#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "iqp/document.hpp"
#include "oracles.hpp"

namespace support {

inline std::string fixture_path(const std::string& name) { return std::string(IQP_FIXTURES) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json fixture_json(const std::string& name) { return nlohmann::json::parse(read_file(fixture_path(name))); }
inline iqp::IQP fixture(const std::string& name) { return iqp::parse_iqp(read_file(fixture_path(name))); }

inline iqp::ArrowIndex arrow(const iqp::IQP& x, const std::string& id) { return x.quiver().arrow_index(id); }
inline iqp::VertexIndex vertex(const iqp::IQP& x, const std::string& id) { return x.quiver().vertex_index(id); }

inline oracle::Poly poly(const iqp::PathSeries& s) { return oracle::poly_of(iqp::series_json(s)); }
inline oracle::Poly poly(const iqp::Potential& w) {
  oracle::Poly p;
  for (const auto& [word, c] : w.terms()) {
    oracle::Word ids;
    for (auto a : word) ids.push_back(w.quiver().arrow(a).id);
    p[ids] += c;
  }
  return p;
}

/// Potential given as (coefficient, ids) pairs, in the oracle representation.
inline oracle::Poly terms(std::initializer_list<std::pair<int, oracle::Word>> list) {
  oracle::Poly p;
  for (const auto& [c, w] : list) p[w] += c;
  oracle::clean(p);
  return p;
}

}  // namespace support
