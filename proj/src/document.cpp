#include "iqp/document.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "iqp/error.hpp"
#include "iqp/quotient.hpp"

namespace iqp {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Malformed, std::string("invalid JSON: ") + e.what());
  }
}

namespace {

const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Malformed, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_string()) fail(ErrorKind::Malformed, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool bool_field(const Json& obj, const char* key, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) fail(ErrorKind::Malformed, std::string("field '") + key + "' must be a boolean");
  return it->get<bool>();
}

const Json& array_field(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_array()) fail(ErrorKind::Malformed, std::string("field '") + key + "' must be an array");
  return v;
}

}  // namespace

IceQuiver decode_ice_quiver(const Json& doc) {
  if (!doc.is_object()) fail(ErrorKind::Malformed, "document must be a JSON object");
  const Json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kDocumentVersion) {
    fail(ErrorKind::Malformed, "unsupported document version");
  }
  std::vector<VertexId> vertices;
  std::set<VertexId> frozen_vertices;
  for (const auto& v : array_field(doc, "vertices")) {
    if (!v.is_object()) fail(ErrorKind::Malformed, "vertex entries must be objects");
    std::string id = string_field(v, "id");
    if (bool_field(v, "frozen", false)) frozen_vertices.insert(id);
    vertices.push_back(std::move(id));
  }
  std::vector<ArrowSpec> arrows;
  std::set<ArrowId> frozen_arrows;
  for (const auto& a : array_field(doc, "arrows")) {
    if (!a.is_object()) fail(ErrorKind::Malformed, "arrow entries must be objects");
    ArrowSpec spec{string_field(a, "id"), string_field(a, "source"), string_field(a, "target")};
    if (bool_field(a, "frozen", false)) frozen_arrows.insert(spec.id);
    arrows.push_back(std::move(spec));
  }
  auto q = std::make_shared<const Quiver>(std::move(vertices), std::move(arrows));
  return IceQuiver(q, frozen_vertices, frozen_arrows);
}

IQP decode_iqp(const Json& doc) {
  IceQuiver iq = decode_ice_quiver(doc);
  require_valid(iq);
  const QuiverPtr& q = iq.quiver_ptr();
  int truncation = kDefaultTruncation;
  if (auto it = doc.find("truncation"); it != doc.end() && !it->is_null()) {
    if (!it->is_number_integer()) fail(ErrorKind::Malformed, "field 'truncation' must be an integer");
    truncation = it->get<int>();
    if (truncation < 2) fail(ErrorKind::Malformed, "truncation must be at least 2");
    check_truncation(truncation);
  }

  Potential w(q, truncation);
  if (auto it = doc.find("potential"); it != doc.end()) {
    if (!it->is_array()) fail(ErrorKind::Malformed, "field 'potential' must be an array");
    for (const auto& term : *it) {
      if (!term.is_object()) fail(ErrorKind::Malformed, "potential terms must be objects");
      Rational c = parse_rational(string_field(term, "coeff"));
      std::vector<ArrowIndex> cycle;
      for (const auto& id : array_field(term, "cycle")) {
        if (!id.is_string()) fail(ErrorKind::Malformed, "cycle entries must be arrow ids");
        cycle.push_back(q->arrow_index(id.get<std::string>()));
      }
      w.add_cycle(cycle, c);
    }
  }
  return IQP(std::move(iq), std::move(w));
}

IQP parse_iqp(std::string_view text) { return decode_iqp(parse_json(text)); }

Json encode_iqp(const IQP& iqp) {
  const Quiver& q = iqp.quiver();
  Json doc = Json::object();
  doc["version"] = kDocumentVersion;
  Json vertices = Json::array();
  for (VertexIndex v = 0; v < q.vertex_count(); ++v) {
    vertices.push_back({{"id", q.vertex_id(v)}, {"frozen", iqp.ice.is_frozen_vertex(v)}});
  }
  doc["vertices"] = std::move(vertices);
  Json arrows = Json::array();
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    arrows.push_back({{"id", arr.id},
                      {"source", q.vertex_id(arr.source)},
                      {"target", q.vertex_id(arr.target)},
                      {"frozen", iqp.ice.is_frozen_arrow(a)}});
  }
  doc["arrows"] = std::move(arrows);
  Json potential = Json::array();
  for (const auto& [word, c] : iqp.potential.terms()) {
    Json cycle = Json::array();
    for (auto a : word) cycle.push_back(q.arrow(a).id);
    potential.push_back({{"coeff", format_rational(c)}, {"cycle", std::move(cycle)}});
  }
  doc["potential"] = std::move(potential);
  doc["truncation"] = iqp.truncation();
  return doc;
}

std::string dump_iqp(const IQP& iqp) { return encode_iqp(iqp).dump(); }

IQP canonical_relabel(const IQP& iqp) {
  const Quiver& q = iqp.quiver();
  const std::size_t n = q.vertex_count();
  std::vector<long> order(n, -1);
  long next = 0;
  for (VertexIndex start = 0; start < n; ++start) {
    if (order[start] >= 0) continue;
    std::deque<VertexIndex> queue{start};
    order[start] = next++;
    while (!queue.empty()) {
      VertexIndex v = queue.front();
      queue.pop_front();
      std::vector<std::pair<ArrowId, VertexIndex>> nbrs;
      for (auto a : q.arrows_out(v)) nbrs.emplace_back(q.arrow(a).id, q.arrow(a).target);
      for (auto a : q.arrows_in(v)) nbrs.emplace_back(q.arrow(a).id, q.arrow(a).source);
      std::sort(nbrs.begin(), nbrs.end());
      for (const auto& [id, w] : nbrs) {
        if (order[w] < 0) {
          order[w] = next++;
          queue.push_back(w);
        }
      }
    }
  }
  auto vname = [&](VertexIndex v) { return std::to_string(order[v] + 1); };

  std::vector<ArrowIndex> arrows(q.arrow_count());
  for (ArrowIndex a = 0; a < arrows.size(); ++a) arrows[a] = a;
  std::sort(arrows.begin(), arrows.end(), [&](ArrowIndex x, ArrowIndex y) {
    const Arrow& ax = q.arrow(x);
    const Arrow& ay = q.arrow(y);
    return std::make_tuple(order[ax.source], order[ax.target], iqp.ice.is_frozen_arrow(x), ax.id) <
           std::make_tuple(order[ay.source], order[ay.target], iqp.ice.is_frozen_arrow(y), ay.id);
  });
  std::vector<std::string> aname(q.arrow_count());
  for (std::size_t k = 0; k < arrows.size(); ++k) aname[arrows[k]] = "a" + std::to_string(k + 1);

  std::vector<VertexId> vs;
  std::set<VertexId> fv;
  for (VertexIndex v = 0; v < n; ++v) {
    vs.push_back(vname(v));
    if (iqp.ice.is_frozen_vertex(v)) fv.insert(vname(v));
  }
  std::vector<ArrowSpec> specs;
  std::set<ArrowId> fa;
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    specs.push_back({aname[a], vname(q.arrow(a).source), vname(q.arrow(a).target)});
    if (iqp.ice.is_frozen_arrow(a)) fa.insert(aname[a]);
  }
  auto nq = std::make_shared<const Quiver>(std::move(vs), std::move(specs));
  Potential w(nq, iqp.truncation());
  for (const auto& [word, c] : iqp.potential.terms()) {
    std::vector<ArrowIndex> mapped;
    for (auto a : word) mapped.push_back(nq->arrow_index(aname[a]));
    w.add_cycle(mapped, c);
  }
  return IQP(IceQuiver(nq, fv, fa), std::move(w));
}

// ---------------------------------------------------------------------------

Json series_json(const PathSeries& s) {
  const Quiver& q = s.quiver();
  Json out = Json::array();
  for (const auto& [p, c] : s.terms()) {
    Json path = Json::array();
    for (auto a : p.arrows) path.push_back(q.arrow(a).id);
    Json term = {{"coeff", format_rational(c)}, {"path", std::move(path)}};
    if (p.lazy()) term["vertex"] = q.vertex_id(p.vertex);
    out.push_back(std::move(term));
  }
  return out;
}

Json validation_json(const ValidationReport& r) {
  Json two = Json::object();
  for (const auto& [v, list] : r.two_cycles) {
    Json arr = Json::array();
    for (const auto& c : list) arr.push_back(Json::array({c.first, c.second}));
    two[v] = std::move(arr);
  }
  return {{"valid", r.valid()}, {"violations", r.violations}, {"loops", r.loops}, {"two_cycles", std::move(two)}};
}

Json mutability_json(const MutabilityStatus& s) {
  Json out = {{"kind", to_string(s.kind)}};
  if (!s.mutable_here()) out["reason"] = s.reason;
  return out;
}

Json trace_json(const ReductionTrace& t) {
  Json removed = Json::array();
  for (const auto& [a, b] : t.removed_2cycles) removed.push_back(Json::array({a, b}));
  Json frozen = Json::array();
  for (const auto& [deleted, kept] : t.frozen_replacements) frozen.push_back({{"deleted", deleted}, {"frozen", kept}});
  Json subs = Json::array();
  for (const auto& phi : t.substitutions) {
    Json assignment = Json::object();
    for (const auto& [a, img] : phi.assignment()) assignment[phi.quiver_ptr()->arrow(a).id] = series_json(img);
    subs.push_back(std::move(assignment));
  }
  return {{"removed_2cycles", std::move(removed)}, {"frozen_replacements", std::move(frozen)},
          {"substitutions", std::move(subs)}};
}

Json presentation_json(const DgQuiverAlgebra& dga) {
  const Quiver& q = dga.quiver();
  Json gens = Json::array();
  for (ArrowIndex a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    gens.push_back({{"id", arr.id},
                    {"source", q.vertex_id(arr.source)},
                    {"target", q.vertex_id(arr.target)},
                    {"degree", dga.degree(a)}});
  }
  Json diff = Json::object();
  for (const auto& [a, img] : dga.differentials()) diff[q.arrow(a).id] = series_json(img);
  return {{"generators", std::move(gens)}, {"differential", std::move(diff)}, {"truncation", dga.truncation()}};
}

Json isomorphism_json(const std::optional<Isomorphism>& iso) {
  if (!iso) return {{"isomorphic", false}};
  return {{"isomorphic", true}, {"vertices", iso->vertices}, {"arrows", iso->arrows}};
}

Json dims_json(const std::vector<std::size_t>& dims) { return Json(dims); }

Json profile_json(const ExactnessProfile& p) {
  Json rows = Json::array();
  for (const auto& h : p.homology) rows.push_back(Json::array({h[0], h[1], h[2], h[3]}));
  return {{"homology", std::move(rows)}, {"positions", Json::array({"R", "V*", "V", "JJ"})},
          {"checked_through", p.checked_through}, {"exact", p.exact}};
}

}  // namespace iqp
