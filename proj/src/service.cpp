#include "iqp/service.hpp"

#include <httplib.h>

#include "iqp/ginzburg.hpp"
#include "iqp/quotient.hpp"

namespace iqp {

Json invariants_json(const IQP& iqp, int truncation) {
  check_truncation(truncation);
  IQP at_n = with_truncation(iqp, truncation);
  TruncatedQuotient jac(iqp.quiver_ptr(), jacobian_relations(at_n), truncation);
  auto boundary = corner_dims(jac, iqp.ice.frozen_vertices());
  auto gamma = build_relative_ginzburg(iqp, truncation);
  auto pi2 = build_pi2(iqp.ice, truncation);
  bool d2 = check_d_squared(gamma.dga).ok && check_d_squared(pi2.dga).ok;
  return {{"jacobian_dims", jac.dims()}, {"boundary_dims", boundary}, {"d2_ok", d2}};
}

MutationResult mutate_sequence(const IQP& iqp, const std::vector<VertexId>& vertices, bool canonical) {
  MutationResult out{iqp, {Mutability::UnfrozenMutable, {}}, {}, std::nullopt, {}};
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto& v = vertices[k];
    auto status = check_mutable(out.iqp.ice, v);
    if (!status.mutable_here()) {
      out.status = status;
      out.failed_step = k;
      out.failed_vertex = v;
      return out;
    }
    Mutation m = mutate_traced(out.iqp, v);
    out.iqp = std::move(m.iqp);
    out.status = m.status;
    out.trace = std::move(m.trace);
  }
  if (canonical) out.iqp = canonical_relabel(out.iqp);
  return out;
}

std::string not_mutable_message(const MutationResult& r) {
  return "vertex '" + r.failed_vertex + "' is not mutable: " + r.status.reason;
}

Json mutation_json(const MutationResult& r) {
  return Json{{"iqp", encode_iqp(r.iqp)}, {"mutability", mutability_json(r.status)}, {"trace", trace_json(r.trace)}};
}

Json error_json(ErrorKind kind, const std::string& message) {
  return {{"error", to_string(kind)}, {"message", message}};
}

Json error_json(const Error& e) { return error_json(e.kind(), e.what()); }

namespace {

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Malformed:
      return 400;
    case ErrorKind::Unsupported:
    case ErrorKind::Limit:
      return 422;
    case ErrorKind::Internal:
      return 500;
  }
  return 500;
}

template <typename F>
Response guarded_response(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return Response{http_status(e.kind()), error_json(e).dump()};
  } catch (const Json::exception& e) {
    return Response{400, error_json(ErrorKind::Malformed, e.what()).dump()};
  } catch (const std::exception& e) {
    return Response{500, error_json(ErrorKind::Internal, e.what()).dump()};
  }
}

template <typename F>
Response guarded(F&& body) {
  return guarded_response([&] { return Response{200, body().dump()}; });
}

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object()) fail(ErrorKind::Malformed, "request body must be a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Malformed, std::string("missing field '") + key + "'");
  return *it;
}

}  // namespace

Response handle_mutate(std::string_view body) {
  return guarded_response([&] {
    Json request = parse_json(body);
    IQP iqp = decode_iqp(require(request, "iqp"));
    std::vector<VertexId> vertices;
    const Json& v = require(request, "vertex");
    if (v.is_string()) {
      vertices.push_back(v.get<std::string>());
    } else if (v.is_array() && !v.empty()) {
      for (const auto& x : v) {
        if (!x.is_string()) fail(ErrorKind::Malformed, "vertex ids must be strings");
        vertices.push_back(x.get<std::string>());
      }
    } else {
      fail(ErrorKind::Malformed, "field 'vertex' must be a vertex id or a list of ids");
    }
    bool canonical = true;
    if (auto it = request.find("canonical"); it != request.end()) {
      if (!it->is_boolean()) fail(ErrorKind::Malformed, "field 'canonical' must be a boolean");
      canonical = it->get<bool>();
    }
    auto result = mutate_sequence(iqp, vertices, canonical);
    if (result.failed_step) {
      Json err = error_json(ErrorKind::Unsupported, not_mutable_message(result));
      err["mutability"] = mutability_json(result.status);
      err["step"] = *result.failed_step;
      return Response{422, err.dump()};
    }
    return Response{200, mutation_json(result).dump()};
  });
}

Response handle_invariants(std::string_view body) {
  return guarded([&] {
    Json request = parse_json(body);
    IQP iqp = decode_iqp(require(request, "iqp"));
    int n = kDefaultTruncation;
    if (auto it = request.find("N"); it != request.end()) {
      if (!it->is_number_integer()) fail(ErrorKind::Malformed, "field 'N' must be an integer");
      n = it->get<int>();
    }
    return invariants_json(iqp, n);
  });
}

Response handle_iso(std::string_view body) {
  return guarded([&] {
    Json request = parse_json(body);
    IQP a = decode_iqp(require(request, "a"));
    IQP b = decode_iqp(require(request, "b"));
    return isomorphism_json(ice_quiver_isomorphic(a.ice, b.ice));
  });
}

Response handle_health() { return Response{200, Json{{"status", "ok"}}.dump()}; }

bool serve(const std::string& host, int port) {
  httplib::Server server;
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get("/health", [&](const httplib::Request&, httplib::Response& res) { reply(res, handle_health()); });
  server.Post("/mutate",
              [&](const httplib::Request& req, httplib::Response& res) { reply(res, handle_mutate(req.body)); });
  server.Post("/invariants",
              [&](const httplib::Request& req, httplib::Response& res) { reply(res, handle_invariants(req.body)); });
  server.Post("/iso", [&](const httplib::Request& req, httplib::Response& res) { reply(res, handle_iso(req.body)); });
  return server.listen(host, port);
}

}  // namespace iqp
