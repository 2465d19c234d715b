#include "iqp/iqp.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "iqp/checks.hpp"
#include "iqp/document.hpp"
#include "iqp/error.hpp"
#include "iqp/random_iqp.hpp"
#include "iqp/service.hpp"

struct iqp_doc {
  iqp::IQP value;
};

namespace {

thread_local std::string last_error;

iqp_status status_of(iqp::ErrorKind kind) {
  switch (kind) {
    case iqp::ErrorKind::Malformed:
      return IQP_MALFORMED;
    case iqp::ErrorKind::Unsupported:
      return IQP_UNSUPPORTED;
    case iqp::ErrorKind::Limit:
      return IQP_LIMIT;
    case iqp::ErrorKind::Internal:
      return IQP_INTERNAL;
  }
  return IQP_INTERNAL;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = copy_string(s);
}

iqp_status record(iqp::ErrorKind kind, const std::string& message) {
  last_error = iqp::error_json(kind, message).dump();
  return status_of(kind);
}

template <typename F>
iqp_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const iqp::Error& e) {
    return record(e.kind(), e.what());
  } catch (const iqp::Json::exception& e) {
    return record(iqp::ErrorKind::Malformed, e.what());
  } catch (const std::exception& e) {
    return record(iqp::ErrorKind::Internal, e.what());
  }
}

const iqp::IQP& deref(const iqp_doc* doc) {
  if (!doc) iqp::fail(iqp::ErrorKind::Malformed, "null document handle");
  return doc->value;
}

void require_out(const void* p) {
  if (!p) iqp::fail(iqp::ErrorKind::Malformed, "null output pointer");
}

std::string text_or_empty(const char* s, const char* what) {
  if (!s) iqp::fail(iqp::ErrorKind::Malformed, std::string("null ") + what);
  return s;
}

}  // namespace

extern "C" {

const char* iqp_version(void) { return "0.1.0"; }

const char* iqp_last_error(void) { return last_error.c_str(); }

void iqp_free(iqp_doc* doc) { delete doc; }

void iqp_string_free(char* s) { std::free(s); }

iqp_status iqp_parse(const char* json, iqp_doc** out) {
  return guarded([&] {
    require_out(out);
    *out = new iqp_doc{iqp::parse_iqp(text_or_empty(json, "input"))};
    return IQP_OK;
  });
}

iqp_status iqp_dump(const iqp_doc* doc, char** out_json) {
  return guarded([&] {
    require_out(out_json);
    *out_json = copy_string(iqp::dump_iqp(deref(doc)));
    return IQP_OK;
  });
}

int iqp_truncation(const iqp_doc* doc) { return doc ? doc->value.truncation() : 0; }

iqp_status iqp_with_truncation(const iqp_doc* doc, int truncation, iqp_doc** out) {
  return guarded([&] {
    require_out(out);
    iqp::check_truncation(truncation);
    *out = new iqp_doc{iqp::with_truncation(deref(doc), truncation)};
    return IQP_OK;
  });
}

iqp_status iqp_validate(const char* json, char** out_report) {
  return guarded([&] {
    auto doc = iqp::parse_json(text_or_empty(json, "input"));
    auto report = iqp::validate_ice_quiver(iqp::decode_ice_quiver(doc));
    iqp::Json out = iqp::validation_json(report);
    if (report.valid()) iqp::decode_iqp(doc);
    put(out_report, out.dump());
    return report.valid() ? IQP_OK : IQP_CHECK_FAILED;
  });
}

iqp_status iqp_mutability(const iqp_doc* doc, const char* vertex, char** out_json) {
  return guarded([&] {
    require_out(out_json);
    auto status = iqp::check_mutable(deref(doc).ice, text_or_empty(vertex, "vertex"));
    *out_json = copy_string(iqp::mutability_json(status).dump());
    return IQP_OK;
  });
}

iqp_status iqp_mutate(const iqp_doc* doc, const char* const* vertices, size_t count, int canonical, iqp_doc** out,
                      char** out_json) {
  return guarded([&] {
    if (count == 0 || !vertices) iqp::fail(iqp::ErrorKind::Malformed, "no vertex given");
    std::vector<iqp::VertexId> vs;
    for (size_t k = 0; k < count; ++k) vs.push_back(text_or_empty(vertices[k], "vertex"));
    auto result = iqp::mutate_sequence(deref(doc), vs, canonical != 0);
    if (result.failed_step) {
      iqp::Json err = iqp::error_json(iqp::ErrorKind::Unsupported, iqp::not_mutable_message(result));
      err["mutability"] = iqp::mutability_json(result.status);
      err["step"] = *result.failed_step;
      last_error = err.dump();
      return IQP_UNSUPPORTED;
    }
    put(out_json, iqp::mutation_json(result).dump());
    if (out) *out = new iqp_doc{std::move(result.iqp)};
    return IQP_OK;
  });
}

iqp_status iqp_premutate(const iqp_doc* doc, const char* vertex, iqp_doc** out) {
  return guarded([&] {
    require_out(out);
    *out = new iqp_doc{iqp::premutate(deref(doc), text_or_empty(vertex, "vertex"))};
    return IQP_OK;
  });
}

iqp_status iqp_reduce(const iqp_doc* doc, iqp_doc** out, char** out_trace) {
  return guarded([&] {
    require_out(out);
    auto r = iqp::reduce(deref(doc));
    put(out_trace, iqp::trace_json(r.trace).dump());
    *out = new iqp_doc{std::move(r.iqp)};
    return IQP_OK;
  });
}

iqp_status iqp_canonical(const iqp_doc* doc, iqp_doc** out) {
  return guarded([&] {
    require_out(out);
    *out = new iqp_doc{iqp::canonical_relabel(deref(doc))};
    return IQP_OK;
  });
}

iqp_status iqp_ginzburg(const iqp_doc* doc, int truncation, int text, char** out) {
  return guarded([&] {
    require_out(out);
    iqp::check_truncation(truncation);
    auto g = iqp::build_relative_ginzburg(deref(doc), truncation);
    *out = copy_string(text ? iqp::presentation_text(g.dga) : iqp::presentation_json(g.dga).dump());
    return IQP_OK;
  });
}

iqp_status iqp_pi2(const iqp_doc* doc, int truncation, int text, char** out) {
  return guarded([&] {
    require_out(out);
    iqp::check_truncation(truncation);
    auto p = iqp::build_pi2(deref(doc).ice, truncation);
    *out = copy_string(text ? iqp::presentation_text(p.dga) : iqp::presentation_json(p.dga).dump());
    return IQP_OK;
  });
}

iqp_status iqp_check(const iqp_doc* doc, const char* name, int truncation, const char* vertex, char** out_report) {
  return guarded([&] {
    std::optional<iqp::VertexId> v;
    if (vertex) v = vertex;
    auto r = iqp::run_check(deref(doc), text_or_empty(name, "check name"), truncation, v);
    put(out_report, r.report.dump());
    return r.pass ? IQP_OK : IQP_CHECK_FAILED;
  });
}

iqp_status iqp_invariants(const iqp_doc* doc, int truncation, char** out_json) {
  return guarded([&] {
    require_out(out_json);
    *out_json = copy_string(iqp::invariants_json(deref(doc), truncation).dump());
    return IQP_OK;
  });
}

iqp_status iqp_dot(const iqp_doc* doc, char** out) {
  return guarded([&] {
    require_out(out);
    *out = copy_string(iqp::to_dot(deref(doc).ice));
    return IQP_OK;
  });
}

iqp_status iqp_isomorphic(const iqp_doc* a, const iqp_doc* b, char** out_json) {
  return guarded([&] {
    auto iso = iqp::ice_quiver_isomorphic(deref(a).ice, deref(b).ice);
    put(out_json, iqp::isomorphism_json(iso).dump());
    return iso ? IQP_OK : IQP_CHECK_FAILED;
  });
}

iqp_status iqp_random(uint64_t seed, iqp_doc** out, char** out_vertex) {
  return guarded([&] {
    require_out(out);
    auto c = iqp::random_iqp(seed);
    put(out_vertex, c.vertex);
    *out = new iqp_doc{std::move(c.iqp)};
    return IQP_OK;
  });
}

iqp_status iqp_handle(const char* method, const char* path, const char* body, int* http_status, char** out_body) {
  return guarded([&] {
    require_out(http_status);
    require_out(out_body);
    std::string m = text_or_empty(method, "method"), p = text_or_empty(path, "path");
    std::string b = body ? body : "";
    iqp::Response r;
    if (m == "GET" && p == "/health") {
      r = iqp::handle_health();
    } else if (m == "POST" && p == "/mutate") {
      r = iqp::handle_mutate(b);
    } else if (m == "POST" && p == "/invariants") {
      r = iqp::handle_invariants(b);
    } else if (m == "POST" && p == "/iso") {
      r = iqp::handle_iso(b);
    } else {
      r = iqp::Response{404, iqp::error_json(iqp::ErrorKind::Malformed, "no route " + m + " " + p).dump()};
    }
    *http_status = r.status;
    *out_body = copy_string(r.body);
    return IQP_OK;
  });
}

iqp_status iqp_serve(const char* host, int port) {
  return guarded([&] {
    if (!iqp::serve(host ? host : "127.0.0.1", port)) {
      iqp::fail(iqp::ErrorKind::Internal, "cannot listen on port " + std::to_string(port));
    }
    return IQP_OK;
  });
}

}  // extern "C"
