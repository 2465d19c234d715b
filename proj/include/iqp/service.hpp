#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iqp/document.hpp"
#include "iqp/error.hpp"

namespace iqp {

struct Response {
  int status = 200;
  std::string body;
};

/// {jacobian_dims, boundary_dims, d2_ok} at truncation N.
Json invariants_json(const IQP& iqp, int truncation);

struct MutationResult {
  IQP iqp;
  MutabilityStatus status;  // of the last vertex
  ReductionTrace trace;     // of the last step
  std::optional<std::size_t> failed_step;  // set when a vertex is not mutable
  VertexId failed_vertex;
};

/// Mutates at each vertex in turn and optionally relabels the result. Stops
/// at the first non-mutable vertex, leaving the input of that step in `iqp`.
MutationResult mutate_sequence(const IQP& iqp, const std::vector<VertexId>& vertices, bool canonical);
std::string not_mutable_message(const MutationResult& r);
/// {iqp, mutability, trace}
Json mutation_json(const MutationResult& r);

/// One-line machine-readable error body.
Json error_json(const Error& e);
Json error_json(ErrorKind kind, const std::string& message);

// Stateless handlers shared by the HTTP endpoint and the command line.
Response handle_mutate(std::string_view body);
Response handle_invariants(std::string_view body);
Response handle_iso(std::string_view body);
Response handle_health();

/// Blocks serving the endpoint on host:port. Returns false if the socket
/// cannot be bound.
bool serve(const std::string& host, int port);

}  // namespace iqp
