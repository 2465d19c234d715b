#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iqp {

using VertexId = std::string;
using ArrowId = std::string;
using VertexIndex = std::uint32_t;
using ArrowIndex = std::uint32_t;

struct ArrowSpec {
  ArrowId id;
  VertexId source;
  VertexId target;
};

struct Arrow {
  ArrowId id;
  VertexIndex source;
  VertexIndex target;

  bool operator==(const Arrow&) const = default;
};

/// Finite quiver with opaque string ids. Vertices and arrows are stored in
/// lexicographic id order, so indices compare the same way ids do.
class Quiver {
 public:
  Quiver() = default;

  /// Throws Error(Malformed) on duplicate ids or dangling arrow endpoints.
  Quiver(std::vector<VertexId> vertices, std::vector<ArrowSpec> arrows);

  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const Arrow> arrows() const { return arrows_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  const VertexId& vertex_id(VertexIndex v) const { return vertices_.at(v); }
  const Arrow& arrow(ArrowIndex a) const { return arrows_.at(a); }
  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<ArrowIndex> find_arrow(std::string_view id) const;
  VertexIndex vertex_index(std::string_view id) const;  // throws Malformed
  ArrowIndex arrow_index(std::string_view id) const;    // throws Malformed

  std::span<const ArrowIndex> arrows_out(VertexIndex v) const { return out_.at(v); }
  std::span<const ArrowIndex> arrows_in(VertexIndex v) const { return in_.at(v); }

  bool operator==(const Quiver& other) const {
    return vertices_ == other.vertices_ && arrows_ == other.arrows_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowIndex>> out_;
  std::vector<std::vector<ArrowIndex>> in_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

/// Pointer-equal or structurally equal.
bool same_quiver(const QuiverPtr& a, const QuiverPtr& b);

/// A quiver with a distinguished frozen subquiver. The subquiver condition
/// (frozen arrows have frozen endpoints) is not enforced on construction; see
/// validate_ice_quiver / require_valid.
class IceQuiver {
 public:
  IceQuiver() : quiver_(std::make_shared<Quiver>()) {}
  IceQuiver(QuiverPtr quiver, const std::set<VertexId>& frozen_vertices,
            const std::set<ArrowId>& frozen_arrows);
  IceQuiver(QuiverPtr quiver, std::vector<bool> frozen_vertices, std::vector<bool> frozen_arrows);

  const Quiver& quiver() const { return *quiver_; }
  const QuiverPtr& quiver_ptr() const { return quiver_; }

  bool is_frozen_vertex(VertexIndex v) const { return frozen_vertex_.at(v); }
  bool is_frozen_arrow(ArrowIndex a) const { return frozen_arrow_.at(a); }
  const std::vector<bool>& frozen_vertex_mask() const { return frozen_vertex_; }
  const std::vector<bool>& frozen_arrow_mask() const { return frozen_arrow_; }

  std::vector<VertexIndex> frozen_vertices() const;
  std::vector<VertexIndex> unfrozen_vertices() const;
  std::vector<ArrowIndex> frozen_arrows() const;
  std::vector<ArrowIndex> unfrozen_arrows() const;

  /// The frozen subquiver F as a standalone quiver (ids preserved).
  Quiver frozen_subquiver() const;

  bool operator==(const IceQuiver& other) const {
    return same_quiver(quiver_, other.quiver_) && frozen_vertex_ == other.frozen_vertex_ &&
           frozen_arrow_ == other.frozen_arrow_;
  }

 private:
  QuiverPtr quiver_;
  std::vector<bool> frozen_vertex_;
  std::vector<bool> frozen_arrow_;
};

/// Graded quiver: every arrow carries a degree <= 0.
struct GradedQuiver {
  QuiverPtr quiver;
  std::vector<int> degree;  // indexed by ArrowIndex

  GradedQuiver() : quiver(std::make_shared<Quiver>()) {}
  GradedQuiver(QuiverPtr q, std::vector<int> degrees);  // throws Malformed on degree > 0
};

// ---------------------------------------------------------------------------
// Validation and mutability

struct TwoCycle {
  ArrowId first;   // lexicographically smaller id
  ArrowId second;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<VertexId> loops;  // vertices carrying at least one loop
  std::map<VertexId, std::vector<TwoCycle>> two_cycles;  // per incident vertex

  bool valid() const { return violations.empty(); }
};

ValidationReport validate_ice_quiver(const IceQuiver& iq);

/// Throws Error(Malformed) naming the first violation.
void require_valid(const IceQuiver& iq);

enum class Mutability { UnfrozenMutable, FrozenSource, FrozenSink, NotMutable };

struct MutabilityStatus {
  Mutability kind = Mutability::NotMutable;
  std::string reason;  // set for NotMutable

  bool mutable_here() const { return kind != Mutability::NotMutable; }
};

const char* to_string(Mutability m) noexcept;

/// Throws Error(Malformed) for an unknown vertex id.
MutabilityStatus check_mutable(const IceQuiver& iq, std::string_view vertex);
MutabilityStatus check_mutable(const IceQuiver& iq, VertexIndex vertex);

// ---------------------------------------------------------------------------
// Isomorphism

struct Isomorphism {
  std::map<VertexId, VertexId> vertices;  // a -> b
  std::map<ArrowId, ArrowId> arrows;      // a -> b
};

/// Exact backtracking search for a bijection preserving incidence and frozen
/// status. Intended for small quivers (|Q0| <= 20).
std::optional<Isomorphism> ice_quiver_isomorphic(const IceQuiver& a, const IceQuiver& b);

/// Graphviz export; frozen vertices boxed, frozen arrows dashed blue.
std::string to_dot(const IceQuiver& iq);

}  // namespace iqp
