#include <doctest.h>

#include <random>

#include "iqp/error.hpp"
#include "iqp/random_iqp.hpp"
#include "support.hpp"

using namespace iqp;

namespace {

IceQuiver ice(std::vector<VertexId> vs, std::vector<ArrowSpec> as, std::set<VertexId> fv, std::set<ArrowId> fa) {
  auto q = std::make_shared<const Quiver>(std::move(vs), std::move(as));
  return IceQuiver(q, fv, fa);
}

}  // namespace

TEST_SUITE("quiver") {
  TEST_CASE("duplicate and dangling ids are malformed") {
    CHECK_THROWS_AS(Quiver({"1", "1"}, {}), Error);
    CHECK_THROWS_AS(Quiver({"1"}, {{"a", "1", "2"}}), Error);
    CHECK_THROWS_AS(Quiver({"1", "2"}, {{"a", "1", "2"}, {"a", "2", "1"}}), Error);
  }

  TEST_CASE("frozen arrows need frozen endpoints") {
    auto bad = ice({"1", "2"}, {{"a", "1", "2"}}, {"1"}, {"a"});
    auto report = validate_ice_quiver(bad);
    CHECK_FALSE(report.valid());
    CHECK_THROWS_AS(require_valid(bad), Error);
  }

  TEST_CASE("validation lists loops and 2-cycles") {
    auto x = ice({"1", "2"}, {{"l", "1", "1"}, {"p", "1", "2"}, {"q", "2", "1"}}, {}, {});
    auto report = validate_ice_quiver(x);
    CHECK(report.valid());
    CHECK(report.loops == std::vector<VertexId>{"1"});
    CHECK(report.two_cycles.at("2").size() == 1);
  }

  TEST_CASE("mutability classification") {
    auto t = support::fixture("triangle.json");
    CHECK(check_mutable(t.ice, "2").kind == Mutability::UnfrozenMutable);
    // vertex 1 has the frozen arrow gamma in and the unfrozen alpha out
    CHECK(check_mutable(t.ice, "1").kind == Mutability::FrozenSink);
    auto f = support::fixture("five.json");
    CHECK(check_mutable(f.ice, "3").kind == Mutability::FrozenSource);
    CHECK(check_mutable(f.ice, "5").kind == Mutability::UnfrozenMutable);
    CHECK(check_mutable(f.ice, "1").kind == Mutability::FrozenSink);
    CHECK(check_mutable(f.ice, "2").kind == Mutability::FrozenSource);
    auto l = support::fixture("loop.json");
    auto s = check_mutable(l.ice, "1");
    CHECK(s.kind == Mutability::NotMutable);
    CHECK(s.reason == "loop incident");
    CHECK(check_mutable(l.ice, "2").reason == "2-cycle incident");
    CHECK_THROWS_AS(check_mutable(l.ice, "9"), Error);
  }

  TEST_CASE("frozen sink") {
    auto x = ice({"1", "2", "3"}, {{"f", "1", "2"}, {"u", "2", "3"}}, {"1", "2"}, {"f"});
    CHECK(check_mutable(x, "2").kind == Mutability::FrozenSink);
    auto y = ice({"1", "2", "3"}, {{"f", "1", "2"}, {"u", "3", "2"}}, {"1", "2"}, {"f"});
    CHECK(check_mutable(y, "2").kind == Mutability::NotMutable);
    CHECK(check_mutable(y, "2").reason == "frozen vertex is neither a frozen source nor a frozen sink");
    auto z = ice({"1", "2", "3"}, {{"f", "1", "2"}, {"u", "2", "3"}}, {"1", "2"}, {"f"});
    CHECK(check_mutable(z, "1").kind == Mutability::FrozenSource);
    auto w = ice({"1", "2", "3"}, {{"f", "2", "1"}, {"u", "2", "3"}}, {"1", "2"}, {"f"});
    CHECK(check_mutable(w, "1").kind == Mutability::FrozenSink);
  }

  TEST_CASE("isomorphism agrees with the permutation oracle") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto c = random_iqp(seed);
      Json a = encode_iqp(c.iqp);
      // relabel through a random permutation of ids, then compare
      Json b = encode_iqp(canonical_relabel(c.iqp));
      CHECK(ice_quiver_isomorphic(c.iqp.ice, canonical_relabel(c.iqp).ice).has_value());
      CHECK(oracle::isomorphic(a, b));
      auto other = random_iqp(seed + 1000);
      Json d = encode_iqp(other.iqp);
      CHECK(ice_quiver_isomorphic(c.iqp.ice, other.iqp.ice).has_value() == oracle::isomorphic(a, d));
    }
  }

  TEST_CASE("isomorphism respects frozen state") {
    auto x = ice({"1", "2"}, {{"a", "1", "2"}}, {"1", "2"}, {"a"});
    auto y = ice({"1", "2"}, {{"a", "1", "2"}}, {"1", "2"}, {});
    auto z = ice({"1", "2"}, {{"b", "2", "1"}}, {"1", "2"}, {"b"});
    CHECK_FALSE(ice_quiver_isomorphic(x, y));
    auto iso = ice_quiver_isomorphic(x, z);
    REQUIRE(iso);
    CHECK(iso->vertices.at("1") == "2");
    CHECK(iso->arrows.at("a") == "b");
  }

  TEST_CASE("dot output marks frozen parts") {
    auto t = support::fixture("triangle.json");
    auto dot = to_dot(t.ice);
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("\"3\" -> \"1\" [label=\"gamma\", style=dashed") != std::string::npos);
  }
}
