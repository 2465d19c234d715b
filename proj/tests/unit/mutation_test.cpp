#include <doctest.h>

#include "iqp/error.hpp"
#include "iqp/quotient.hpp"
#include "iqp/random_iqp.hpp"
#include "support.hpp"

using namespace iqp;
using support::terms;

namespace {

Json doc(std::vector<std::tuple<std::string, bool>> vs, std::vector<std::tuple<std::string, std::string, std::string, bool>> as) {
  Json d = {{"version", 1}, {"vertices", Json::array()}, {"arrows", Json::array()}};
  for (auto& [id, f] : vs) d["vertices"].push_back({{"id", id}, {"frozen", f}});
  for (auto& [id, s, t, f] : as) d["arrows"].push_back({{"id", id}, {"source", s}, {"target", t}, {"frozen", f}});
  return d;
}

bool has_unfrozen_quadratic(const IQP& x) {
  for (const auto& [w, c] : x.potential.terms()) {
    if (w.size() == 2 && (!x.ice.is_frozen_arrow(w[0]) || !x.ice.is_frozen_arrow(w[1]))) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("mutation") {
  TEST_CASE("triangle premutation") {
    auto t = support::fixture("triangle.json");
    auto pre = premutate(t, "2");
    CHECK(oracle::cyclic_class(support::poly(pre.potential)) ==
          oracle::cyclic_class(terms({{1, {"alpha*", "beta*", "[betaalpha]"}}, {1, {"gamma", "[betaalpha]"}}})));
    const Quiver& q = pre.quiver();
    auto ba = q.arrow_index("[betaalpha]");
    CHECK(q.vertex_id(q.arrow(ba).source) == "1");
    CHECK(q.vertex_id(q.arrow(ba).target) == "3");
    CHECK_FALSE(pre.ice.is_frozen_arrow(ba));
    CHECK(q.vertex_id(q.arrow(q.arrow_index("alpha*")).source) == "2");
    CHECK_FALSE(q.find_arrow("alpha"));
  }

  TEST_CASE("triangle mutation freezes the composite") {
    auto t = support::fixture("triangle.json");
    auto m = mutate_traced(t, "2");
    const Quiver& q = m.iqp.quiver();
    CHECK(q.arrow_count() == 3);
    CHECK(m.iqp.ice.is_frozen_arrow(q.arrow_index("[betaalpha]")));
    CHECK_FALSE(q.find_arrow("gamma"));
    CHECK(oracle::cyclic_class(support::poly(m.iqp.potential)) ==
          oracle::cyclic_class(terms({{1, {"beta*", "[betaalpha]", "alpha*"}}})));
    REQUIRE(m.trace.frozen_replacements.size() == 1);
    CHECK(m.trace.frozen_replacements[0] == std::pair<ArrowId, ArrowId>{"gamma", "[betaalpha]"});
    CHECK(m.status.kind == Mutability::UnfrozenMutable);
  }

  TEST_CASE("combinatorial mutation keeps the frozen replacement") {
    auto p = support::fixture("pressland4.json");
    auto iq = combinatorial_mutate(p.ice, "3");
    Json expected = doc({{"1", true}, {"2", true}, {"3", false}},
                        {{"x", "2", "1", true}, {"y", "1", "3", false}, {"z", "3", "2", false}});
    Json got = encode_iqp(IQP(iq, Potential(iq.quiver_ptr(), 12)));
    CHECK(oracle::isomorphic(got, expected));
    CHECK(iq.is_frozen_arrow(iq.quiver().arrow_index("[ac]")));
    // the algebraic mutation with W = acb has the same underlying ice quiver
    auto m = mutate(p, "3");
    CHECK(ice_quiver_isomorphic(m.ice, iq));
  }

  TEST_CASE("frozen source premutation") {
    auto f = support::fixture("five.json");
    auto pre = premutate(f, "3");
    auto expected = terms({{1, {"c", "b", "a"}},
                           {-1, {"[ge]", "a"}},
                           {1, {"h", "[ie]"}},
                           {-1, {"f", "b", "h"}},
                           {1, {"[ge]", "e*", "g*"}},
                           {1, {"[ie]", "e*", "i*"}}});
    CHECK(oracle::cyclic_class(support::poly(pre.potential)) == oracle::cyclic_class(expected));
    const Quiver& q = pre.quiver();
    CHECK(pre.ice.is_frozen_arrow(q.arrow_index("g*")));
    CHECK(pre.ice.is_frozen_arrow(q.arrow_index("i*")));
    CHECK_FALSE(pre.ice.is_frozen_arrow(q.arrow_index("e*")));
    CHECK_FALSE(pre.ice.is_frozen_arrow(q.arrow_index("[ge]")));
  }

  TEST_CASE("frozen source mutation quiver") {
    auto f = support::fixture("five.json");
    auto m = mutate(f, "3");
    Json expected = doc({{"1", true}, {"2", true}, {"3", true}, {"4", true}, {"5", false}},
                        {{"g*", "1", "3", true},
                         {"c", "2", "1", true},
                         {"f", "2", "4", true},
                         {"b", "5", "2", false},
                         {"e*", "3", "5", false},
                         {"i*", "4", "3", true}});
    CHECK(oracle::isomorphic(encode_iqp(m), expected));
    // Both 2-cycles [ge]a and [ie]h are unfrozen. Eliminating them sends a to
    // a - e*g* and h to h - e*i*, which leaves two quartic terms.
    CHECK(oracle::cyclic_class(support::poly(m.potential)) ==
          oracle::cyclic_class(terms({{1, {"b", "e*", "g*", "c"}}, {1, {"b", "e*", "i*", "f"}}})));
  }

  TEST_CASE("frozen source mutation matches the combinatorial rule") {
    auto f = support::fixture("five.json");
    CHECK(ice_quiver_isomorphic(mutate(f, "3").ice, combinatorial_mutate(f.ice, "3")));
  }

  TEST_CASE("non-mutable vertices are unsupported") {
    auto l = support::fixture("loop.json");
    try {
      mutate(l, "1");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Unsupported);
      CHECK(std::string(e.what()).find("loop incident") != std::string::npos);
    }
    auto t = support::fixture("triangle.json");
    auto y = decode_iqp(doc({{"1", true}, {"2", true}, {"3", false}}, {{"f", "1", "2", true}, {"u", "3", "2", false}}));
    CHECK_THROWS_AS(premutate(y, "2"), Error);
    CHECK_THROWS_AS(mutate(t, "nope"), Error);
  }

  TEST_CASE("reduction removes a trivial unfrozen 2-cycle") {
    Json d = doc({{"1", false}, {"2", false}}, {{"p", "1", "2", false}, {"q", "2", "1", false}, {"r", "2", "1", false}});
    d["potential"] = {{{"coeff", "2"}, {"cycle", {"q", "p"}}}, {{"coeff", "1"}, {"cycle", {"r", "p", "q", "p"}}}};
    auto x = decode_iqp(d);
    auto red = reduce(x);
    CHECK(red.iqp.quiver().arrow_count() == 1);
    CHECK(red.iqp.potential.is_zero());
    REQUIRE(red.trace.removed_2cycles.size() == 1);
  }

  TEST_CASE("reduction splits a mixed quadratic part") {
    // W = pq + pr + cubic: the quadratic form has rank one
    Json d = doc({{"1", false}, {"2", false}},
                 {{"p", "1", "2", false}, {"q", "2", "1", false}, {"r", "2", "1", false}, {"s", "1", "2", false}});
    d["potential"] = {{{"coeff", "1"}, {"cycle", {"q", "p"}}},
                      {{"coeff", "1"}, {"cycle", {"r", "p"}}},
                      {{"coeff", "1"}, {"cycle", {"r", "s", "q", "p"}}}};
    auto red = reduce(decode_iqp(d));
    CHECK(red.iqp.quiver().arrow_count() == 2);
    CHECK_FALSE(has_unfrozen_quadratic(red.iqp));
  }

  TEST_CASE("trace substitutions realize the right equivalence") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      CAPTURE(seed);
      auto c = random_iqp(seed);
      auto pre = premutate(c.iqp, c.vertex);
      auto red = reduce(pre);
      Potential w = pre.potential;
      for (const auto& phi : red.trace.substitutions) w = phi.apply(w);
      // drop the trivial part and anything through a deleted arrow
      std::set<ArrowId> kept;
      for (const auto& a : red.iqp.quiver().arrows()) kept.insert(a.id);
      oracle::Poly rest;
      for (const auto& [word, coeff] : support::poly(w)) {
        bool keep = std::all_of(word.begin(), word.end(), [&](const std::string& a) { return kept.count(a) > 0; });
        if (keep) rest[word] += coeff;
      }
      CHECK(oracle::cyclic_class(rest) == oracle::cyclic_class(support::poly(red.iqp.potential)));
      CHECK_FALSE(has_unfrozen_quadratic(red.iqp));
    }
  }

  TEST_CASE("mutation at an unfrozen vertex matches the combinatorial rule when it is 2-acyclic") {
    int compared = 0;
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      auto c = random_iqp(seed);
      auto comb = combinatorial_mutate(c.iqp.ice, c.vertex);
      auto m = mutate(c.iqp, c.vertex);
      auto report = validate_ice_quiver(m.ice);
      bool two_acyclic = true;
      for (const auto& [v, list] : report.two_cycles) {
        for (const auto& tc : list) {
          auto a = m.quiver().arrow_index(tc.first), b = m.quiver().arrow_index(tc.second);
          if (!m.ice.is_frozen_arrow(a) || !m.ice.is_frozen_arrow(b)) two_acyclic = false;
        }
      }
      if (!two_acyclic) continue;
      ++compared;
      CAPTURE(seed);
      CHECK(ice_quiver_isomorphic(m.ice, comb));
    }
    CHECK(compared > 20);
  }

  TEST_CASE("transport keeps terms over surviving arrows") {
    auto t = support::fixture("triangle.json");
    auto to = std::make_shared<const Quiver>(std::vector<VertexId>{"1", "2", "3"},
                                             std::vector<ArrowSpec>{{"alpha", "1", "2"}, {"beta", "2", "3"}});
    auto w = transport(t.potential, to);
    CHECK(w.is_zero());
  }
}
