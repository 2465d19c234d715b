#include <doctest.h>

#include "iqp/error.hpp"
#include "iqp/random_iqp.hpp"
#include "support.hpp"

using namespace iqp;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_iqp(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error for " << text);
  return ErrorKind::Internal;
}

Json triangle() { return support::fixture_json("triangle.json"); }

}  // namespace

TEST_SUITE("document") {
  TEST_CASE("round trip") {
    for (const char* name : {"triangle.json", "five.json", "dimer24.json", "pressland4.json", "loop.json"}) {
      auto x = support::fixture(name);
      auto text = dump_iqp(x);
      CHECK(dump_iqp(parse_iqp(text)) == text);
      CHECK(text.find('\n') == std::string::npos);
    }
  }

  TEST_CASE("potential coefficients are exact rationals") {
    Json d = triangle();
    d["potential"][0]["coeff"] = "-6/4";
    auto x = decode_iqp(d);
    CHECK(encode_iqp(x)["potential"][0]["coeff"] == "-3/2");
  }

  TEST_CASE("defaults") {
    Json d = triangle();
    d.erase("truncation");
    d.erase("potential");
    auto x = decode_iqp(d);
    CHECK(x.truncation() == 12);
    CHECK(x.potential.is_zero());
  }

  TEST_CASE("malformed documents") {
    CHECK(kind_of("{") == ErrorKind::Malformed);
    CHECK(kind_of("[]") == ErrorKind::Malformed);
    Json d = triangle();
    d["version"] = 2;
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["arrows"][0]["frozen"] = true;
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["potential"][0]["coeff"] = "1/0";
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["potential"][0]["coeff"] = "x";
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["potential"][0]["cycle"] = {"beta", "alpha"};
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["potential"][0]["cycle"] = {"gamma", "beta", "delta"};
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["truncation"] = 1;
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["vertices"][0]["id"] = 1;
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
    d = triangle();
    d["arrows"][0].erase("source");
    CHECK(kind_of(d.dump()) == ErrorKind::Malformed);
  }

  TEST_CASE("truncation above the cap is a limit error") {
    Json d = triangle();
    d["truncation"] = 500;
    CHECK(kind_of(d.dump()) == ErrorKind::Limit);
  }

  TEST_CASE("canonical relabeling is deterministic and structure preserving") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      auto c = random_iqp(seed);
      auto a = canonical_relabel(c.iqp);
      CHECK(dump_iqp(a) == dump_iqp(canonical_relabel(c.iqp)));
      auto iso = ice_quiver_isomorphic(c.iqp.ice, a.ice);
      REQUIRE(iso);
      CHECK(oracle::isomorphic(encode_iqp(c.iqp), encode_iqp(a)));
      CHECK(a.potential.terms().size() == c.iqp.potential.terms().size());
      for (std::size_t v = 0; v < a.quiver().vertex_count(); ++v) {
        CHECK(a.quiver().vertex_id(static_cast<VertexIndex>(v)).find_first_not_of("0123456789") == std::string::npos);
      }
    }
  }

  TEST_CASE("canonical relabeling maps the potential along the arrow renaming") {
    auto t = support::fixture("triangle.json");
    auto a = canonical_relabel(t);
    // BFS from vertex 1 reaches 2 by alpha and 3 by gamma
    CHECK(dump_iqp(a) ==
          R"({"arrows":[{"frozen":false,"id":"a1","source":"1","target":"2"},{"frozen":false,"id":"a2","source":"2","target":"3"},{"frozen":true,"id":"a3","source":"3","target":"1"}],"potential":[{"coeff":"1","cycle":["a1","a3","a2"]}],"truncation":12,"version":1,"vertices":[{"frozen":true,"id":"1"},{"frozen":false,"id":"2"},{"frozen":true,"id":"3"}]})");
  }

  TEST_CASE("error json") {
    CHECK(to_string(ErrorKind::Unsupported) == std::string("unsupported"));
  }
}
