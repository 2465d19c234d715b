#include <doctest.h>

#include "iqp/error.hpp"
#include "iqp/random_iqp.hpp"
#include "support.hpp"

using namespace iqp;
using support::terms;

namespace {

oracle::Presentation exported(const DgQuiverAlgebra& dga) { return oracle::presentation_of(presentation_json(dga)); }

}  // namespace

TEST_SUITE("ginzburg") {
  TEST_CASE("triangle presentation") {
    auto t = support::fixture("triangle.json");
    auto g = build_relative_ginzburg(t, 8);
    auto p = exported(g.dga);
    CHECK(p.degree.at("alpha^v") == -1);
    CHECK(p.degree.at("t_2") == -2);
    CHECK_FALSE(p.degree.count("gamma^v"));
    CHECK_FALSE(p.degree.count("t_1"));
    CHECK(p.ends.at("alpha^v") == std::pair<std::string, std::string>{"2", "1"});
    CHECK(p.d.at("alpha^v") == terms({{1, {"gamma", "beta"}}}));
    CHECK(p.d.at("beta^v") == terms({{1, {"alpha", "gamma"}}}));
    CHECK(p.d.at("t_2") == terms({{1, {"alpha", "alpha^v"}}, {-1, {"beta^v", "beta"}}}));
  }

  TEST_CASE("triangle preprojective presentation") {
    auto t = support::fixture("triangle.json");
    auto p = exported(build_pi2(t.ice, 8).dga);
    CHECK(p.degree.size() == 4);
    CHECK(p.d.at("r_1") == terms({{1, {"gamma", "gamma~"}}}));
    CHECK(p.d.at("r_3") == terms({{-1, {"gamma~", "gamma"}}}));
  }

  TEST_CASE("d squared vanishes and agrees with the exported oracle") {
    for (const char* name : {"triangle.json", "five.json", "dimer24.json", "pressland4.json"}) {
      CAPTURE(name);
      auto x = support::fixture(name);
      auto g = build_relative_ginzburg(x, 9);
      CHECK(check_d_squared(g.dga).ok);
      CHECK(oracle::d_squared_failures(exported(g.dga)).empty());
      auto p = build_pi2(x.ice, 9);
      CHECK(check_d_squared(p.dga).ok);
      CHECK(oracle::d_squared_failures(exported(p.dga)).empty());
    }
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      CAPTURE(seed);
      auto c = random_iqp(seed);
      auto g = build_relative_ginzburg(c.iqp, 8);
      CHECK(oracle::d_squared_failures(exported(g.dga)).empty());
    }
  }

  TEST_CASE("a wrong differential is caught") {
    auto t = support::fixture("triangle.json");
    auto g = build_relative_ginzburg(t, 8);
    const Quiver& q = g.dga.quiver();
    auto av = q.arrow_index("alpha^v");
    auto gamma = PathSeries::arrow(g.dga.quiver_ptr(), 8, q.arrow_index("gamma"));
    auto beta = PathSeries::arrow(g.dga.quiver_ptr(), 8, q.arrow_index("beta"));
    auto alpha = PathSeries::arrow(g.dga.quiver_ptr(), 8, q.arrow_index("alpha"));
    g.dga.set_differential(av, gamma * beta + gamma * beta * alpha * gamma * beta);
    auto report = check_d_squared(g.dga);
    CHECK_FALSE(report.ok);
    REQUIRE(report.failing_generator);
    CHECK(*report.failing_generator == "t_2");
    CHECK(oracle::d_squared_failures(exported(g.dga)) == std::vector<std::string>{"t_2"});
  }

  TEST_CASE("differentials must lower degree by one and respect endpoints") {
    auto t = support::fixture("triangle.json");
    auto g = build_relative_ginzburg(t, 8);
    const Quiver& q = g.dga.quiver();
    auto beta = PathSeries::arrow(g.dga.quiver_ptr(), 8, q.arrow_index("beta"));
    CHECK_THROWS_AS(g.dga.set_differential(q.arrow_index("alpha^v"), beta), Error);
    auto loop = PathSeries::arrow(g.dga.quiver_ptr(), 8, q.arrow_index("t_2"));
    CHECK_THROWS_AS(g.dga.set_differential(q.arrow_index("alpha^v"), loop), Error);
  }

  TEST_CASE("Ginzburg functor on the triangle") {
    auto t = support::fixture("triangle.json");
    auto f = build_ginzburg_functor(t, 8);
    CHECK(f->report.ok);
    const Quiver& pq = f->pi2.dga.quiver();
    auto r1 = pq.arrow_index("r_1");
    CHECK(support::poly(f->functor.assignment.at(r1)) == terms({{-1, {"alpha^v", "alpha"}}}));
    auto gt = pq.arrow_index("gamma~");
    CHECK(support::poly(f->functor.assignment.at(gt)) == terms({{-1, {"beta", "alpha"}}}));
  }

  TEST_CASE("chain map condition checked by the oracle") {
    auto check_one = [](const IQP& x, int n) {
      auto f = build_ginzburg_functor(x, n);
      CHECK(f->report.ok);
      auto gamma = exported(f->gamma.dga);
      auto pi2 = exported(f->pi2.dga);
      std::map<std::string, oracle::Poly> g;
      for (const auto& [a, img] : f->functor.assignment) g[f->pi2.dga.quiver().arrow(a).id] = support::poly(img);
      for (const auto& [id, _] : pi2.degree) {
        oracle::Poly x1{{oracle::Word{id}, 1}};
        auto lhs = oracle::apply_d(gamma, oracle::substitute(g, x1, n));
        auto rhs = oracle::substitute(g, oracle::apply_d(pi2, x1), n);
        CAPTURE(id);
        CHECK(lhs == rhs);
      }
    };
    for (const char* name : {"triangle.json", "five.json", "dimer24.json"}) check_one(support::fixture(name), 8);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) check_one(random_iqp(seed).iqp, 8);
  }

  TEST_CASE("zeroth homology matches the Jacobian algebra") {
    for (const char* name : {"triangle.json", "dimer24.json", "five.json"}) {
      CAPTURE(name);
      auto r = h0_comparison(support::fixture(name), 8);
      CHECK(r.agree);
      CHECK(r.compared_through == 6);
      auto oracle_dims = oracle::jacobian_oracle(support::fixture_json(name), 8).dims;
      for (std::size_t d = 0; d <= 6; ++d) CHECK(r.dg_dims[d] == oracle_dims[d]);
    }
  }

  TEST_CASE("boundary dims of the triangle") {
    auto t = support::fixture("triangle.json");
    auto b = boundary_h0_dims(t, 12);
    CHECK(b.stabilized);
    CHECK(b.total == 4);
    auto o = oracle::boundary_oracle(support::fixture_json("triangle.json"), 12);
    CHECK(b.dims == o);
  }

  TEST_CASE("text presentation lists generators and differentials") {
    auto t = support::fixture("triangle.json");
    auto text = presentation_text(build_relative_ginzburg(t, 4).dga);
    CHECK(text.find("t_2 : 2 -> 2  degree -2") != std::string::npos);
    CHECK(text.find("d(alpha^v) = gamma*beta") != std::string::npos);
  }
}
