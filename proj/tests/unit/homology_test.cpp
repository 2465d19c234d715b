#include <doctest.h>

#include "iqp/error.hpp"
#include "iqp/quotient.hpp"
#include "iqp/random_iqp.hpp"
#include "support.hpp"

using namespace iqp;

namespace {

oracle::ModRow mod_row(const SparseRow& r) {
  oracle::ModRow out;
  for (const auto& [c, v] : r) out[c] = oracle::to_mod(v);
  return out;
}

std::size_t rank_of(const std::vector<SparseRow>& rows) {
  std::vector<oracle::ModRow> m;
  for (const auto& r : rows) m.push_back(mod_row(r));
  return oracle::mod_rank(m);
}

// Homology at R, V*, V, JJ from ranks over a prime field. These bound the
// rational homology from above, so zeros here certify exactness.
std::array<std::size_t, 4> mod_homology(const BimoduleComplexSlice& s) {
  std::size_t r3 = rank_of(s.m3), r2 = rank_of(s.m2), r1 = rank_of(s.m1), ra = rank_of(s.augmentation);
  return {s.basis[3].size() - r3, s.basis[2].size() - r2 - r3, s.basis[1].size() - r1 - r2,
          s.basis[0].size() - ra - r1};
}

}  // namespace

TEST_SUITE("homology") {
  TEST_CASE("complex maps compose to zero") {
    for (const char* name : {"triangle.json", "dimer24.json", "five.json", "pressland4.json"}) {
      CAPTURE(name);
      auto c = build_pj_complex(support::fixture(name), 8);
      CHECK(check_complex(c.slices).ok);
    }
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      CAPTURE(seed);
      auto c = build_pj_complex(random_iqp(seed).iqp, 7);
      CHECK(check_complex(c.slices).ok);
    }
  }

  TEST_CASE("basis sizes follow from the Jacobian corner dims") {
    auto x = support::fixture("dimer24.json");
    const int n = 7;
    auto c = build_pj_complex(x, n);
    auto o = oracle::jacobian_oracle(support::fixture_json("dimer24.json"), n);
    auto q = oracle::quiver_of(support::fixture_json("dimer24.json"));
    const int l = c.lowest_degree;
    auto corner = [&](const std::string& t, const std::string& s, int d) -> std::size_t {
      if (d < 0 || d > n) return 0;
      return o.corner.at({t, s})[static_cast<std::size_t>(d)];
    };
    for (int d = 0; d <= n; ++d) {
      CAPTURE(d);
      std::size_t jj = 0, v = 0, vd = 0, r = 0;
      for (int p = 0; p <= d; ++p) {
        for (const auto& i : q.vertices) {
          for (const auto& j : q.vertices) {
            for (const auto& k : q.vertices) jj += corner(j, i, p) * corner(i, k, d - p);
          }
        }
      }
      for (const auto& [id, a] : q.arrows) {
        for (const auto& j : q.vertices) {
          for (const auto& k : q.vertices) {
            for (int p = 0; p <= d; ++p) {
              v += corner(j, a.target, p) * corner(a.source, k, d - 1 - p);
              if (!a.frozen) vd += corner(j, a.source, p) * corner(a.target, k, d - (l - 1) - p);
            }
          }
        }
      }
      for (const auto& i : q.vertices) {
        if (q.frozen_vertices.count(i)) continue;
        for (const auto& j : q.vertices) {
          for (const auto& k : q.vertices) {
            for (int p = 0; p <= d; ++p) r += corner(j, i, p) * corner(i, k, d - l - p);
          }
        }
      }
      const auto& s = c.slices[static_cast<std::size_t>(d)];
      CHECK(s.basis[0].size() == jj);
      CHECK(s.basis[1].size() == v);
      CHECK(s.basis[2].size() == vd);
      CHECK(s.basis[3].size() == r);
    }
  }

  TEST_CASE("exactness profile agrees with prime field ranks") {
    for (const char* name : {"triangle.json", "dimer24.json"}) {
      CAPTURE(name);
      auto c = build_pj_complex(support::fixture(name), 9);
      auto prof = exactness_profile(c.slices);
      CHECK(prof.checked_through == 7);
      for (std::size_t d = 0; d < c.slices.size(); ++d) {
        CAPTURE(d);
        CHECK(prof.homology[d] == mod_homology(c.slices[d]));
      }
      CHECK(prof.exact);
    }
  }

  TEST_CASE("profile of a mutated potential") {
    auto x = mutate(support::fixture("five.json"), "3");
    auto c = build_pj_complex(x, 8);
    CHECK(check_complex(c.slices).ok);
    auto prof = exactness_profile(c.slices);
    for (std::size_t d = 0; d < c.slices.size(); ++d) CHECK(prof.homology[d] == mod_homology(c.slices[d]));
  }

  TEST_CASE("basis limit is enforced") {
    CHECK_THROWS_AS(build_pj_complex(support::fixture("dimer24.json"), 10, 50), Error);
  }
}
