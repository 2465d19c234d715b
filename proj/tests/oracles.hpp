#pragma once

// Brute-force reference implementations working on documents and ids only.
// Nothing here calls into the library beyond JSON parsing.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace oracle {

using Json = nlohmann::json;
using Word = std::vector<std::string>;  // written order, rightmost arrow first in time
using Poly = std::map<Word, mpq_class>;

struct Arrow {
  std::string source, target;
  bool frozen = false;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::set<std::string> frozen_vertices;
  std::map<std::string, Arrow> arrows;

  const std::string& source(const Word& w) const { return arrows.at(w.back()).source; }
  const std::string& target(const Word& w) const { return arrows.at(w.front()).target; }
};

inline Quiver quiver_of(const Json& doc) {
  Quiver q;
  for (const auto& v : doc.at("vertices")) {
    q.vertices.push_back(v.at("id"));
    if (v.value("frozen", false)) q.frozen_vertices.insert(v.at("id").get<std::string>());
  }
  for (const auto& a : doc.at("arrows")) {
    q.arrows[a.at("id")] = Arrow{a.at("source"), a.at("target"), a.value("frozen", false)};
  }
  return q;
}

inline Poly potential_of(const Json& doc) {
  Poly w;
  if (!doc.contains("potential")) return w;
  for (const auto& t : doc.at("potential")) {
    mpq_class c(t.at("coeff").get<std::string>());
    c.canonicalize();
    w[t.at("cycle").get<Word>()] += c;
  }
  return w;
}

inline Poly poly_of(const Json& series) {
  Poly p;
  for (const auto& t : series) {
    mpq_class c(t.at("coeff").get<std::string>());
    c.canonicalize();
    Word w = t.at("path").get<Word>();
    if (w.empty()) w = {"e_" + t.at("vertex").get<std::string>()};
    p[w] += c;
  }
  return p;
}

inline void clean(Poly& p) {
  for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
}

inline Word min_rotation(const Word& w) {
  Word best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word r(w.begin() + static_cast<long>(k), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<long>(k));
    best = std::min(best, r);
  }
  return best;
}

/// Canonical representative of a potential modulo cyclic rotation.
inline Poly cyclic_class(const Poly& w) {
  Poly out;
  for (const auto& [word, c] : w) out[min_rotation(word)] += c;
  clean(out);
  return out;
}

inline Poly cyclic_derivative(const Poly& w, const std::string& a) {
  Poly out;
  for (const auto& [word, c] : w) {
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (word[k] != a) continue;
      Word d(word.begin() + static_cast<long>(k) + 1, word.end());
      d.insert(d.end(), word.begin(), word.begin() + static_cast<long>(k));
      out[d] += c;
    }
  }
  clean(out);
  return out;
}

/// All non-lazy paths of length 1..n as written words.
inline std::vector<Word> paths(const Quiver& q, int n) {
  std::vector<Word> out, frontier;
  for (const auto& [id, _] : q.arrows) frontier.push_back({id});
  for (int len = 1; len <= n && !frontier.empty(); ++len) {
    out.insert(out.end(), frontier.begin(), frontier.end());
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& [id, a] : q.arrows) {
        if (a.source != q.target(w)) continue;
        Word x{id};
        x.insert(x.end(), w.begin(), w.end());
        next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank over a large prime field. Rank mod p never exceeds the rational rank,
// so a quotient dimension computed this way is an upper bound that is equal
// for all but finitely many primes.

inline constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

inline std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

inline std::uint64_t to_mod(const mpq_class& q) {
  auto reduce = [](const mpz_class& z) {
    mpz_class m = z % mpz_class(std::to_string(kPrime));
    if (m < 0) m += mpz_class(std::to_string(kPrime));
    return static_cast<std::uint64_t>(std::stoull(m.get_str()));
  };
  return mul_mod(reduce(q.get_num()), inv_mod(reduce(q.get_den())));
}

using ModRow = std::map<std::size_t, std::uint64_t>;

/// Gaussian elimination with the leftmost nonzero column as pivot.
class ModEchelon {
 public:
  bool insert(ModRow row) {
    while (!row.empty()) {
      auto [c, v] = *row.begin();
      auto it = pivots_.find(c);
      if (it == pivots_.end()) {
        std::uint64_t inv = inv_mod(v);
        for (auto& [k, x] : row) x = mul_mod(x, inv);
        pivots_.emplace(c, std::move(row));
        return true;
      }
      std::uint64_t f = kPrime - v;
      for (const auto& [k, x] : it->second) {
        std::uint64_t& y = row[k];
        y = (y + mul_mod(f, x)) % kPrime;
        if (y == 0) row.erase(k);
      }
    }
    return false;
  }
  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::size_t, ModRow>& pivots() const { return pivots_; }

 private:
  std::map<std::size_t, ModRow> pivots_;
};

inline std::size_t mod_rank(const std::vector<ModRow>& rows) {
  ModEchelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

// ---------------------------------------------------------------------------
// Truncated Jacobian algebra by spanning every two-sided multiple u*r*w of a
// relation, then counting leading columns per degree.

struct JacobianOracle {
  std::vector<std::size_t> dims;            // per degree 0..n
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> corner;  // (target, source)
};

inline JacobianOracle jacobian_oracle(const Json& doc, int n) {
  Quiver q = quiver_of(doc);
  Poly w = potential_of(doc);
  std::vector<Word> all = paths(q, n);
  std::sort(all.begin(), all.end(), [](const Word& x, const Word& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::map<Word, std::size_t> column;
  for (std::size_t k = 0; k < all.size(); ++k) column[all[k]] = k;

  std::vector<Poly> relations;
  for (const auto& [id, a] : q.arrows) {
    if (a.frozen) continue;
    Poly r = cyclic_derivative(w, id);
    if (!r.empty()) relations.push_back(r);
  }
  // multipliers: lazy paths are written as the empty word
  std::vector<Word> mult = all;
  mult.insert(mult.begin(), Word{});

  ModEchelon ideal;
  for (const auto& r : relations) {
    const Word& sample = r.begin()->first;
    std::string rs = q.source(sample), rt = q.target(sample);
    for (const auto& u : mult) {
      if (!u.empty() && q.source(u) != rt) continue;
      for (const auto& v : mult) {
        if (!v.empty() && q.target(v) != rs) continue;
        ModRow row;
        for (const auto& [word, c] : r) {
          if (static_cast<int>(u.size() + word.size() + v.size()) > n) continue;
          Word x = u;
          x.insert(x.end(), word.begin(), word.end());
          x.insert(x.end(), v.begin(), v.end());
          auto& y = row[column.at(x)];
          y = (y + to_mod(c)) % kPrime;
        }
        for (auto it = row.begin(); it != row.end();) it = it->second == 0 ? row.erase(it) : std::next(it);
        if (!row.empty()) ideal.insert(std::move(row));
      }
    }
  }

  JacobianOracle out;
  out.dims.assign(static_cast<std::size_t>(n) + 1, 0);
  out.dims[0] = q.vertices.size();
  for (const auto& v : q.vertices) {
    for (const auto& u : q.vertices) {
      out.corner[{u, v}].assign(static_cast<std::size_t>(n) + 1, 0);
      if (u == v) out.corner[{u, v}][0] = 1;
    }
  }
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (ideal.pivots().count(k)) continue;
    out.dims[all[k].size()] += 1;
    out.corner[{q.target(all[k]), q.source(all[k])}][all[k].size()] += 1;
  }
  return out;
}

/// Per-degree dims of e_F J e_F.
inline std::vector<std::size_t> boundary_oracle(const Json& doc, int n) {
  auto j = jacobian_oracle(doc, n);
  Quiver q = quiver_of(doc);
  std::vector<std::size_t> out(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [key, dims] : j.corner) {
    if (!q.frozen_vertices.count(key.first) || !q.frozen_vertices.count(key.second)) continue;
    for (std::size_t d = 0; d < dims.size(); ++d) out[d] += dims[d];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ice quiver isomorphism by trying every vertex bijection.

inline bool isomorphic(const Json& a, const Json& b) {
  Quiver qa = quiver_of(a), qb = quiver_of(b);
  if (qa.vertices.size() != qb.vertices.size() || qa.arrows.size() != qb.arrows.size()) return false;
  using Key = std::tuple<std::string, std::string, bool>;
  std::multiset<Key> target;
  for (const auto& [_, x] : qb.arrows) target.insert({x.source, x.target, x.frozen});
  std::vector<std::size_t> perm(qa.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::map<std::string, std::string> f;
    bool ok = true;
    for (std::size_t k = 0; k < perm.size() && ok; ++k) {
      f[qa.vertices[k]] = qb.vertices[perm[k]];
      ok = qa.frozen_vertices.count(qa.vertices[k]) == qb.frozen_vertices.count(qb.vertices[perm[k]]);
    }
    if (!ok) continue;
    std::multiset<Key> image;
    for (const auto& [_, x] : qa.arrows) image.insert({f[x.source], f[x.target], x.frozen});
    if (image == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Differential evaluated from an exported presentation.

struct Presentation {
  std::map<std::string, int> degree;
  std::map<std::string, std::pair<std::string, std::string>> ends;  // id -> (source, target)
  std::map<std::string, Poly> d;
  int truncation = 0;
};

inline Presentation presentation_of(const Json& p) {
  Presentation out;
  for (const auto& g : p.at("generators")) {
    out.degree[g.at("id")] = g.at("degree").get<int>();
    out.ends[g.at("id")] = {g.at("source"), g.at("target")};
  }
  for (const auto& [id, series] : p.at("differential").items()) out.d[id] = poly_of(series);
  out.truncation = p.at("truncation").get<int>();
  return out;
}

inline bool is_idempotent(const Word& w) { return w.size() == 1 && w[0].rfind("e_", 0) == 0; }

inline Poly apply_d(const Presentation& p, const Poly& x) {
  Poly out;
  for (const auto& [word, c] : x) {
    if (is_idempotent(word)) continue;
    int sign_degree = 0;
    for (std::size_t k = 0; k < word.size(); ++k) {
      auto it = p.d.find(word[k]);
      if (it != p.d.end()) {
        mpq_class s = sign_degree % 2 ? -c : c;
        for (const auto& [image, ic] : it->second) {
          Word y(word.begin(), word.begin() + static_cast<long>(k));
          if (!is_idempotent(image)) y.insert(y.end(), image.begin(), image.end());
          y.insert(y.end(), word.begin() + static_cast<long>(k) + 1, word.end());
          if (y.empty()) continue;
          if (static_cast<int>(y.size()) > p.truncation) continue;
          out[y] += s * ic;
        }
      }
      sign_degree += p.degree.at(word[k]);
    }
  }
  clean(out);
  return out;
}

/// Generators x with d(d(x)) != 0.
inline std::vector<std::string> d_squared_failures(const Presentation& p) {
  std::vector<std::string> bad;
  for (const auto& [id, img] : p.d) {
    if (!apply_d(p, img).empty()) bad.push_back(id);
  }
  return bad;
}

/// Multiplicative extension of a generator assignment; words longer than n are dropped.
inline Poly substitute(const std::map<std::string, Poly>& f, const Poly& x, int n) {
  Poly out;
  for (const auto& [word, c] : x) {
    Poly acc{{Word{}, c}};
    for (const auto& g : word) {
      Poly next;
      for (const auto& [w, wc] : acc) {
        for (const auto& [img, ic] : f.at(g)) {
          Word y = w;
          if (!is_idempotent(img)) y.insert(y.end(), img.begin(), img.end());
          if (static_cast<int>(y.size()) > n) continue;
          next[y] += wc * ic;
        }
      }
      clean(next);
      acc = std::move(next);
    }
    for (const auto& [w, wc] : acc) {
      if (!w.empty()) out[w] += wc;
    }
  }
  clean(out);
  return out;
}

}  // namespace oracle
