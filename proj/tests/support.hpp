#pragma once

#include <random>
#include <string>
#include <vector>

#include "gbs/gog_format.hpp"
#include "gbs/graph_of_groups.hpp"
#include "gbs/matrix.hpp"
#include "gbs/word.hpp"

namespace gbs::test {

inline GoGSpec load_spec(const std::string& name) { return load_gog(std::string(GBS_DATA_DIR) + "/" + name); }
inline GraphOfGroups load_graph(const std::string& name) { return GraphOfGroups::build(load_spec(name)); }

inline QMatrix q2(long a, long b, long c, long d) {
  return QMatrix{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}};
}
inline IntMatrix i2(long a, long b, long c, long d) { return IntMatrix{{BigInt(a), BigInt(b)}, {BigInt(c), BigInt(d)}}; }
inline IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline const QMatrix H = QMatrix{{Rational(2), Rational(0)}, {Rational(0), Rational(BigInt(1), BigInt(2))}};
inline const QMatrix P = q2(1, 1, 0, 1);
inline const QMatrix E = q2(0, 1, -1, 0);

/// Random word of the given letter count over letters with exponents +-1.
inline Word random_word(std::mt19937_64& rng, const std::vector<std::string>& letters, std::size_t length) {
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::bernoulli_distribution sign;
  Word w;
  for (std::size_t i = 0; i < length; ++i) w = w * Word::letter(letters[pick(rng)], sign(rng) ? 1 : -1);
  return w;
}

inline QMatrix random_rational_matrix(std::mt19937_64& rng, std::size_t n, long bound = 6) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  QMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational(BigInt(num(rng)), BigInt(den(rng)));
  return m;
}

inline std::vector<std::string> all_letters(const GraphOfGroups& g) {
  std::vector<std::string> out;
  for (const auto& gen : g.generators()) out.push_back(gen.name);
  return out;
}

/// Oracle for [Z^2 : M Z^2]: distinct cosets among the points of a box,
/// tested by the adjugate divisibility criterion.
inline std::size_t coset_count(const IntMatrix& m) {
  std::vector<IntVector> reps;
  const long box = 40;
  const BigInt det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  for (long x = 0; x < box; ++x)
    for (long y = 0; y < box; ++y) {
      IntVector p = iv({x, y});
      bool fresh = true;
      for (const auto& r : reps) {
        BigInt dx = p[0] - r[0], dy = p[1] - r[1];
        BigInt u = m(1, 1) * dx - m(0, 1) * dy;
        BigInt v = -m(1, 0) * dx + m(0, 0) * dy;
        if (u % det == 0 && v % det == 0) {
          fresh = false;
          break;
        }
      }
      if (fresh) reps.push_back(p);
    }
  return reps.size();
}

/// Two vertices joined by a tree edge plus one extra edge closing a cycle.
inline GoGSpec two_vertex_spec() {
  GoGSpec s;
  s.rank = 2;
  s.vertices = {"X", "Y"};
  s.edges.push_back({"f", "X", "Y", i2(1, 0, 0, 2), i2(3, 0, 0, 1)});
  s.edges.push_back({"k", "Y", "X", IntMatrix::identity(2), i2(1, 1, 0, 1)});
  return s;
}

}  // namespace gbs::test
