#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <unordered_map>

#include "gbs/britton.hpp"
#include "gbs/geodesic.hpp"
#include "gbs/holonomy.hpp"
#include "support.hpp"

using namespace gbs;
using namespace gbs::test;

namespace {

// Faithful affine model of an ascending loop t^-1 v t = lambda v with alpha = I:
// elements are x -> s x + v with s a power of 1/lambda, multiplied as
// [[s, v], [0, 1]] matrices.
struct Affine {
  Rational s{1};
  std::vector<Rational> v;
  friend bool operator==(const Affine&, const Affine&) = default;
};

Affine compose(const Affine& x, const Affine& y) {
  Affine out{x.s * y.s, x.v};
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += x.s * y.v[i];
  return out;
}

Affine affine_image(const GraphOfGroups& g, const Word& w, const Rational& lambda) {
  const std::size_t n = g.rank();
  auto letters = g.vertex_letters(0);
  Affine out{Rational(1), std::vector<Rational>(n, Rational(0))};
  for (const auto& s : expand(w)) {
    Affine step{Rational(1), std::vector<Rational>(n, Rational(0))};
    auto it = std::find(letters.begin(), letters.end(), s.letter);
    if (it != letters.end()) {
      step.v[static_cast<std::size_t>(it - letters.begin())] = Rational(static_cast<long>(s.exponent));
    } else {
      step.s = s.exponent > 0 ? lambda.inverse() : lambda;
    }
    out = compose(out, step);
  }
  return out;
}

// Ball of radius r around the identity, by breadth-first search over normal forms.
std::map<std::vector<long>, std::uint64_t> vertex_ball(const GraphOfGroups& g, std::uint64_t radius) {
  Britton br(g);
  std::unordered_map<NormalForm, std::uint64_t, NormalFormHash> dist{{br.identity(), 0}};
  std::vector<NormalForm> frontier{br.identity()};
  for (std::uint64_t r = 1; r <= radius; ++r) {
    std::vector<NormalForm> next;
    for (const auto& nf : frontier)
      for (const auto& gen : g.generators())
        for (int sign : {1, -1}) {
          NormalForm x = br.multiply(nf, gen.name, sign);
          if (dist.emplace(x, r).second) next.push_back(std::move(x));
        }
    frontier = std::move(next);
  }
  std::map<std::vector<long>, std::uint64_t> out;
  for (const auto& [nf, d] : dist)
    if (auto v = nf.vertex_element()) {
      std::vector<long> key;
      for (const auto& x : *v) key.push_back(x.get_si());
      out[key] = d;
    }
  return out;
}

}  // namespace

TEST(Word, ParseAndPrint) {
  Word w = Word::parse("h^-5 p h^5");
  EXPECT_EQ(w.length(), 11u);
  EXPECT_EQ(w.str(), "h^-5 p h^5");
  EXPECT_EQ(w.inverse(), Word::parse("h^-5 p^-1 h^5"));
  EXPECT_EQ(Word::parse("a a a^-1"), Word::parse("a"));
  EXPECT_TRUE(Word::parse("1").empty());
  EXPECT_EQ(Word::parse("a b").power(2), Word::parse("a b a b"));
  EXPECT_THROW(Word::parse("a^"), std::invalid_argument);
  EXPECT_THROW(Word::parse("3a"), std::invalid_argument);
}

TEST(Britton, RelationExamples) {
  GraphOfGroups g = load_graph("specA.gog");
  Britton br(g);
  EXPECT_EQ(br.reduce(Word::parse("h^-1 a h")).vertex_element(), iv({2, 0}));
  EXPECT_EQ(br.reduce(Word::parse("p^-1 b p")).vertex_element(), iv({1, 1}));

  NormalForm stuck = br.reduce(Word::parse("h^-1 b h"));
  EXPECT_FALSE(stuck.vertex_element().has_value());
  EXPECT_EQ(stuck.stable_length(g), 2u);
  EXPECT_EQ(stuck.str(g), "h^-1 (0,1) h");

  EXPECT_TRUE(br.is_identity(Word::parse("a b a^-1 b^-1")));
  EXPECT_FALSE(br.is_identity(Word::parse("h p h^-1 p^-1")));
  EXPECT_THROW(br.reduce(Word::parse("q")), std::invalid_argument);
}

TEST(BrittonProperty, PowerLaw) {
  GraphOfGroups g = load_graph("specA.gog");
  for (int k = 0; k <= 10; ++k) {
    Word w = Word::letter("h", -k) * Word::letter("a") * Word::letter("h", k);
    EXPECT_EQ(britton_reduce(g, w).vertex_element(), iv({1L << k, 0})) << k;
  }
}

TEST(BrittonProperty, FreeCancellationReducesToIdentity) {
  GraphOfGroups g = load_graph("specB.gog");
  Britton br(g);
  std::mt19937_64 rng(31);
  auto letters = all_letters(g);
  for (int trial = 0; trial < 300; ++trial) {
    Word u = random_word(rng, letters, 1 + trial % 25);
    EXPECT_TRUE(br.is_identity(u * u.inverse())) << u.str();
  }
}

TEST(BrittonProperty, ConjugatedRelatorsReduceToIdentity) {
  for (const GoGSpec& s : {load_spec("specA.gog"), load_spec("specB.gog"), two_vertex_spec()}) {
    GraphOfGroups g = GraphOfGroups::build(s);
    Britton br(g);
    auto rels = presentation(g).relations;
    std::mt19937_64 rng(32);
    auto letters = all_letters(g);
    std::uniform_int_distribution<std::size_t> pick(0, rels.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      Word w;
      for (int j = 0; j < 3; ++j) {
        Word c = random_word(rng, letters, 6);
        Word r = rels[pick(rng)].relator();
        w = w * c * (trial % 2 ? r : r.inverse()) * c.inverse();
      }
      EXPECT_TRUE(br.is_identity(w)) << w.str();
    }
  }
}

TEST(BrittonProperty, CanonicalFormsDecideEquality) {
  GraphOfGroups g = load_graph("specA.gog");
  Britton br(g);
  std::mt19937_64 rng(33);
  auto letters = all_letters(g);
  int equal_pairs = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Word u = random_word(rng, letters, 6);
    // Half of the pairs are rewritten with a relator so that they are equal.
    Word v = u;
    if (trial % 2) {
      auto rels = presentation(g).relations;
      v = u * rels[static_cast<std::size_t>(trial) % rels.size()].relator();
    } else {
      v = random_word(rng, letters, 6);
    }
    bool same = br.reduce(u) == br.reduce(v);
    EXPECT_EQ(br.is_identity(u * v.inverse()), same);
    equal_pairs += same;
  }
  EXPECT_GE(equal_pairs, 200);
}

TEST(BrittonProperty, AgreesWithFaithfulAffineModel) {
  struct Case {
    const char* file;
    Rational lambda;
  };
  for (const Case& c : {Case{"bs12.gog", Rational(2)}, Case{"ascending2.gog", Rational(2)}}) {
    GraphOfGroups g = load_graph(c.file);
    Britton br(g);
    auto letters = all_letters(g);
    Affine id = affine_image(g, Word(), c.lambda);
    std::mt19937_64 rng(34);
    int identities = 0;
    for (int trial = 0; trial < 3000; ++trial) {
      Word w = random_word(rng, letters, 2 + trial % 10);
      bool model = affine_image(g, w, c.lambda) == id;
      ASSERT_EQ(br.is_identity(w), model) << c.file << " " << w.str();
      identities += model;
    }
    EXPECT_GT(identities, 10);
  }
}

TEST(BrittonProperty, IdentityImpliesTrivialHolonomy) {
  GraphOfGroups g = load_graph("specB.gog");
  Britton br(g);
  auto hd = compute_holonomy(g);
  auto rels = presentation(g).relations;
  std::mt19937_64 rng(35);
  auto letters = all_letters(g);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = random_word(rng, letters, 8);
    if (trial % 3 == 0) w = w * rels[static_cast<std::size_t>(trial) % rels.size()].relator() * w.inverse();
    if (br.is_identity(w)) { EXPECT_EQ(word_image(hd, w), QMatrix::identity(2)); }
  }
}

TEST(Geodesic, Examples) {
  GraphOfGroups g = load_graph("specA.gog");
  EXPECT_EQ(geodesic_length(g, Word(), 5).length, 0u);
  EXPECT_EQ(geodesic_length(g, Word::letter("a", 4), 6).length, 4u);
  EXPECT_EQ(geodesic_length_bfs(g, Word::letter("a", 4), 6).length, 4u);
  auto a16 = geodesic_length(g, Word::letter("a", 16), 12);
  ASSERT_TRUE(a16.length.has_value());
  EXPECT_LE(*a16.length, 9u);
  EXPECT_TRUE(geodesic_length_bfs(g, Word::letter("a", 16), 3).exceeds_radius());
  EXPECT_EQ(geodesic_length(g, Word::parse("h^-1 b h"), 5).length, 3u);
}

TEST(GeodesicProperty, VertexLayersMatchBreadthFirstBall) {
  for (const auto& [file, radius] : {std::pair{"specA.gog", 6u}, std::pair{"bs12.gog", 9u}}) {
    GraphOfGroups g = load_graph(file);
    auto ball = vertex_ball(g, radius);
    VertexLengthTable table(g);
    for (const auto& [key, d] : ball) {
      IntVector v;
      for (long x : key) v.emplace_back(x);
      EXPECT_EQ(table.length(v, radius), d) << file << " " << to_string(v);
    }
    std::size_t count = 0;
    for (std::uint64_t r = 0; r <= radius; ++r) count += table.sphere_size(r);
    EXPECT_EQ(count, ball.size()) << file;
  }
}

TEST(GeodesicProperty, TriangleInequality) {
  GraphOfGroups g = load_graph("specA.gog");
  std::mt19937_64 rng(36);
  auto letters = all_letters(g);
  for (int trial = 0; trial < 20; ++trial) {
    Word u = random_word(rng, letters, 2), v = random_word(rng, letters, 2);
    auto lu = geodesic_length_bfs(g, u, 4), lv = geodesic_length_bfs(g, v, 4), luv = geodesic_length_bfs(g, u * v, 4);
    ASSERT_TRUE(lu.length && lv.length && luv.length);
    EXPECT_LE(*luv.length, *lu.length + *lv.length);
  }
}

TEST(Distortion, CertifiedUpperBounds) {
  GraphOfGroups g = load_graph("specA.gog");
  std::vector<std::uint64_t> powers;
  for (int k = 0; k <= 10; ++k) powers.push_back(1ULL << k);
  auto prof = distortion_profile(g, iv({1, 0}), powers, 0);
  EXPECT_EQ(prof.expanding_letter, "h");
  for (std::size_t k = 0; k < prof.rows.size(); ++k) {
    const auto& row = prof.rows[k];
    EXPECT_TRUE(row.upper_bound_certified);
    EXPECT_LE(*row.upper_bound, 2 * k + 1);
    EXPECT_EQ(britton_reduce(g, *row.upper_bound_word).vertex_element(), iv({static_cast<long>(row.m), 0}));
  }
  EXPECT_LE(*prof.rows.back().upper_bound, 21u);
  EXPECT_THROW(distortion_profile(g, iv({0, 0}), powers, 0), std::invalid_argument);
}

TEST(Distortion, WindowRatioAndExactLengths) {
  GraphOfGroups g = load_graph("specA.gog");
  std::vector<std::uint64_t> powers;
  for (std::uint64_t m = 1; m <= 64; ++m) powers.push_back(m);
  auto prof = distortion_profile(g, iv({1, 0}), powers, 16);
  EXPECT_EQ(prof.rows[0].exact_length, 1u);
  for (const auto& row : prof.rows) {
    ASSERT_TRUE(row.exact_length.has_value()) << row.m;
    EXPECT_LE(*row.exact_length, *row.upper_bound);
    EXPECT_LE(*row.lower_bound, static_cast<double>(*row.exact_length) + 1e-9);
  }
  ASSERT_TRUE(prof.max_ratio.has_value());
  EXPECT_LE(*prof.max_ratio, 6.0);
  // Cross-check small powers against the breadth-first definition.
  for (std::uint64_t m : {2u, 3u, 5u, 7u, 8u})
    EXPECT_EQ(prof.rows[m - 1].exact_length, geodesic_length_bfs(g, Word::letter("a", static_cast<long>(m)), 7).length);
}
