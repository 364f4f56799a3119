#include <gtest/gtest.h>

#include "gbs/holonomy.hpp"
#include "support.hpp"

using namespace gbs;
using namespace gbs::test;

namespace {

// Reference product of letter images, one letter at a time.
QMatrix naive_image(const HolonomyData& hd, const Word& w) {
  QMatrix out = QMatrix::identity(hd.rank);
  for (const auto& s : expand(w)) out = out * (s.exponent > 0 ? hd.image(s.letter) : inverse(hd.image(s.letter)));
  return out;
}

}  // namespace

TEST(Holonomy, ExactImages) {
  auto a = compute_holonomy(load_graph("specA.gog"));
  ASSERT_EQ(a.stable.size(), 2u);
  EXPECT_EQ(a.image("h"), H);
  EXPECT_EQ(a.image("p"), P);
  EXPECT_EQ(a.image("a"), QMatrix::identity(2));
  EXPECT_EQ(a.image("b"), QMatrix::identity(2));

  auto b = compute_holonomy(load_graph("specB.gog"));
  ASSERT_EQ(b.stable.size(), 3u);
  EXPECT_EQ(b.image("h"), H);
  EXPECT_EQ(b.image("p"), P);
  EXPECT_EQ(b.image("e"), E);
  EXPECT_THROW(b.image("zz"), std::invalid_argument);
}

TEST(Holonomy, ConjugationIdentity) {
  auto a = compute_holonomy(load_graph("specA.gog"));
  for (int k = -5; k <= 5; ++k) {
    Word w = Word::letter("h", k) * Word::letter("p") * Word::letter("h", -k);
    EXPECT_EQ(word_image(a, w),
              (QMatrix{{Rational(1), pow(Rational(4), k)}, {Rational(0), Rational(1)}}))
        << k;
  }
  EXPECT_EQ(word_image(a, Word::parse("h^3 p h^-3")), q2(1, 64, 0, 1));
  EXPECT_EQ(word_image(a, Word::parse("a")), QMatrix::identity(2));
  EXPECT_EQ(word_image(a, Word()), QMatrix::identity(2));
  EXPECT_THROW(word_image(a, Word::parse("q")), std::invalid_argument);
}

TEST(HolonomyProperty, RelatorsMapToIdentity) {
  for (const GoGSpec& s : {load_spec("specA.gog"), load_spec("specB.gog"), load_spec("bs12.gog"),
                           load_spec("ascending2.gog"), two_vertex_spec()}) {
    GraphOfGroups g = GraphOfGroups::build(s);
    auto hd = compute_holonomy(g);
    for (const auto& r : presentation(g).relations)
      EXPECT_EQ(word_image(hd, r.relator()), QMatrix::identity(g.rank())) << r.text;
  }
}

TEST(HolonomyProperty, WordImageIsHomomorphism) {
  GraphOfGroups g = load_graph("specB.gog");
  auto hd = compute_holonomy(g);
  std::mt19937_64 rng(21);
  auto letters = all_letters(g);
  for (int trial = 0; trial < 200; ++trial) {
    Word u = random_word(rng, letters, 1 + trial % 9);
    Word v = random_word(rng, letters, 1 + trial % 7);
    EXPECT_EQ(word_image(hd, u * v), word_image(hd, u) * word_image(hd, v));
    EXPECT_EQ(word_image(hd, u), naive_image(hd, u));
  }
}

TEST(HolonomyProperty, FlippingAnEdgeInvertsItsImage) {
  for (const GoGSpec& s : {load_spec("specB.gog"), two_vertex_spec()}) {
    GraphOfGroups g = GraphOfGroups::build(s);
    auto base = compute_holonomy(g);
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
      if (g.edges()[i].in_tree) continue;
      GoGSpec flipped = s;
      auto& e = flipped.edges[i];
      std::swap(e.source, e.target);
      std::swap(e.alpha, e.omega);
      flipped.spanning_tree.reset();
      auto other = compute_holonomy(GraphOfGroups::build(flipped));
      EXPECT_EQ(other.image(e.name), inverse(base.image(e.name)));
    }
  }
}

TEST(Discreteness, WitnessForSpecA) {
  auto probe = non_discreteness_witness(compute_holonomy(load_graph("specA.gog")), Rational::parse("1/1000"), 12);
  ASSERT_EQ(probe.outcome, DiscretenessProbe::Outcome::witness);
  EXPECT_EQ(*probe.witness, Word::parse("h^-5 p h^5"));
  EXPECT_EQ(*probe.image, (QMatrix{{Rational(1), Rational::parse("1/1024")}, {Rational(0), Rational(1)}}));
  EXPECT_EQ(*probe.distance, Rational::parse("1/1024"));
}

TEST(Discreteness, IntegralShortcutAndNoneFound) {
  GoGSpec pe;
  pe.rank = 2;
  pe.vertices = {"X"};
  pe.edges.push_back({"p", "X", "X", IntMatrix::identity(2), i2(1, 1, 0, 1)});
  pe.edges.push_back({"e", "X", "X", IntMatrix::identity(2), i2(0, 1, -1, 0)});
  auto integral = non_discreteness_witness(compute_holonomy(GraphOfGroups::build(pe)), Rational::parse("1/1000"), 12);
  EXPECT_EQ(integral.outcome, DiscretenessProbe::Outcome::discrete_integral);

  GoGSpec h;
  h.rank = 2;
  h.vertices = {"X"};
  h.edges.push_back({"h", "X", "X", i2(1, 0, 0, 2), i2(2, 0, 0, 1)});
  auto none = non_discreteness_witness(compute_holonomy(GraphOfGroups::build(h)), Rational::parse("1/1000"), 12);
  EXPECT_EQ(none.outcome, DiscretenessProbe::Outcome::none_found);
  EXPECT_EQ(none.words_examined, 24u);
}

TEST(Discreteness, LargeEntriesFallBackToExactArithmetic) {
  GoGSpec s;
  s.rank = 2;
  s.vertices = {"X"};
  // Entries near 2^62 overflow machine words after one product.
  BigInt big = BigInt(1) << 62;
  s.edges.push_back({"h", "X", "X", IntMatrix{{BigInt(1), BigInt(0)}, {BigInt(0), big}},
                     IntMatrix{{big, BigInt(0)}, {BigInt(0), BigInt(1)}}});
  s.edges.push_back({"p", "X", "X", IntMatrix::identity(2), i2(1, 1, 0, 1)});
  auto probe = non_discreteness_witness(compute_holonomy(GraphOfGroups::build(s)), Rational::parse("1/1000"), 3);
  ASSERT_EQ(probe.outcome, DiscretenessProbe::Outcome::witness);
  EXPECT_EQ(*probe.witness, Word::parse("h^-1 p h"));
}
