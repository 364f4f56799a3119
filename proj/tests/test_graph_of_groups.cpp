#include <gtest/gtest.h>

#include <algorithm>

#include "gbs/graph_of_groups.hpp"
#include "gbs/lattice.hpp"
#include "support.hpp"

using namespace gbs;
using namespace gbs::test;

namespace {

bool has_violation(const GoGSpec& s, const std::string& needle) {
  auto r = validate(s);
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

GoGSpec one_loop(const IntMatrix& alpha, const IntMatrix& omega) {
  GoGSpec s;
  s.rank = static_cast<int>(alpha.dim());
  s.vertices = {"X"};
  s.edges.push_back({"t", "X", "X", alpha, omega});
  return s;
}

// Oracle degree: sum over edge ends of coset counts.
std::vector<BigInt> oracle_degrees(const GoGSpec& s) {
  std::vector<BigInt> out(s.vertices.size(), BigInt(0));
  auto index_of = [&](const std::string& v) {
    return static_cast<std::size_t>(std::find(s.vertices.begin(), s.vertices.end(), v) - s.vertices.begin());
  };
  for (const auto& e : s.edges) {
    out[index_of(e.source)] += static_cast<unsigned long>(coset_count(e.alpha));
    out[index_of(e.target)] += static_cast<unsigned long>(coset_count(e.omega));
  }
  return out;
}

}  // namespace

TEST(Validate, ShippedSpecsAreValid) {
  for (const char* f : {"specA.gog", "specB.gog", "bs12.gog", "ascending2.gog"})
    EXPECT_TRUE(validate(load_spec(f)).ok()) << f;
  EXPECT_TRUE(validate(two_vertex_spec()).ok());
}

TEST(Validate, ReportsViolations) {
  GoGSpec a = load_spec("specA.gog");

  GoGSpec singular = a;
  singular.edges[0].alpha = i2(1, 0, 0, 0);
  EXPECT_TRUE(has_violation(singular, "edge inclusion not injective"));

  GoGSpec split = a;
  split.vertices.push_back("Z");
  EXPECT_TRUE(has_violation(split, "graph not connected"));

  GoGSpec dims = a;
  dims.edges[1].omega = IntMatrix::identity(3);
  EXPECT_TRUE(has_violation(dims, "dimension mismatch"));

  GoGSpec unknown = a;
  unknown.edges[0].target = "Q";
  EXPECT_TRUE(has_violation(unknown, "unknown vertex"));

  GoGSpec dup = a;
  dup.edges[1].name = "h";
  EXPECT_FALSE(validate(dup).ok());

  GoGSpec tree = two_vertex_spec();
  tree.spanning_tree = std::vector<std::string>{"f", "k"};
  EXPECT_TRUE(has_violation(tree, "bad spanning tree"));

  GoGSpec zero = a;
  zero.rank = 0;
  EXPECT_FALSE(validate(zero).ok());

  EXPECT_THROW(GraphOfGroups::build(singular), SpecError);
}

TEST(Presentation, ReproducesTheDisplayedPresentations) {
  EXPECT_EQ(presentation(load_graph("specA.gog")).str(), "<a,b,h,p | ab=ba, a^h=a^2, (b^2)^h=b, a^p=a, b^p=ab>");
  EXPECT_EQ(presentation(load_graph("specB.gog")).str(),
            "<a,b,h,p,e | ab=ba, a^h=a^2, (b^2)^h=b, a^p=a, b^p=ab, a^e=b^-1, b^e=a>");
  EXPECT_EQ(presentation(load_graph("bs12.gog")).str(), "<a,t | a^t=a^2>");
}

TEST(PresentationProperty, GeneratorAndRelatorCounts) {
  for (const GoGSpec& s : {load_spec("specA.gog"), load_spec("specB.gog"), load_spec("bs12.gog"), two_vertex_spec()}) {
    GraphOfGroups g = GraphOfGroups::build(s);
    Presentation p = presentation(g);
    std::size_t n = g.rank(), v = g.vertex_count(), e = g.edges().size();
    std::size_t tree_edges = v - 1;
    EXPECT_EQ(p.generators.size(), n * v + (e - tree_edges));
    EXPECT_EQ(p.relations.size(), v * n * (n - 1) / 2 + n * e);
  }
}

TEST(Presentation, MultiVertexUsesIdentifications) {
  GraphOfGroups g = GraphOfGroups::build(two_vertex_spec());
  Presentation p = presentation(g);
  EXPECT_EQ(p.generators.size(), 5u);
  std::vector<std::string> texts;
  for (const auto& r : p.relations) texts.push_back(r.text);
  // The tree edge f identifies a_X with a_Y^3 and b_X^2 with b_Y.
  EXPECT_NE(std::find(texts.begin(), texts.end(), "a_X=a_Y^3"), texts.end()) << p.str();
  EXPECT_NE(std::find(texts.begin(), texts.end(), "b_X^2=b_Y"), texts.end()) << p.str();
}

TEST(BassSerre, Degrees) {
  auto a = bass_serre_degrees(load_graph("specA.gog"));
  ASSERT_EQ(a.degrees.size(), 1u);
  EXPECT_EQ(a.degrees[0], 6);
  EXPECT_EQ(a.ends, EndsClass::infinitely_many);

  auto b = bass_serre_degrees(load_graph("specB.gog"));
  EXPECT_EQ(b.degrees[0], 8);
  EXPECT_EQ(b.ends, EndsClass::infinitely_many);

  auto line = bass_serre_degrees(GraphOfGroups::build(one_loop(IntMatrix::identity(2), IntMatrix::identity(2))));
  EXPECT_EQ(line.degrees[0], 2);
  EXPECT_EQ(line.ends, EndsClass::two_ended);

  GoGSpec star;
  star.rank = 2;
  star.vertices = {"X", "Y"};
  star.edges.push_back({"f", "X", "Y", IntMatrix::identity(2), i2(2, 0, 0, 1)});
  EXPECT_EQ(bass_serre_degrees(GraphOfGroups::build(star)).ends, EndsClass::bounded);
}

TEST(BassSerreProperty, DegreesMatchCosetOracle) {
  for (const GoGSpec& s : {load_spec("specA.gog"), load_spec("specB.gog"), load_spec("ascending2.gog"), two_vertex_spec()})
    EXPECT_EQ(bass_serre_degrees(GraphOfGroups::build(s)).degrees, oracle_degrees(s));
}

TEST(BassSerreProperty, InvariantUnderReorientation) {
  for (const GoGSpec& s : {load_spec("specA.gog"), load_spec("specB.gog"), two_vertex_spec()}) {
    auto base = bass_serre_degrees(GraphOfGroups::build(s));
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
      GoGSpec flipped = s;
      auto& e = flipped.edges[i];
      std::swap(e.source, e.target);
      std::swap(e.alpha, e.omega);
      auto other = bass_serre_degrees(GraphOfGroups::build(flipped));
      EXPECT_EQ(other.degrees, base.degrees);
      EXPECT_EQ(other.ends, base.ends);
    }
  }
}

TEST(UnderlyingRank, Examples) {
  EXPECT_EQ(underlying_rank(load_graph("specA.gog")), 2u);
  EXPECT_EQ(underlying_rank(load_graph("specB.gog")), 3u);
  GoGSpec tree;
  tree.rank = 1;
  tree.vertices = {"X", "Y", "Z"};
  tree.edges.push_back({"f", "X", "Y", IntMatrix{{BigInt(2)}}, IntMatrix{{BigInt(3)}}});
  tree.edges.push_back({"g", "Y", "Z", IntMatrix{{BigInt(2)}}, IntMatrix{{BigInt(5)}}});
  EXPECT_EQ(underlying_rank(GraphOfGroups::build(tree)), 0u);
}

TEST(UnderlyingRankProperty, IndependentOfSpanningTree) {
  GoGSpec s = two_vertex_spec();
  s.edges.push_back({"m", "X", "Y", i2(2, 0, 0, 1), IntMatrix::identity(2)});
  for (const char* t : {"f", "k", "m"}) {
    GoGSpec chosen = s;
    chosen.spanning_tree = std::vector<std::string>{t};
    GraphOfGroups g = GraphOfGroups::build(chosen);
    EXPECT_EQ(underlying_rank(g), 2u);
    EXPECT_EQ(g.stable_edges().size(), 2u);
  }
}
