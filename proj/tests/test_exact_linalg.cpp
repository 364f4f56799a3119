#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "gbs/cartan.hpp"
#include "gbs/lattice.hpp"
#include "gbs/quadratic.hpp"
#include "support.hpp"

using namespace gbs;
using namespace gbs::test;

TEST(Rational, LowestTermsAndPositiveDenominator) {
  Rational r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(BigInt(5), BigInt(2)));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), std::exception);
  EXPECT_THROW(Rational::parse("1/x"), std::exception);
}

TEST(Rational, FloorAndPower) {
  EXPECT_EQ(Rational::parse("-3/2").floor(), -2);
  EXPECT_EQ(Rational::parse("7/2").floor(), 3);
  EXPECT_EQ(pow(Rational(2), -10), Rational(BigInt(1), BigInt(1024)));
  EXPECT_EQ(pow(Rational::parse("2/3"), 3), Rational::parse("8/27"));
}

TEST(Matrix, InverseDeterminantPower) {
  EXPECT_EQ(determinant(H), Rational(1));
  EXPECT_EQ(inverse(H), (QMatrix{{Rational(BigInt(1), BigInt(2)), Rational(0)}, {Rational(0), Rational(2)}}));
  EXPECT_EQ(power(P, 5), q2(1, 5, 0, 1));
  EXPECT_EQ(power(P, -3), q2(1, -3, 0, 1));
  EXPECT_EQ(power(E, 4), QMatrix::identity(2));
  EXPECT_EQ(determinant(i2(2, 1, 0, 3)), 6);
  EXPECT_THROW(inverse(q2(1, 2, 2, 4)), std::exception);
}

TEST(Matrix, Predicates) {
  EXPECT_TRUE(is_scalar(q2(3, 0, 0, 3)));
  EXPECT_FALSE(is_scalar(P));
  EXPECT_TRUE(is_integral_unimodular(E));
  EXPECT_FALSE(is_integral_unimodular(H));
  EXPECT_EQ(distance_from_identity(q2(1, 0, 0, 1)), Rational(0));
  EXPECT_EQ(distance_from_identity(P), Rational(1));
}

TEST(MatrixProperty, DeterminantIsMultiplicative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 4;
    QMatrix a = random_rational_matrix(rng, n), b = random_rational_matrix(rng, n);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}

TEST(MatrixProperty, InverseRoundTrip) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 4;
    QMatrix a = random_rational_matrix(rng, n);
    if (determinant(a).is_zero()) continue;
    EXPECT_EQ(a * inverse(a), QMatrix::identity(n));
  }
}


TEST(Lattice, IndexExamples) {
  EXPECT_EQ(sublattice_index(IntMatrix::identity(2)), 1);
  EXPECT_EQ(sublattice_index(i2(1, 0, 0, 2)), 2);
  EXPECT_EQ(sublattice_index(i2(2, 1, 0, 3)), 6);
  EXPECT_EQ(coset_count(i2(2, 1, 0, 3)), 6u);
  EXPECT_THROW(sublattice_index(i2(1, 0, 0, 0)), std::exception);
}

TEST(LatticeProperty, IndexMatchesCosetEnumeration) {
  // Exhaustive over nonsingular matrices with entries in [-2, 2] and a sample
  // with entries up to 5.
  std::size_t checked = 0;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        for (long d = -2; d <= 2; ++d) {
          IntMatrix m = i2(a, b, c, d);
          if (determinant(m) == 0) continue;
          ASSERT_EQ(sublattice_index(m), coset_count(m)) << to_string(m);
          ++checked;
        }
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> e(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix m = i2(e(rng), e(rng), e(rng), e(rng));
    if (determinant(m) == 0) continue;
    ASSERT_EQ(sublattice_index(m), coset_count(m)) << to_string(m);
    ++checked;
  }
  EXPECT_GT(checked, 400u);
}

TEST(Lattice, SolveExamples) {
  EXPECT_EQ(lattice_solve(i2(1, 0, 0, 2), iv({3, 4})), iv({3, 2}));
  EXPECT_FALSE(lattice_solve(i2(1, 0, 0, 2), iv({3, 3})).has_value());
  EXPECT_EQ(lattice_solve(i2(2, 1, 0, 3), iv({5, 3})), iv({2, 1}));
}

TEST(LatticeProperty, SolveRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> e(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + trial % 3;
    IntMatrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = e(rng);
    if (determinant(m) == 0) continue;
    IntVector y(n);
    for (auto& x : y) x = e(rng);
    EXPECT_EQ(lattice_solve(m, m.apply(y)), y);
  }
}

TEST(LatticeProperty, ResidueIsCanonical) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> e(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m = i2(e(rng), e(rng), e(rng), e(rng));
    if (determinant(m) == 0) continue;
    IntMatrix hnf = hermite_normal_form(m);
    IntVector x = iv({e(rng), e(rng)});
    IntVector shift = m.apply(iv({e(rng), e(rng)}));
    IntVector y = {x[0] + shift[0], x[1] + shift[1]};
    IntVector rx = lattice_residue(hnf, x);
    EXPECT_EQ(rx, lattice_residue(hnf, y));
    IntVector diff = {x[0] - rx[0], x[1] - rx[1]};
    EXPECT_TRUE(lattice_solve(m, diff).has_value());
  }
}

TEST(Quadratic, EigenDirectionExamples) {
  auto h = eigen_directions(H);
  ASSERT_EQ(h.directions.size(), 2u);
  std::set<std::string> hs{h.directions[0].str(), h.directions[1].str()};
  EXPECT_EQ(hs, (std::set<std::string>{"(1:0)", "(0:1)"}));

  auto p = eigen_directions(P);
  ASSERT_EQ(p.directions.size(), 1u);
  EXPECT_EQ(p.directions[0], ProjPoint(QuadraticNumber(Rational(1)), QuadraticNumber(Rational(0))));

  auto e = eigen_directions(E);
  EXPECT_EQ(e.radicand, -1);
  ASSERT_EQ(e.directions.size(), 2u);
  QuadraticNumber i(Rational(0), Rational(1), BigInt(-1));
  std::vector<ProjPoint> expected{ProjPoint(QuadraticNumber(Rational(1)), i),
                                  ProjPoint(QuadraticNumber(Rational(1)), -i)};
  for (const auto& want : expected)
    EXPECT_TRUE(std::find(e.directions.begin(), e.directions.end(), want) != e.directions.end()) << want.str();

  EXPECT_TRUE(eigen_directions(q2(3, 0, 0, 3)).scalar);
}

TEST(QuadraticProperty, DirectionsAreFixed) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    QMatrix m = random_rational_matrix(rng, 2, 7);
    if (determinant(m).is_zero() || is_scalar(m)) continue;
    for (const auto& p : eigen_directions(m).directions) EXPECT_EQ(apply(m, p), p) << to_string(m);
  }
}

TEST(Quadratic, ExactSignAndEnclosure) {
  QuadraticNumber phi(Rational::parse("1/2"), Rational::parse("1/2"), BigInt(5));
  EXPECT_EQ(phi.sign(), 1);
  EXPECT_EQ((phi - QuadraticNumber(Rational::parse("1618/1000"))).sign(), 1);
  EXPECT_EQ((phi - QuadraticNumber(Rational::parse("1619/1000"))).sign(), -1);
  auto [lo, hi] = phi.enclose(60);
  EXPECT_LE(lo, hi);
  EXPECT_LT((hi - lo).to_double(), 1e-15);
  EXPECT_NEAR(lo.to_double(), (1 + std::sqrt(5.0)) / 2, 1e-15);
}

TEST(Cartan, Examples) {
  auto id = cartan_projection(QMatrix::identity(2));
  EXPECT_NEAR(id.log_sigma1, 0, 1e-12);
  EXPECT_NEAR(id.log_sigma2, 0, 1e-12);
  auto h = cartan_projection(H);
  EXPECT_NEAR(h.log_sigma1, std::log(2.0), 1e-12);
  EXPECT_NEAR(h.log_sigma2, -std::log(2.0), 1e-12);
  auto p = cartan_projection(P);
  double phi = (1 + std::sqrt(5.0)) / 2;
  EXPECT_NEAR(p.log_sigma1, std::log(phi), 1e-12);
  EXPECT_NEAR(p.log_sigma2, -std::log(phi), 1e-12);
  EXPECT_LE(p.error_bound, 1e-12);
}

TEST(CartanProperty, InverseIsNegatedReverse) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    QMatrix m = random_rational_matrix(rng, 2, 9);
    if (determinant(m).is_zero()) continue;
    auto a = cartan_projection(m), b = cartan_projection(inverse(m));
    double tol = a.error_bound + b.error_bound + 1e-12;
    EXPECT_NEAR(b.log_sigma1, -a.log_sigma2, tol);
    EXPECT_NEAR(b.log_sigma2, -a.log_sigma1, tol);
  }
}
