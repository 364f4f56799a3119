#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbs/matrix.hpp"
#include "gbs/rational.hpp"

namespace gbs {

/// Writes x = s^2 * r with r squarefree (sign carried by r). Trial division
/// handles factors below 10^6; a remaining perfect square is also extracted.
std::pair<BigInt, BigInt> squarefree_decompose(const BigInt& x);

/// a + b*sqrt(d) with d squarefree. When b == 0 the value is the rational a
/// and d carries no meaning.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const Rational& a) : a_(a) {}
  QuadraticNumber(const Rational& a, const Rational& b, const BigInt& d);

  /// sqrt(q) for a rational q, expressed over Q(sqrt(squarefree part)).
  static QuadraticNumber sqrt_of(const Rational& q);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_coefficient() const { return b_; }
  const BigInt& radicand() const { return d_; }

  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_real() const { return is_rational() || d_ > 0; }

  /// Sign of a real value, exact. Throws for non-real values.
  int sign() const;
  QuadraticNumber conjugate() const;
  /// Throws std::domain_error on zero.
  QuadraticNumber inverse() const;
  /// Dyadic enclosure [lo, hi] of a real value with hi - lo <= 2^-bits.
  std::pair<Rational, Rational> enclose(unsigned bits) const;
  double to_double() const;

  std::string str() const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x);
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);

 private:
  Rational a_{0};
  Rational b_{0};
  BigInt d_{1};
};

/// Real values compare exactly.
bool less_than(const QuadraticNumber& x, const QuadraticNumber& y);

/// Point (x : y) of the projective line over Q(sqrt d). Stored canonically:
/// the first nonzero coordinate is 1.
class ProjPoint {
 public:
  /// Throws std::invalid_argument when both coordinates are zero.
  ProjPoint(const QuadraticNumber& x, const QuadraticNumber& y);

  const QuadraticNumber& x() const { return x_; }
  const QuadraticNumber& y() const { return y_; }
  bool is_real() const { return x_.is_real() && y_.is_real(); }
  bool is_rational() const { return x_.is_rational() && y_.is_rational(); }
  /// y/x, or nullopt for the point at infinity (x = 0).
  std::optional<QuadraticNumber> slope() const;

  std::string str() const;

  friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
    return p.x_ == q.x_ && p.y_ == q.y_;
  }
  /// Deterministic total order on canonical representatives.
  friend bool operator<(const ProjPoint& p, const ProjPoint& q);

 private:
  QuadraticNumber x_;
  QuadraticNumber y_;
};

/// m acting on column vectors, n = 2.
ProjPoint apply(const QMatrix& m, const ProjPoint& p);

struct EigenData {
  bool scalar = false;
  /// Squarefree radicand of the discriminant (1 when eigenvalues are rational).
  BigInt radicand{1};
  std::vector<QuadraticNumber> eigenvalues;
  /// Canonically ordered; size 0 (scalar), 1 (repeated eigenvalue) or 2.
  std::vector<ProjPoint> directions;
};

/// Fixed points of a 2x2 invertible matrix on the projective line over
/// Q(sqrt disc). Throws std::invalid_argument for n != 2.
EigenData eigen_directions(const QMatrix& m);

}  // namespace gbs
