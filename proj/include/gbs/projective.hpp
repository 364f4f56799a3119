#pragma once

#include <optional>
#include <string>

#include "gbs/matrix.hpp"
#include "gbs/rational.hpp"

namespace gbs {

/// Point of the rational projective line in the slope chart s = y/x; the
/// point (0:1) is infinity.
class Slope {
 public:
  Slope() = default;
  Slope(const Rational& s) : value_(s) {}
  static Slope infinity() { return Slope(std::nullopt); }

  bool is_infinite() const { return !value_; }
  const Rational& value() const { return *value_; }
  std::string str() const { return value_ ? value_->str() : "inf"; }

  friend bool operator==(const Slope&, const Slope&) = default;
  /// Linear order with infinity above every rational.
  friend bool operator<(const Slope& a, const Slope& b);

 private:
  explicit Slope(std::optional<Rational> v) : value_(std::move(v)) {}
  std::optional<Rational> value_{Rational(0)};
};

/// Image of a slope under m = [[a,b],[c,d]] acting on column vectors:
/// s -> (c + d s) / (a + b s).
Slope mobius(const QMatrix& m, const Slope& s);

/// The points met going from start to end in the direction of increasing
/// slope (passing through infinity when end < start). start != end.
struct Arc {
  Slope start;
  Slope end;
  bool start_closed = true;
  bool end_closed = true;

  std::string str() const;
  friend bool operator==(const Arc&, const Arc&) = default;
};

bool contains(const Arc& arc, const Slope& s);
Arc complement(const Arc& arc);
/// m(arc); orientation reverses when det m < 0.
Arc image(const QMatrix& m, const Arc& arc);
/// Exact: tests every endpoint and one interior point of each gap between
/// consecutive endpoints.
bool intersects(const Arc& a, const Arc& b);
bool is_subset(const Arc& inner, const Arc& outer);

}  // namespace gbs
