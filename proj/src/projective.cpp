#include "gbs/projective.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gbs {

bool operator<(const Slope& a, const Slope& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return a.value() < b.value();
}

Slope mobius(const QMatrix& m, const Slope& s) {
  if (m.dim() != 2) throw std::invalid_argument("projective action needs a 2x2 matrix");
  Rational num, den;
  if (s.is_infinite()) {
    num = m(1, 1);
    den = m(0, 1);
  } else {
    num = m(1, 0) + m(1, 1) * s.value();
    den = m(0, 0) + m(0, 1) * s.value();
  }
  if (den.is_zero()) return Slope::infinity();
  return Slope(num / den);
}

std::string Arc::str() const {
  return std::string(start_closed ? "[" : "(") + start.str() + ", " + end.str() + (end_closed ? "]" : ")");
}

namespace {

// x strictly inside the arc from a to b.
bool strictly_between(const Slope& a, const Slope& x, const Slope& b) {
  if (a < b) return a < x && x < b;
  return b < x ? a < x : true;
}

}  // namespace

bool contains(const Arc& arc, const Slope& s) {
  if (s == arc.start) return arc.start_closed;
  if (s == arc.end) return arc.end_closed;
  return strictly_between(arc.start, s, arc.end);
}

Arc complement(const Arc& arc) { return Arc{arc.end, arc.start, !arc.end_closed, !arc.start_closed}; }

Arc image(const QMatrix& m, const Arc& arc) {
  Slope s = mobius(m, arc.start);
  Slope e = mobius(m, arc.end);
  if (determinant(m).sign() > 0) return Arc{s, e, arc.start_closed, arc.end_closed};
  return Arc{e, s, arc.end_closed, arc.start_closed};
}

bool intersects(const Arc& a, const Arc& b) {
  std::vector<Slope> marks{a.start, a.end, b.start, b.end};
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  std::vector<Slope> probes = marks;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    if (marks[i + 1].is_infinite()) probes.emplace_back(marks[i].value() + Rational(1));
    else probes.emplace_back((marks[i].value() + marks[i + 1].value()) / Rational(2));
  }
  // Gap from the largest mark around through infinity to the smallest.
  const Slope& top = marks.back();
  if (top.is_infinite()) {
    probes.emplace_back(marks.size() == 1 ? Rational(0) : marks.front().value() - Rational(1));
  } else {
    probes.emplace_back(top.value() + Rational(1));
  }
  return std::any_of(probes.begin(), probes.end(),
                     [&](const Slope& s) { return contains(a, s) && contains(b, s); });
}

bool is_subset(const Arc& inner, const Arc& outer) { return !intersects(inner, complement(outer)); }

}  // namespace gbs
