#include "gbs/quadratic.hpp"

#include <algorithm>
#include <stdexcept>

namespace gbs {

std::pair<BigInt, BigInt> squarefree_decompose(const BigInt& x) {
  if (x == 0) return {BigInt(0), BigInt(0)};
  BigInt rest = abs(x);
  BigInt square = 1;
  BigInt p2;
  for (unsigned long p = 2; p < 1000000; p += (p == 2 ? 1 : 2)) {
    p2 = p * p;
    if (p2 > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p2.get_ui()) != 0 && rest % p2 == 0) {
      rest /= p2;
      square *= p;
    }
  }
  if (rest > 1 && mpz_perfect_square_p(rest.get_mpz_t())) {
    BigInt root = sqrt(rest);
    square *= root;
    rest = 1;
  }
  if (x < 0) rest = -rest;
  return {square, rest};
}

namespace {

// Common radicand of two operands, or 1 when both are rational.
BigInt common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.is_rational()) return y.is_rational() ? BigInt(1) : y.radicand();
  if (!y.is_rational() && x.radicand() != y.radicand())
    throw std::invalid_argument("quadratic numbers from different fields");
  return x.radicand();
}

}  // namespace

QuadraticNumber::QuadraticNumber(const Rational& a, const Rational& b, const BigInt& d)
    : a_(a), b_(b), d_(d) {
  if (d_ == 0) {
    b_ = Rational(0);
    d_ = 1;
  } else {
    auto [s, r] = squarefree_decompose(d_);
    b_ *= Rational(s);
    d_ = r;
  }
  if (d_ == 1) {
    a_ += b_;
    b_ = Rational(0);
  }
  if (b_.is_zero()) d_ = 1;
}

QuadraticNumber QuadraticNumber::sqrt_of(const Rational& q) {
  // sqrt(p/r) = sqrt(p*r)/r
  return QuadraticNumber(Rational(0), Rational(BigInt(1), q.denominator()),
                         q.numerator() * q.denominator());
}

int QuadraticNumber::sign() const {
  if (is_rational()) return a_.sign();
  if (d_ < 0) throw std::domain_error("sign of a non-real quadratic number");
  int sa = a_.sign();
  int sb = b_.sign();
  if (sa >= 0 && sb >= 0) return 1;
  if (sa <= 0 && sb <= 0) return -1;
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * Rational(d_);
  return lhs > rhs ? sa : sb;
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber out = *this;
  out.b_ = -b_;
  return out;
}

QuadraticNumber QuadraticNumber::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
  QuadraticNumber out;
  out.a_ = a_ / norm;
  out.b_ = -b_ / norm;
  out.d_ = d_;
  return out;
}

std::pair<Rational, Rational> QuadraticNumber::enclose(unsigned bits) const {
  if (!is_real()) throw std::domain_error("enclosure of a non-real quadratic number");
  if (is_rational()) return {a_, a_};
  // |b| * 2^-k <= 2^-bits
  BigInt bound = abs(b_.numerator()) / b_.denominator() + 1;
  unsigned long k = bits + mpz_sizeinbase(bound.get_mpz_t(), 2) + 1;
  BigInt scaled = d_ << (2 * k);
  BigInt s = sqrt(scaled);
  BigInt scale = BigInt(1) << k;
  Rational lo_root(s, scale);
  Rational hi_root(s + 1, scale);
  Rational lo = b_.sign() > 0 ? b_ * lo_root : b_ * hi_root;
  Rational hi = b_.sign() > 0 ? b_ * hi_root : b_ * lo_root;
  return {a_ + lo, a_ + hi};
}

double QuadraticNumber::to_double() const {
  if (!is_real()) throw std::domain_error("non-real quadratic number");
  auto [lo, hi] = enclose(60);
  return ((lo + hi) / Rational(2)).to_double();
}

std::string QuadraticNumber::str() const {
  if (is_rational()) return a_.str();
  std::string out;
  if (!a_.is_zero()) out = a_.str() + (b_.sign() > 0 ? "+" : "-");
  else if (b_.sign() < 0) out = "-";
  Rational mag = b_.abs();
  if (mag != Rational(1)) out += mag.str() + "*";
  if (d_ == -1) return out + "i";
  return out + "sqrt(" + d_.get_str() + ")";
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  QuadraticNumber out;
  out.d_ = common_radicand(x, y);
  out.a_ = x.a_ + y.a_;
  out.b_ = x.b_ + y.b_;
  if (out.b_.is_zero()) out.d_ = 1;
  return out;
}

QuadraticNumber operator-(const QuadraticNumber& x) {
  QuadraticNumber out = x;
  out.a_ = -x.a_;
  out.b_ = -x.b_;
  return out;
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) { return x + (-y); }

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  QuadraticNumber out;
  out.d_ = common_radicand(x, y);
  out.a_ = x.a_ * y.a_ + x.b_ * y.b_ * Rational(out.d_);
  out.b_ = x.a_ * y.b_ + x.b_ * y.a_;
  if (out.b_.is_zero()) out.d_ = 1;
  return out;
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  return x * y.inverse();
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.b_.is_zero() || x.d_ == y.d_;
}

bool less_than(const QuadraticNumber& x, const QuadraticNumber& y) { return (y - x).sign() > 0; }

ProjPoint::ProjPoint(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (!x.is_zero()) {
    x_ = QuadraticNumber(Rational(1));
    y_ = y / x;
  } else if (!y.is_zero()) {
    x_ = QuadraticNumber(Rational(0));
    y_ = QuadraticNumber(Rational(1));
  } else {
    throw std::invalid_argument("projective point with both coordinates zero");
  }
}

std::optional<QuadraticNumber> ProjPoint::slope() const {
  if (x_.is_zero()) return std::nullopt;
  return y_;
}

std::string ProjPoint::str() const { return "(" + x_.str() + ":" + y_.str() + ")"; }

namespace {
// Lexicographic key over (a, b, d) of a quadratic number.
int compare_repr(const QuadraticNumber& p, const QuadraticNumber& q) {
  if (p.rational_part() != q.rational_part()) return p.rational_part() < q.rational_part() ? -1 : 1;
  if (p.radical_coefficient() != q.radical_coefficient())
    return p.radical_coefficient() < q.radical_coefficient() ? -1 : 1;
  if (p.is_rational()) return 0;
  if (p.radicand() != q.radicand()) return p.radicand() < q.radicand() ? -1 : 1;
  return 0;
}
}  // namespace

bool operator<(const ProjPoint& p, const ProjPoint& q) {
  // (1 : *) sorts before (0 : 1)
  int cx = compare_repr(q.x_, p.x_);
  if (cx != 0) return cx < 0;
  return compare_repr(p.y_, q.y_) < 0;
}

ProjPoint apply(const QMatrix& m, const ProjPoint& p) {
  if (m.dim() != 2) throw std::invalid_argument("projective action needs a 2x2 matrix");
  QuadraticNumber nx = QuadraticNumber(m(0, 0)) * p.x() + QuadraticNumber(m(0, 1)) * p.y();
  QuadraticNumber ny = QuadraticNumber(m(1, 0)) * p.x() + QuadraticNumber(m(1, 1)) * p.y();
  return ProjPoint(nx, ny);
}

EigenData eigen_directions(const QMatrix& m) {
  if (m.dim() != 2)
    throw std::invalid_argument("eigendirections are only available for 2x2 matrices");
  EigenData out;
  if (is_scalar(m)) {
    out.scalar = true;
    out.eigenvalues = {QuadraticNumber(m(0, 0))};
    return out;
  }
  const Rational& a = m(0, 0);
  const Rational& b = m(0, 1);
  const Rational& c = m(1, 0);
  const Rational& d = m(1, 1);
  Rational trace = a + d;
  Rational det = a * d - b * c;
  Rational disc = trace * trace - Rational(4) * det;
  QuadraticNumber root = QuadraticNumber::sqrt_of(disc);
  out.radicand = root.is_rational() ? BigInt(1) : root.radicand();
  QuadraticNumber half_trace(trace / Rational(2));
  std::vector<QuadraticNumber> lambdas;
  if (disc.is_zero()) {
    lambdas = {half_trace};
  } else {
    QuadraticNumber half_root = root * QuadraticNumber(Rational(BigInt(1), BigInt(2)));
    lambdas = {half_trace + half_root, half_trace - half_root};
  }
  out.eigenvalues = lambdas;
  for (const auto& lambda : lambdas) {
    // Kernel of (m - lambda): use whichever row is nonzero.
    QuadraticNumber r0 = QuadraticNumber(a) - lambda;
    QuadraticNumber r1 = QuadraticNumber(d) - lambda;
    if (!b.is_zero() || !r0.is_zero())
      out.directions.emplace_back(QuadraticNumber(b), -r0);
    else
      out.directions.emplace_back(-r1, QuadraticNumber(c));
  }
  std::sort(out.directions.begin(), out.directions.end());
  return out;
}

}  // namespace gbs
