#include "gbs/matrix.hpp"

#include <sstream>

namespace gbs {

QMatrix to_rational(const IntMatrix& m) {
  QMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

Rational determinant(const QMatrix& m) {
  const std::size_t n = m.dim();
  QMatrix a = m;
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      Rational f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

BigInt determinant(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(swap_row, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

QMatrix inverse(const QMatrix& m) {
  const std::size_t n = m.dim();
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("matrix is singular");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    Rational p = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Rational f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

QMatrix power(const QMatrix& m, long k) {
  if (k < 0) return power(inverse(m), -k);
  QMatrix result = QMatrix::identity(m.dim());
  QMatrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

bool is_scalar(const QMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (i != j && !m(i, j).is_zero()) return false;
      if (i == j && m(i, i) != m(0, 0)) return false;
    }
  return true;
}

bool has_integer_entries(const QMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (!m(i, j).is_integer()) return false;
  return true;
}

bool is_integral_unimodular(const QMatrix& m) {
  return has_integer_entries(m) && determinant(m).abs() == Rational(1);
}

Rational distance_from_identity(const QMatrix& m) {
  Rational best(0);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      Rational d = (m(i, j) - Rational(i == j ? 1 : 0)).abs();
      if (d > best) best = d;
    }
  return best;
}

Rational operator_norm_inf(const QMatrix& m) {
  Rational best(0);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Rational row(0);
    for (std::size_t j = 0; j < m.dim(); ++j) row += m(i, j).abs();
    if (row > best) best = row;
  }
  return best;
}

namespace {
template <typename T, typename F>
std::string render(const SquareMatrix<T>& m, F&& fmt) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) os << ',';
      os << fmt(m(i, j));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}
}  // namespace

std::string to_string(const QMatrix& m) {
  return render(m, [](const Rational& r) { return r.str(); });
}
std::string to_string(const IntMatrix& m) {
  return render(m, [](const BigInt& v) { return v.get_str(); });
}
std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const QMatrix& m) { return os << to_string(m); }
std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << to_string(m); }

namespace {

std::size_t mix(std::size_t seed, std::size_t v) { return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)); }

std::size_t hash_mpz(mpz_srcptr z) {
  std::size_t h = static_cast<std::size_t>(z->_mp_size);
  if (z->_mp_size != 0) h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z, 0)));
  return h;
}

}  // namespace

std::size_t QMatrixHash::operator()(const QMatrix& m) const {
  std::size_t h = m.dim();
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) {
      mpq_srcptr q = m(r, c).mpq().get_mpq_t();
      h = mix(mix(h, hash_mpz(mpq_numref(q))), hash_mpz(mpq_denref(q)));
    }
  return h;
}

}  // namespace gbs
