#include "gbs/lattice.hpp"

#include <stdexcept>

namespace gbs {

BigInt sublattice_index(const IntMatrix& m) {
  BigInt d = determinant(m);
  if (d == 0) throw std::domain_error("edge inclusion not injective");
  return abs(d);
}

std::optional<IntVector> lattice_solve(const IntMatrix& m, const IntVector& x) {
  if (x.size() != m.dim()) throw std::invalid_argument("vector dimension mismatch");
  QMatrix inv = inverse(to_rational(m));
  QVector qx(x.begin(), x.end());
  QVector y = inv.apply(qx);
  IntVector out;
  out.reserve(y.size());
  for (const auto& v : y) {
    if (!v.is_integer()) return std::nullopt;
    out.push_back(v.numerator());
  }
  return out;
}

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// col_j <- col_j - q * col_k
void column_axpy(IntMatrix& h, std::size_t j, std::size_t k, const BigInt& q) {
  for (std::size_t r = 0; r < h.dim(); ++r) h(r, j) -= q * h(r, k);
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (determinant(m) == 0) throw std::domain_error("edge inclusion not injective");
  IntMatrix h = m;
  for (std::size_t row = 0; row < n; ++row) {
    // Euclid across columns row..n-1 until only column `row` is nonzero in this row.
    for (;;) {
      std::size_t pivot = n;
      for (std::size_t c = row; c < n; ++c)
        if (h(row, c) != 0 && (pivot == n || abs(h(row, c)) < abs(h(row, pivot)))) pivot = c;
      bool done = true;
      for (std::size_t c = row; c < n; ++c) {
        if (c == pivot || h(row, c) == 0) continue;
        done = false;
        column_axpy(h, c, pivot, floor_div(h(row, c), h(row, pivot)));
      }
      if (done) {
        if (pivot != row)
          for (std::size_t r = 0; r < n; ++r) std::swap(h(r, row), h(r, pivot));
        break;
      }
    }
    if (h(row, row) < 0)
      for (std::size_t r = 0; r < n; ++r) h(r, row) = -h(r, row);
    for (std::size_t c = 0; c < row; ++c) column_axpy(h, c, row, floor_div(h(row, c), h(row, row)));
  }
  return h;
}

IntVector lattice_residue(const IntMatrix& hnf, const IntVector& x) {
  IntVector r = x;
  for (std::size_t i = 0; i < hnf.dim(); ++i) {
    BigInt q = floor_div(r[i], hnf(i, i));
    if (q == 0) continue;
    for (std::size_t k = i; k < hnf.dim(); ++k) r[k] -= q * hnf(k, i);
  }
  return r;
}

}  // namespace gbs
