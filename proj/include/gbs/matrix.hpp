#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbs/rational.hpp"

namespace gbs {

/// Dense n x n matrix over an exact ring, stored row-major.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), entries_(n * n, T(0)) {}
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    entries_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("matrix rows must form a square");
      for (const auto& v : row) entries_.push_back(v);
    }
  }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  bool is_identity() const { return *this == identity(n_); }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix dimension mismatch");
    SquareMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector dimension mismatch");
    std::vector<T> out(n_, T(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  SquareMatrix transpose() const {
    SquareMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> entries_;
};

using QMatrix = SquareMatrix<Rational>;
using IntMatrix = SquareMatrix<BigInt>;
using QVector = std::vector<Rational>;
using IntVector = std::vector<BigInt>;

QMatrix to_rational(const IntMatrix& m);

Rational determinant(const QMatrix& m);
/// Fraction-free (Bareiss) elimination, exact over the integers.
BigInt determinant(const IntMatrix& m);

/// Throws std::domain_error for singular input.
QMatrix inverse(const QMatrix& m);

/// m^k for any integer k (negative powers invert first).
QMatrix power(const QMatrix& m, long k);

bool is_scalar(const QMatrix& m);
/// Every entry of m is an integer.
bool has_integer_entries(const QMatrix& m);
/// m lies in GL_n(Z): integer entries and determinant +-1.
bool is_integral_unimodular(const QMatrix& m);

/// max_ij |m_ij - delta_ij|, exact.
Rational distance_from_identity(const QMatrix& m);
/// Maximum absolute row sum.
Rational operator_norm_inf(const QMatrix& m);

std::string to_string(const QMatrix& m);
std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);

std::ostream& operator<<(std::ostream& os, const QMatrix& m);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct QMatrixHash {
  std::size_t operator()(const QMatrix& m) const;
};

}  // namespace gbs
