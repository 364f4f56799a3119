#pragma once

#include "gbs/matrix.hpp"

namespace gbs {

/// Logarithms of the singular values of a 2x2 matrix, log_sigma1 >= log_sigma2.
/// Both values lie within error_bound of the true ones.
struct CartanProjection {
  double log_sigma1 = 0;
  double log_sigma2 = 0;
  double error_bound = 0;

  /// log(sigma1 / sigma2): hyperbolic distance moved by the matrix on the
  /// symmetric space of SL_2(R), after scaling to determinant +-1.
  double spread() const { return log_sigma1 - log_sigma2; }
};

/// Singular values come from the exact characteristic polynomial of m^T m;
/// the square root and logarithms are enclosed by directed-rounding MPFR
/// intervals. Throws std::domain_error for singular m, std::invalid_argument
/// when n != 2.
CartanProjection cartan_projection(const QMatrix& m);

}  // namespace gbs
