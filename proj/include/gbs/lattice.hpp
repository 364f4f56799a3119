#pragma once

#include <optional>

#include "gbs/matrix.hpp"

namespace gbs {

/// Index [Z^n : m Z^n] = |det m|. Throws std::domain_error("edge inclusion
/// not injective") for singular m.
BigInt sublattice_index(const IntMatrix& m);

/// The y with m y = x when x lies in m Z^n, nullopt otherwise.
std::optional<IntVector> lattice_solve(const IntMatrix& m, const IntVector& x);

/// Column-style Hermite normal form: h = m u for unimodular u, h lower
/// triangular with positive diagonal and 0 <= h(i,j) < h(i,i) for j < i.
/// Columns of h generate the same lattice as columns of m.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Canonical representative of x + hnf Z^n: coordinates satisfy
/// 0 <= r_i < hnf(i,i). hnf must come from hermite_normal_form.
IntVector lattice_residue(const IntMatrix& hnf, const IntVector& x);

}  // namespace gbs
