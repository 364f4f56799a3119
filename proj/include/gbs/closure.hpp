#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbs/matrix.hpp"
#include "gbs/tits.hpp"
#include "gbs/verdict.hpp"

namespace gbs {

/// Multiplicative subgroup of the positive rationals given by generators.
struct PositiveValueGroup {
  std::vector<Rational> generators;
  /// Rank of the exponent lattice over a coprime base.
  std::size_t rank = 0;
  /// Generator when rank <= 1 (1 for the trivial group).
  std::optional<Rational> cyclic_generator;

  bool trivial() const { return rank == 0; }
  bool discrete() const { return rank <= 1; }
};

/// Exponent data of positive rationals over a gcd-free base.
PositiveValueGroup positive_value_group(const std::vector<Rational>& values);

struct ClosureDescription {
  enum class Kind { triangular, not_available };
  Kind kind = Kind::not_available;
  std::string reason;

  /// C with C^-1 g C upper triangular for every generator.
  std::optional<QMatrix> conjugator;
  std::vector<QMatrix> triangular_generators;
  /// |top-left| entries.
  PositiveValueGroup diagonal;
  /// |top-left / bottom-right| entries.
  PositiveValueGroup ratios;

  /// Nonzero off-diagonal values of unipotent elements found among the
  /// generators, their commutators and quotients with equal diagonal.
  std::vector<Rational> unipotent_seeds;
  bool unipotent_dense = false;
  /// Generator of the (cyclic) unipotent part when it is not dense; 0 when trivial.
  std::optional<Rational> unipotent_generator;
  /// seed * ratio^-k for k = 0 .. window-1, showing denominators grow.
  std::vector<Rational> evidence_window;
  std::size_t window_size = 8;
};

std::string to_string(ClosureDescription::Kind k);

/// Needs a rational invariant line; otherwise kind = not_available.
ClosureDescription closure_describe(const MatrixGroup& group, std::size_t window_size = 8);

struct CoarseDensity {
  enum class Method { exact, exact_subgroup, sampled, none };
  Verdict coarsely_dense = Verdict::undetermined;
  Method method = Method::none;
  std::string reason;
  /// Generator names of the subgroup used by exact_subgroup.
  std::vector<std::string> subgroup;
  /// Sampling data: Cartan spreads covered per mesh cell.
  std::size_t sampled_elements = 0;
  std::size_t cells = 0;
  std::size_t cells_hit = 0;
};

std::string to_string(CoarseDensity::Method m);

/// Whether the group is at finite Hausdorff distance from SL_2(R) after
/// scaling generators to determinant +-1.
CoarseDensity coarse_density(const MatrixGroup& group, int radius = 6, double mesh = 0.5);

}  // namespace gbs
