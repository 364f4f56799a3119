#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbs/britton.hpp"
#include "gbs/graph_of_groups.hpp"
#include "gbs/word.hpp"

namespace gbs {

/// Word length over all vertex and stable letters with exponents +-1.
struct GeodesicResult {
  enum class Method { breadth_first, vertex_layers };
  /// nullopt: the element lies farther than the searched radius.
  std::optional<std::uint64_t> length;
  std::uint64_t radius = 0;
  Method method = Method::breadth_first;
  std::size_t states = 0;

  bool exceeds_radius() const { return !length.has_value(); }
};

std::string to_string(GeodesicResult::Method m);

/// Exact lengths of vertex-group elements in a one-vertex graph of groups.
///
/// A word equal to a vertex element splits into vertex letters and
/// excursions t^-1 u t (u equal to some y in the alpha image, contributing
/// omega alpha^-1 y) or t u t^-1 (u in the omega image, contributing
/// alpha omega^-1 y). So the spheres satisfy
///   S(r) = U_c (S(r - c) + pieces of cost c)  minus  B(r - 1),
/// where unit vectors cost 1 and an excursion over y costs |y| + 2.
class VertexLengthTable {
 public:
  /// Throws std::invalid_argument unless g has exactly one vertex.
  explicit VertexLengthTable(const GraphOfGroups& g);
  ~VertexLengthTable();
  VertexLengthTable(VertexLengthTable&&) noexcept;
  VertexLengthTable& operator=(VertexLengthTable&&) noexcept;

  /// Exact length, or nullopt when it exceeds max_radius. Extends the table
  /// as needed. Throws std::overflow_error if coordinates leave int64 range.
  std::optional<std::uint64_t> length(const IntVector& v, std::uint64_t max_radius);
  /// Number of vertex elements of length exactly r (extends the table).
  std::size_t sphere_size(std::uint64_t r);
  std::uint64_t radius_built() const;
  /// Elements of length exactly r.
  std::vector<IntVector> sphere(std::uint64_t r);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Shortcut through VertexLengthTable for vertex elements of one-vertex
/// graphs; breadth-first search over canonical normal forms otherwise.
GeodesicResult geodesic_length(const GraphOfGroups& g, const Word& w, std::uint64_t max_radius);
/// Always breadth-first; used to cross-check the layered computation.
GeodesicResult geodesic_length_bfs(const GraphOfGroups& g, const Word& w, std::uint64_t max_radius);

struct DistortionRow {
  std::uint64_t m = 0;
  /// Length of upper_bound_word, which reduces to m*v.
  std::optional<std::uint64_t> upper_bound;
  std::optional<Word> upper_bound_word;
  bool upper_bound_certified = false;
  std::optional<std::uint64_t> exact_length;
  /// log ||m v||_inf / log C, labeled analytic.
  std::optional<double> lower_bound;
  /// (exact length, else upper bound) / ln m, for m >= 2.
  std::optional<double> ratio;
};

struct DistortionProfile {
  IntVector v;
  std::vector<DistortionRow> rows;
  /// Stable letter driving the upper bounds, with its integer eigenvalue.
  std::optional<std::string> expanding_letter;
  std::optional<BigInt> eigenvalue;
  /// Per-letter growth constant C of the analytic bound.
  std::optional<double> growth_constant;
  std::optional<double> max_ratio;
  std::uint64_t exact_radius = 0;
};

/// Throws std::invalid_argument for v = 0 or a dimension mismatch.
DistortionProfile distortion_profile(const GraphOfGroups& g, const IntVector& v,
                                     const std::vector<std::uint64_t>& powers,
                                     std::uint64_t exact_radius);

}  // namespace gbs
