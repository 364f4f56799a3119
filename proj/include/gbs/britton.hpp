#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gbs/graph_of_groups.hpp"
#include "gbs/lattice.hpp"
#include "gbs/word.hpp"

namespace gbs {

/// A reduced path g0 e1 g1 ... ek gk in the graph of groups, starting and
/// ending at the base vertex. Steps run along tree edges as well as stable
/// edges; every g_i except the last is the canonical coset representative
/// modulo the image of the edge group it is about to cross.
struct NormalForm {
  std::vector<IntVector> parts;
  std::vector<EdgeStep> steps;

  bool is_identity() const;
  /// The vertex vector when the element lies in the base vertex group.
  std::optional<IntVector> vertex_element() const;
  /// Number of stable-letter crossings.
  std::size_t stable_length(const GraphOfGroups& g) const;

  /// Word in the presentation alphabet (tree crossings are omitted).
  Word to_word(const GraphOfGroups& g) const;
  /// "h^-1 (0,1) h": vertex vectors in coordinates, stable letters by name.
  std::string str(const GraphOfGroups& g) const;
  /// Structural key, used for hashing.
  std::string key() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& nf) const;
};

/// Reduction engine bound to one graph of groups. Caches the Hermite forms
/// of the edge images.
class Britton {
 public:
  explicit Britton(const GraphOfGroups& g);

  const GraphOfGroups& graph() const { return *g_; }

  NormalForm identity() const;
  /// Throws std::invalid_argument on an unknown letter.
  NormalForm reduce(const Word& w) const;
  /// nf * letter^sign, canonical.
  NormalForm multiply(const NormalForm& nf, const std::string& letter, int sign) const;
  /// Canonical form of the base vertex element with coordinates v.
  NormalForm vertex_element(const IntVector& v) const;
  bool is_identity(const Word& w) const { return reduce(w).is_identity(); }

 private:
  // Uncanonicalized reduced path under construction.
  struct Path {
    std::vector<IntVector> parts;
    std::vector<EdgeStep> steps;
  };
  void append_step(Path& p, EdgeStep step) const;
  void append_letter(Path& p, const std::string& letter, int sign) const;
  NormalForm canonical(Path p) const;
  Path path_of(const NormalForm& nf) const;

  const GraphOfGroups* g_;
  std::vector<IntMatrix> alpha_hnf_;
  std::vector<IntMatrix> omega_hnf_;
};

NormalForm britton_reduce(const GraphOfGroups& g, const Word& w);
bool is_identity(const GraphOfGroups& g, const Word& w);

}  // namespace gbs
