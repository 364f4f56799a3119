#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbs/graph_of_groups.hpp"
#include "gbs/matrix.hpp"
#include "gbs/word.hpp"

namespace gbs {

struct StableImage {
  std::string letter;
  QMatrix matrix;
};

/// Holonomy of a graph of groups, read in the coordinates of the base vertex.
struct HolonomyData {
  std::size_t rank = 0;
  std::size_t base_vertex = 0;
  /// Stable letters in generator order.
  std::vector<StableImage> stable;
  /// Image of every generator; vertex letters map to the identity.
  std::map<std::string, QMatrix> letters;

  std::vector<QMatrix> image_generators() const;
  std::vector<std::string> stable_letters() const;
  /// Throws std::invalid_argument for an unknown letter.
  const QMatrix& image(const std::string& letter) const;
};

/// hol(t_e) = F_w * omega * alpha^-1 * F_u^-1 for a stable edge u -> w, where
/// F_v converts coordinates of vertex v into base coordinates along the
/// spanning tree.
HolonomyData compute_holonomy(const GraphOfGroups& g);

/// Product of letter images in word order. Throws std::invalid_argument on
/// an unknown letter.
QMatrix word_image(const HolonomyData& hd, const Word& w);

struct DiscretenessProbe {
  enum class Outcome { witness, discrete_integral, none_found };
  Outcome outcome = Outcome::none_found;
  std::optional<Word> witness;
  std::optional<QMatrix> image;
  /// max |image - identity| entrywise, exact.
  std::optional<Rational> distance;
  Rational epsilon;
  int max_word_length = 0;
  std::size_t words_examined = 0;
};

std::string to_string(DiscretenessProbe::Outcome o);

/// Shortest word over stable letters whose image is not the identity but lies
/// within epsilon of it. Letters are tried in name order, each before its
/// inverse, so the first witness is the least among the shortest. Words are
/// deduplicated by image.
DiscretenessProbe non_discreteness_witness(const HolonomyData& hd, const Rational& epsilon,
                                           int max_word_length);

}  // namespace gbs
