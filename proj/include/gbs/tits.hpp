#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gbs/matrix.hpp"
#include "gbs/projective.hpp"
#include "gbs/quadratic.hpp"
#include "gbs/verdict.hpp"
#include "gbs/word.hpp"

namespace gbs {

/// Generators of a subgroup of GL_2(Q) with the names used in certificate
/// words. Unnamed generators are called g1, g2, ...
struct MatrixGroup {
  std::vector<QMatrix> generators;
  std::vector<std::string> names;

  MatrixGroup() = default;
  MatrixGroup(std::vector<QMatrix> gens, std::vector<std::string> names = {});

  /// Throws std::invalid_argument on an unknown name.
  QMatrix evaluate(const Word& w) const;
};

/// Schottky data: four pairwise disjoint arcs with
///   g(P - repel_g) in attract_g,  g^-1(P - attract_g) in repel_g,
/// and the same for h. Then g^k maps X2 = attract_h u repel_h into
/// X1 = attract_g u repel_g for every k != 0, and h^k maps X1 into X2,
/// so g and h generate a free group of rank 2.
struct FreePair {
  Word g_word;
  Word h_word;
  QMatrix g;
  QMatrix h;
  Arc attract_g;
  Arc repel_g;
  Arc attract_h;
  Arc repel_h;
};

struct TitsCertificate {
  enum class Kind { scalar, invariant_line, invariant_pair, free_pair };
  Kind kind = Kind::scalar;
  std::optional<ProjPoint> line;
  std::vector<ProjPoint> pair;
  std::optional<FreePair> free_pair;
};

std::string to_string(TitsCertificate::Kind k);

struct TitsResult {
  /// Virtual solvability, equivalently amenability of the closure.
  Verdict virtually_solvable = Verdict::undetermined;
  std::optional<TitsCertificate> certificate;
  std::string note;
};

struct TitsOptions {
  /// Pivot and invariant-pair candidates: reduced words up to this length.
  std::size_t pivot_word_length = 4;
  /// Ping-pong candidates: reduced words up to this length.
  std::size_t pingpong_word_length = 3;
  std::vector<long> powers{1, 2, 3, 4, 6, 8, 12, 16};
};

/// Scalar, then an invariant line among the eigendirections of the first
/// non-scalar short word, then invariant pairs from the eigendirections of
/// short words and their squares, then ping-pong. n = 2 only (throws
/// std::invalid_argument otherwise).
TitsResult virtually_solvable(const MatrixGroup& group, const TitsOptions& opts = {});

std::optional<FreePair> pingpong_certify(const MatrixGroup& group, const TitsOptions& opts = {});

/// Exact re-verification: the four arcs are pairwise disjoint, the four
/// inclusions hold, and the words evaluate to g and h.
bool verify(const FreePair& fp, const MatrixGroup& group);
/// Exact re-verification of any certificate against every generator.
bool verify(const TitsCertificate& cert, const MatrixGroup& group);

struct ShortWordCheck {
  std::size_t reduced_words = 0;
  std::size_t length_four_words = 0;
  bool ok = false;
};

/// Every freely reduced word of length 1..4 in g, h is non-identity, and of
/// the 256 words of length 4 over g, g^-1, h, h^-1 exactly those that freely
/// reduce to the empty word evaluate to the identity.
ShortWordCheck check_short_words(const FreePair& fp);

/// Freely reduced words over the generators and inverses, shortest first,
/// deduplicated by value.
std::vector<std::pair<Word, QMatrix>> short_words(const MatrixGroup& group, std::size_t max_length);

}  // namespace gbs
