#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbs/closure.hpp"
#include "gbs/geodesic.hpp"
#include "gbs/graph_of_groups.hpp"
#include "gbs/holonomy.hpp"
#include "gbs/tits.hpp"
#include "gbs/verdict.hpp"

namespace gbs {

enum class WhyteCase { proper_2a, amenable_2b, folded_2c, out_of_scope, undetermined };
std::string to_string(WhyteCase c);

/// One step of reasoning behind a verdict.
struct Evidence {
  std::string topic;
  std::string detail;
};

struct ClassificationReport {
  BassSerreLocalData bass_serre;
  std::size_t underlying_rank = 0;
  Verdict amenable = Verdict::undetermined;
  std::string amenable_reason;
  WhyteCase whyte_case = WhyteCase::undetermined;
  /// Only for case 2a: whether the holonomy stayed injective on the free
  /// group of stable letters up to the checked length.
  std::optional<bool> injectivity_consistent;

  Verdict haagerup = Verdict::undetermined;
  Verdict weakly_amenable = Verdict::undetermined;
  /// "1", "not weakly amenable" or "undetermined".
  std::string cowling_haagerup = "undetermined";
  std::string cv_note;

  HolonomyData holonomy;
  std::optional<DiscretenessProbe> discreteness;
  std::optional<TitsResult> tits;
  std::vector<Evidence> evidence;

  bool decided() const;
};

struct ClassifyOptions {
  Rational epsilon{BigInt(1), BigInt(1000)};
  int witness_word_length = 12;
  /// Free-group words checked for the 2a injectivity flag.
  int injectivity_word_length = 6;
};

/// Fills the ends, amenability and Whyte fields.
ClassificationReport whyte_classify(const GraphOfGroups& g, const ClassifyOptions& opts = {});
/// Fills the Haagerup, weak amenability and Cowling-Haagerup fields.
void cv_properties(const GraphOfGroups& g, ClassificationReport& report);
/// Both of the above.
ClassificationReport classify(const GraphOfGroups& g, const ClassifyOptions& opts = {});

struct QIVerdict {
  enum class Kind { quasi_isometric, not_quasi_isometric, undetermined };
  Kind verdict = Kind::undetermined;
  std::vector<Evidence> reasons;
  std::optional<CoarseDensity> density_a;
  std::optional<CoarseDensity> density_b;
};

std::string to_string(QIVerdict::Kind k);

/// Throws std::invalid_argument when the ranks differ.
QIVerdict qi_compare(const GraphOfGroups& a, const GraphOfGroups& b, const ClassifyOptions& opts = {});

struct CompressionReport {
  Rational p;
  enum class Kind { value, zero, undetermined };
  Kind kind = Kind::undetermined;
  std::optional<Rational> alpha;
  Verdict amenable_closure = Verdict::undetermined;
  Verdict cocompact_in_connected = Verdict::undetermined;
  Verdict exponential_distortion = Verdict::undetermined;
  /// Stable letter whose holonomy has spectral radius > 1.
  std::optional<std::string> distortion_letter;
  std::vector<Evidence> reasons;
};

/// Throws std::invalid_argument for p < 1.
CompressionReport compression_report(const GraphOfGroups& g, const Rational& p);

}  // namespace gbs
