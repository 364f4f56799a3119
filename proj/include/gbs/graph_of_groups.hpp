#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gbs/matrix.hpp"
#include "gbs/word.hpp"

namespace gbs {

struct EdgeSpec {
  std::string name;
  std::string source;
  std::string target;
  /// Inclusion of the edge group into the source vertex group.
  IntMatrix alpha;
  /// Inclusion of the edge group into the target vertex group.
  IntMatrix omega;

  friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// A finite graph of Z^n groups as written by the user. Nothing is checked
/// until validate() or GraphOfGroups::build().
struct GoGSpec {
  int rank = 0;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  /// Edge names of a spanning tree; nullopt selects one automatically.
  std::optional<std::vector<std::string>> spanning_tree;

  friend bool operator==(const GoGSpec&, const GoGSpec&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Never throws; every problem is listed in the report.
ValidationReport validate(const GoGSpec& spec);

class SpecError : public std::runtime_error {
 public:
  explicit SpecError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// One step along an edge: forward goes source -> target.
struct EdgeStep {
  std::size_t edge = 0;
  bool forward = true;

  friend bool operator==(const EdgeStep&, const EdgeStep&) = default;
};

struct Generator {
  enum class Kind { vertex_letter, stable_letter };
  Kind kind;
  std::string name;
  std::size_t vertex = 0;      // vertex letters
  std::size_t coordinate = 0;  // vertex letters
  std::size_t edge = 0;        // stable letters
};

/// Validated graph of groups with resolved indices and a fixed spanning tree.
class GraphOfGroups {
 public:
  struct Edge {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
    IntMatrix alpha;
    IntMatrix omega;
    bool in_tree = false;
  };

  /// Throws SpecError when validate(spec) reports violations.
  static GraphOfGroups build(const GoGSpec& spec);

  const GoGSpec& spec() const { return spec_; }
  std::size_t rank() const { return static_cast<std::size_t>(spec_.rank); }
  std::size_t vertex_count() const { return spec_.vertices.size(); }
  const std::string& vertex_name(std::size_t v) const { return spec_.vertices[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Lexicographically least vertex name.
  std::size_t base_vertex() const { return base_; }

  /// Edge steps of the tree path from the base vertex to v.
  const std::vector<EdgeStep>& tree_path(std::size_t v) const { return tree_paths_[v]; }
  std::vector<std::size_t> stable_edges() const;

  /// Vertex letters (per vertex, in coordinate order) then stable letters.
  const std::vector<Generator>& generators() const { return generators_; }
  /// nullptr when unknown.
  const Generator* find_generator(const std::string& name) const;
  /// Names of the vertex letters of v.
  std::vector<std::string> vertex_letters(std::size_t v) const;

 private:
  GoGSpec spec_;
  std::vector<Edge> edges_;
  std::size_t base_ = 0;
  std::vector<std::vector<EdgeStep>> tree_paths_;
  std::vector<Generator> generators_;
  std::unordered_map<std::string, std::size_t> generator_index_;
};

struct Relation {
  Word lhs;
  Word rhs;
  /// Human form, e.g. "a^h=a^2".
  std::string text;

  Word relator() const { return lhs * rhs.inverse(); }
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Relation> relations;

  /// "<a,b,h,p | ab=ba, a^h=a^2, ...>"
  std::string str() const;
};

/// Vertex letters per vertex, one commutator per pair of letters, and for
/// each edge-group basis vector c either the conjugation t^-1 alpha(c) t =
/// omega(c) (stable letters) or the identification alpha(c) = omega(c) (tree
/// edges).
Presentation presentation(const GraphOfGroups& g);

/// Multiplicative rendering of a vertex-group vector, e.g. (1,1) -> "ab".
std::string render_vertex_element(const std::vector<std::string>& letters, const IntVector& v);
Word vertex_element_word(const std::vector<std::string>& letters, const IntVector& v);

enum class EndsClass { bounded, two_ended, infinitely_many };
std::string to_string(EndsClass e);

struct ReducedEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  BigInt source_index;
  BigInt target_index;
};

struct BassSerreLocalData {
  /// Degree of a lift of each vertex in the Bass-Serre tree.
  std::vector<BigInt> degrees;
  EndsClass ends = EndsClass::bounded;
  /// Edges left after collapsing; endpoints are original vertex indices.
  std::vector<ReducedEdge> reduced;
};

/// Degrees are sums of inclusion indices over edge ends. Ends are decided on
/// the reduced graph, obtained by collapsing non-loop edges with an index-1
/// end (which leaves the tree quasi-isometrically unchanged).
BassSerreLocalData bass_serre_degrees(const GraphOfGroups& g);

/// #edges - #vertices + 1
std::size_t underlying_rank(const GraphOfGroups& g);

}  // namespace gbs
