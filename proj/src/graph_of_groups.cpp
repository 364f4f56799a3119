#include "gbs/graph_of_groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "gbs/lattice.hpp"

namespace gbs {

namespace {

std::vector<std::string> base_letter_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  return out;
}

std::vector<std::string> letters_for(const GoGSpec& spec, std::size_t v) {
  auto names = base_letter_names(static_cast<std::size_t>(std::max(spec.rank, 0)));
  if (spec.vertices.size() > 1)
    for (auto& n : names) n += "_" + spec.vertices[v];
  return names;
}

std::size_t least_vertex(const std::vector<std::string>& vertices) {
  return static_cast<std::size_t>(
      std::min_element(vertices.begin(), vertices.end()) - vertices.begin());
}

// Union-find over vertex indices.
struct Components {
  explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

ValidationReport validate(const GoGSpec& spec) {
  ValidationReport report;
  auto& out = report.violations;
  if (spec.rank < 1) out.push_back("rank must be a positive integer");
  if (spec.vertices.empty()) out.push_back("graph has no vertices");

  std::unordered_map<std::string, std::size_t> vertex_index;
  for (std::size_t i = 0; i < spec.vertices.size(); ++i) {
    const auto& name = spec.vertices[i];
    if (!is_identifier(name)) out.push_back("invalid vertex name '" + name + "'");
    if (!vertex_index.emplace(name, i).second) out.push_back("duplicate vertex name '" + name + "'");
  }

  std::set<std::string> letter_names;
  if (spec.rank >= 1)
    for (std::size_t v = 0; v < spec.vertices.size(); ++v)
      for (auto& l : letters_for(spec, v)) letter_names.insert(l);

  std::set<std::string> edge_names;
  const auto n = static_cast<std::size_t>(std::max(spec.rank, 0));
  for (const auto& e : spec.edges) {
    if (!is_identifier(e.name)) out.push_back("invalid edge name '" + e.name + "'");
    if (!edge_names.insert(e.name).second) out.push_back("duplicate edge name '" + e.name + "'");
    if (letter_names.count(e.name))
      out.push_back("edge " + e.name + ": name collides with a vertex letter");
    for (const auto* end : {&e.source, &e.target})
      if (!vertex_index.count(*end)) out.push_back("edge " + e.name + ": unknown vertex '" + *end + "'");
    bool dims_ok = true;
    for (const auto& [label, m] : {std::pair{"alpha", &e.alpha}, std::pair{"omega", &e.omega}}) {
      if (m->dim() != n) {
        out.push_back("edge " + e.name + ": dimension mismatch in " + label);
        dims_ok = false;
      }
    }
    if (dims_ok && n > 0) {
      if (determinant(e.alpha) == 0)
        out.push_back("edge " + e.name + ": edge inclusion not injective (alpha)");
      if (determinant(e.omega) == 0)
        out.push_back("edge " + e.name + ": edge inclusion not injective (omega)");
    }
  }

  bool endpoints_ok = std::all_of(spec.edges.begin(), spec.edges.end(), [&](const EdgeSpec& e) {
    return vertex_index.count(e.source) && vertex_index.count(e.target);
  });
  if (!endpoints_ok || spec.vertices.empty()) return report;

  Components comp(spec.vertices.size());
  std::size_t pieces = spec.vertices.size();
  for (const auto& e : spec.edges)
    if (comp.unite(vertex_index.at(e.source), vertex_index.at(e.target))) --pieces;
  if (pieces != 1) out.push_back("graph not connected");

  if (spec.spanning_tree) {
    std::unordered_map<std::string, const EdgeSpec*> by_name;
    for (const auto& e : spec.edges) by_name.emplace(e.name, &e);
    Components tree(spec.vertices.size());
    std::set<std::string> seen;
    bool ok = true;
    for (const auto& name : *spec.spanning_tree) {
      auto it = by_name.find(name);
      if (it == by_name.end()) {
        out.push_back("bad spanning tree: unknown edge '" + name + "'");
        ok = false;
        continue;
      }
      if (!seen.insert(name).second) {
        out.push_back("bad spanning tree: edge '" + name + "' listed twice");
        ok = false;
        continue;
      }
      if (!tree.unite(vertex_index.at(it->second->source), vertex_index.at(it->second->target))) {
        out.push_back("bad spanning tree: edge '" + name + "' closes a cycle");
        ok = false;
      }
    }
    if (ok && seen.size() + 1 != spec.vertices.size())
      out.push_back("bad spanning tree: it does not reach every vertex");
  }
  return report;
}

namespace {
std::string join_violations(const ValidationReport& r) {
  std::string s = "invalid graph of groups";
  for (const auto& v : r.violations) s += "; " + v;
  return s;
}
}  // namespace

SpecError::SpecError(ValidationReport report)
    : std::runtime_error(join_violations(report)), report_(std::move(report)) {}

GraphOfGroups GraphOfGroups::build(const GoGSpec& spec) {
  auto report = validate(spec);
  if (!report.ok()) throw SpecError(std::move(report));

  GraphOfGroups g;
  g.spec_ = spec;
  std::unordered_map<std::string, std::size_t> vertex_index;
  for (std::size_t i = 0; i < spec.vertices.size(); ++i) vertex_index[spec.vertices[i]] = i;
  for (const auto& e : spec.edges)
    g.edges_.push_back({e.name, vertex_index.at(e.source), vertex_index.at(e.target), e.alpha, e.omega, false});
  g.base_ = least_vertex(spec.vertices);

  if (spec.spanning_tree) {
    for (const auto& name : *spec.spanning_tree)
      for (auto& e : g.edges_)
        if (e.name == name) e.in_tree = true;
  } else {
    // Breadth-first tree from the base vertex, edges in declaration order.
    std::vector<bool> reached(spec.vertices.size(), false);
    std::deque<std::size_t> queue{g.base_};
    reached[g.base_] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (auto& e : g.edges_) {
        if (e.source == e.target) continue;
        std::size_t other;
        if (e.source == v) other = e.target;
        else if (e.target == v) other = e.source;
        else continue;
        if (reached[other]) continue;
        reached[other] = true;
        e.in_tree = true;
        queue.push_back(other);
      }
    }
  }

  g.tree_paths_.assign(spec.vertices.size(), {});
  std::vector<bool> reached(spec.vertices.size(), false);
  std::deque<std::size_t> queue{g.base_};
  reached[g.base_] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
      const auto& e = g.edges_[i];
      if (!e.in_tree) continue;
      std::optional<EdgeStep> step;
      std::size_t other = 0;
      if (e.source == v && !reached[e.target]) {
        step = EdgeStep{i, true};
        other = e.target;
      } else if (e.target == v && !reached[e.source]) {
        step = EdgeStep{i, false};
        other = e.source;
      }
      if (!step) continue;
      reached[other] = true;
      g.tree_paths_[other] = g.tree_paths_[v];
      g.tree_paths_[other].push_back(*step);
      queue.push_back(other);
    }
  }

  for (std::size_t v = 0; v < spec.vertices.size(); ++v) {
    auto names = letters_for(spec, v);
    for (std::size_t c = 0; c < names.size(); ++c)
      g.generators_.push_back({Generator::Kind::vertex_letter, names[c], v, c, 0});
  }
  for (std::size_t i = 0; i < g.edges_.size(); ++i)
    if (!g.edges_[i].in_tree)
      g.generators_.push_back({Generator::Kind::stable_letter, g.edges_[i].name, 0, 0, i});
  for (std::size_t i = 0; i < g.generators_.size(); ++i) g.generator_index_[g.generators_[i].name] = i;
  return g;
}

std::vector<std::size_t> GraphOfGroups::stable_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (!edges_[i].in_tree) out.push_back(i);
  return out;
}

const Generator* GraphOfGroups::find_generator(const std::string& name) const {
  auto it = generator_index_.find(name);
  return it == generator_index_.end() ? nullptr : &generators_[it->second];
}

std::vector<std::string> GraphOfGroups::vertex_letters(std::size_t v) const {
  return letters_for(spec_, v);
}

Word vertex_element_word(const std::vector<std::string>& letters, const IntVector& v) {
  std::vector<Syllable> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) {
      if (!v[i].fits_slong_p()) throw std::overflow_error("vertex exponent too large for a word");
      out.push_back({letters[i], v[i].get_si()});
    }
  return Word(std::move(out));
}

std::string render_vertex_element(const std::vector<std::string>& letters, const IntVector& v) {
  bool compact = std::all_of(letters.begin(), letters.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!out.empty() && !compact) out += ' ';
    out += letters[i];
    if (v[i] != 1) out += "^" + v[i].get_str();
  }
  return out.empty() ? "1" : out;
}

namespace {

IntVector column(const IntMatrix& m, std::size_t c) {
  IntVector out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) out[r] = m(r, c);
  return out;
}

std::string conjugate_text(const std::string& element, const std::string& letter) {
  bool single = element.size() >= 1 && is_identifier(element);
  return (single ? element : "(" + element + ")") + "^" + letter;
}

}  // namespace

std::string Presentation::str() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? "," : "") << generators[i];
  os << " | ";
  for (std::size_t i = 0; i < relations.size(); ++i) os << (i ? ", " : "") << relations[i].text;
  os << '>';
  return os.str();
}

Presentation presentation(const GraphOfGroups& g) {
  Presentation p;
  for (const auto& gen : g.generators()) p.generators.push_back(gen.name);
  const std::size_t n = g.rank();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto letters = g.vertex_letters(v);
    bool compact = std::all_of(letters.begin(), letters.end(), [](const std::string& s) { return s.size() == 1; });
    std::string sep = compact ? "" : " ";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Word lhs = Word::letter(letters[i]) * Word::letter(letters[j]);
        Word rhs = Word::letter(letters[j]) * Word::letter(letters[i]);
        p.relations.push_back({lhs, rhs, letters[i] + sep + letters[j] + "=" + letters[j] + sep + letters[i]});
      }
  }
  for (const auto& e : g.edges()) {
    auto src = g.vertex_letters(e.source);
    auto dst = g.vertex_letters(e.target);
    for (std::size_t c = 0; c < n; ++c) {
      IntVector a = column(e.alpha, c);
      IntVector w = column(e.omega, c);
      std::string a_text = render_vertex_element(src, a);
      std::string w_text = render_vertex_element(dst, w);
      if (e.in_tree) {
        p.relations.push_back({vertex_element_word(src, a), vertex_element_word(dst, w), a_text + "=" + w_text});
      } else {
        Word t = Word::letter(e.name);
        Word lhs = t.inverse() * vertex_element_word(src, a) * t;
        p.relations.push_back({lhs, vertex_element_word(dst, w), conjugate_text(a_text, e.name) + "=" + w_text});
      }
    }
  }
  return p;
}

std::string to_string(EndsClass e) {
  switch (e) {
    case EndsClass::bounded: return "bounded";
    case EndsClass::two_ended: return "two-ended";
    case EndsClass::infinitely_many: return "infinitely-many-ends";
  }
  return "?";
}

BassSerreLocalData bass_serre_degrees(const GraphOfGroups& g) {
  BassSerreLocalData out;
  out.degrees.assign(g.vertex_count(), BigInt(0));
  struct IndexEdge {
    std::size_t u, w;
    BigInt at_u, at_w;
  };
  std::vector<IndexEdge> reduced;
  for (const auto& e : g.edges()) {
    BigInt iu = sublattice_index(e.alpha);
    BigInt iw = sublattice_index(e.omega);
    out.degrees[e.source] += iu;
    out.degrees[e.target] += iw;
    reduced.push_back({e.source, e.target, iu, iw});
  }

  // Collapse non-loop edges with an index-1 end into the other endpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      auto e = reduced[i];
      if (e.u == e.w) continue;
      std::size_t gone, keep;
      BigInt factor;
      if (e.at_u == 1) {
        gone = e.u, keep = e.w, factor = e.at_w;
      } else if (e.at_w == 1) {
        gone = e.w, keep = e.u, factor = e.at_u;
      } else {
        continue;
      }
      reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto& f : reduced) {
        if (f.u == gone) f.u = keep, f.at_u *= factor;
        if (f.w == gone) f.w = keep, f.at_w *= factor;
      }
      changed = true;
      break;
    }
  }

  for (const auto& e : reduced) out.reduced.push_back({e.u, e.w, e.at_u, e.at_w});
  if (reduced.empty()) {
    out.ends = EndsClass::bounded;
    return out;
  }
  std::unordered_map<std::size_t, BigInt> reduced_degree;
  for (const auto& e : reduced) {
    reduced_degree[e.u] += e.at_u;
    reduced_degree[e.w] += e.at_w;
  }
  bool line = std::all_of(reduced_degree.begin(), reduced_degree.end(),
                          [](const auto& kv) { return kv.second == 2; });
  out.ends = line ? EndsClass::two_ended : EndsClass::infinitely_many;
  return out;
}

std::size_t underlying_rank(const GraphOfGroups& g) {
  return g.edges().size() + 1 - g.vertex_count();
}

}  // namespace gbs
