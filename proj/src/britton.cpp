#include "gbs/britton.hpp"

#include <functional>
#include <stdexcept>

namespace gbs {

namespace {

void add_into(IntVector& x, const IntVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::size_t arrival_vertex(const GraphOfGroups& g, EdgeStep s) {
  const auto& e = g.edges()[s.edge];
  return s.forward ? e.target : e.source;
}

}  // namespace

bool NormalForm::is_identity() const { return steps.empty() && is_zero(parts.front()); }

std::optional<IntVector> NormalForm::vertex_element() const {
  if (!steps.empty()) return std::nullopt;
  return parts.front();
}

std::size_t NormalForm::stable_length(const GraphOfGroups& g) const {
  std::size_t n = 0;
  for (const auto& s : steps)
    if (!g.edges()[s.edge].in_tree) ++n;
  return n;
}

Word NormalForm::to_word(const GraphOfGroups& g) const {
  Word out;
  std::size_t vertex = g.base_vertex();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out = out * vertex_element_word(g.vertex_letters(vertex), parts[i]);
    if (i == steps.size()) break;
    const auto& e = g.edges()[steps[i].edge];
    if (!e.in_tree) out = out * Word::letter(e.name, steps[i].forward ? 1 : -1);
    vertex = arrival_vertex(g, steps[i]);
  }
  return out;
}

std::string NormalForm::str(const GraphOfGroups& g) const {
  std::string out;
  auto put = [&](const std::string& token) {
    if (!out.empty()) out += ' ';
    out += token;
  };
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!is_zero(parts[i]) || steps.empty()) put(to_string(parts[i]));
    if (i == steps.size()) break;
    const auto& e = g.edges()[steps[i].edge];
    std::string letter = steps[i].forward ? e.name : e.name + "^-1";
    put(e.in_tree ? "{" + letter + "}" : letter);
  }
  return out;
}

std::string NormalForm::key() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& x : parts[i]) {
      out += x.get_str(16);
      out += ',';
    }
    if (i < steps.size()) out += (steps[i].forward ? '+' : '-') + std::to_string(steps[i].edge) + ';';
  }
  return out;
}

std::size_t NormalFormHash::operator()(const NormalForm& nf) const {
  return std::hash<std::string>{}(nf.key());
}

Britton::Britton(const GraphOfGroups& g) : g_(&g) {
  for (const auto& e : g.edges()) {
    alpha_hnf_.push_back(hermite_normal_form(e.alpha));
    omega_hnf_.push_back(hermite_normal_form(e.omega));
  }
}

NormalForm Britton::identity() const {
  return NormalForm{{IntVector(g_->rank(), BigInt(0))}, {}};
}

NormalForm Britton::vertex_element(const IntVector& v) const {
  if (v.size() != g_->rank()) throw std::invalid_argument("vertex vector has the wrong dimension");
  return NormalForm{{v}, {}};
}

void Britton::append_step(Path& p, EdgeStep step) const {
  const auto& e = g_->edges()[step.edge];
  if (!p.steps.empty()) {
    const EdgeStep last = p.steps.back();
    if (last.edge == step.edge && last.forward != step.forward) {
      // Pinch: after crossing forward we sit in the omega side, and the
      // reverse crossing cancels when the part lies in the omega image.
      const IntMatrix& arrival = last.forward ? e.omega : e.alpha;
      const IntMatrix& departure = last.forward ? e.alpha : e.omega;
      if (auto c = lattice_solve(arrival, p.parts.back())) {
        p.parts.pop_back();
        p.steps.pop_back();
        add_into(p.parts.back(), departure.apply(*c));
        return;
      }
    }
  }
  p.steps.push_back(step);
  p.parts.emplace_back(g_->rank(), BigInt(0));
}

void Britton::append_letter(Path& p, const std::string& letter, int sign) const {
  const Generator* gen = g_->find_generator(letter);
  if (!gen) throw std::invalid_argument("unknown letter '" + letter + "'");
  auto go = [&](std::size_t v) {
    for (const auto& s : g_->tree_path(v)) append_step(p, s);
  };
  auto back = [&](std::size_t v) {
    const auto& path = g_->tree_path(v);
    for (auto it = path.rbegin(); it != path.rend(); ++it) append_step(p, {it->edge, !it->forward});
  };
  if (gen->kind == Generator::Kind::vertex_letter) {
    go(gen->vertex);
    p.parts.back()[gen->coordinate] += sign;
    back(gen->vertex);
    return;
  }
  const auto& e = g_->edges()[gen->edge];
  std::size_t from = sign > 0 ? e.source : e.target;
  std::size_t to = sign > 0 ? e.target : e.source;
  go(from);
  append_step(p, {gen->edge, sign > 0});
  back(to);
}

NormalForm Britton::canonical(Path p) const {
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& step = p.steps[i];
    const auto& e = g_->edges()[step.edge];
    const IntMatrix& departure = step.forward ? e.alpha : e.omega;
    const IntMatrix& hnf = step.forward ? alpha_hnf_[step.edge] : omega_hnf_[step.edge];
    const IntMatrix& arrival = step.forward ? e.omega : e.alpha;
    IntVector r = lattice_residue(hnf, p.parts[i]);
    IntVector diff = p.parts[i];
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= r[j];
    auto c = lattice_solve(departure, diff);
    if (!c) throw std::logic_error("coset residue outside the edge image");
    p.parts[i] = std::move(r);
    add_into(p.parts[i + 1], arrival.apply(*c));
  }
  return NormalForm{std::move(p.parts), std::move(p.steps)};
}

Britton::Path Britton::path_of(const NormalForm& nf) const { return Path{nf.parts, nf.steps}; }

NormalForm Britton::reduce(const Word& w) const {
  Path p{{IntVector(g_->rank(), BigInt(0))}, {}};
  for (const auto& s : expand(w)) append_letter(p, s.letter, static_cast<int>(s.exponent));
  return canonical(std::move(p));
}

NormalForm Britton::multiply(const NormalForm& nf, const std::string& letter, int sign) const {
  Path p = path_of(nf);
  append_letter(p, letter, sign);
  return canonical(std::move(p));
}

NormalForm britton_reduce(const GraphOfGroups& g, const Word& w) { return Britton(g).reduce(w); }

bool is_identity(const GraphOfGroups& g, const Word& w) { return Britton(g).is_identity(w); }

}  // namespace gbs
