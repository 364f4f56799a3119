#include "gbs/tits.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace gbs {

MatrixGroup::MatrixGroup(std::vector<QMatrix> gens, std::vector<std::string> given)
    : generators(std::move(gens)), names(std::move(given)) {
  if (names.empty())
    for (std::size_t i = 0; i < generators.size(); ++i) names.push_back("g" + std::to_string(i + 1));
  if (names.size() != generators.size()) throw std::invalid_argument("one name per generator");
}

QMatrix MatrixGroup::evaluate(const Word& w) const {
  QMatrix out = QMatrix::identity(2);
  for (const auto& s : w.syllables()) {
    auto it = std::find(names.begin(), names.end(), s.letter);
    if (it == names.end()) throw std::invalid_argument("unknown generator '" + s.letter + "'");
    out = out * power(generators[static_cast<std::size_t>(it - names.begin())], s.exponent);
  }
  return out;
}

std::string to_string(TitsCertificate::Kind k) {
  switch (k) {
    case TitsCertificate::Kind::scalar: return "scalar";
    case TitsCertificate::Kind::invariant_line: return "invariant-line";
    case TitsCertificate::Kind::invariant_pair: return "invariant-pair";
    case TitsCertificate::Kind::free_pair: return "free-pair";
  }
  return "?";
}

std::vector<std::pair<Word, QMatrix>> short_words(const MatrixGroup& group, std::size_t max_length) {
  struct Move {
    std::string letter;
    int sign;
    QMatrix m;
  };
  std::vector<Move> moves;
  for (std::size_t i = 0; i < group.generators.size(); ++i) {
    moves.push_back({group.names[i], 1, group.generators[i]});
    moves.push_back({group.names[i], -1, inverse(group.generators[i])});
  }
  std::vector<std::pair<Word, QMatrix>> out;
  std::unordered_set<QMatrix, QMatrixHash> seen{QMatrix::identity(2)};
  struct Node {
    Word w;
    QMatrix m;
    int last;
  };
  std::vector<Node> frontier{{Word(), QMatrix::identity(2), -1}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier)
      for (int i = 0; i < static_cast<int>(moves.size()); ++i) {
        if (node.last >= 0 && (node.last ^ 1) == i) continue;
        QMatrix m = node.m * moves[i].m;
        Word w = node.w * Word::letter(moves[i].letter, moves[i].sign);
        // Reduced words may repeat a value; keep walking them but list each value once.
        if (seen.insert(m).second) out.emplace_back(w, m);
        next.push_back({std::move(w), std::move(m), i});
      }
    frontier = std::move(next);
  }
  return out;
}

namespace {

ProjPoint conjugate(const ProjPoint& p) { return ProjPoint(p.x().conjugate(), p.y().conjugate()); }

bool fixes(const QMatrix& g, const ProjPoint& p) { return apply(g, p) == p; }

bool permutes(const QMatrix& g, const ProjPoint& p, const ProjPoint& q) {
  ProjPoint gp = apply(g, p);
  ProjPoint gq = apply(g, q);
  return (gp == p && gq == q) || (gp == q && gq == p);
}

// ---- real anchors on the projective line -------------------------------

struct Anchor {
  std::optional<QuadraticNumber> slope;  // nullopt: infinity
};

Anchor anchor_of(const ProjPoint& p) {
  if (p.x().is_zero()) return {std::nullopt};
  return {p.y()};
}

bool same_point(const Anchor& a, const Anchor& b) {
  if (!a.slope || !b.slope) return !a.slope && !b.slope;
  return *a.slope == *b.slope;
}

// Enclosures of two distinct reals, refined until they separate.
std::pair<std::pair<Rational, Rational>, std::pair<Rational, Rational>> separate(
    const QuadraticNumber& a, const QuadraticNumber& b) {
  for (unsigned bits = 32;; bits *= 2) {
    auto ea = a.enclose(bits);
    auto eb = b.enclose(bits);
    if (ea.second < eb.first || eb.second < ea.first) return {ea, eb};
    if (bits > 1u << 16) throw std::logic_error("cannot separate equal reals");
  }
}

bool less_real(const QuadraticNumber& a, const QuadraticNumber& b) {
  if (a == b) return false;
  auto [ea, eb] = separate(a, b);
  return ea.second < eb.first;
}

bool anchor_less(const Anchor& a, const Anchor& b) {
  if (!a.slope) return false;
  if (!b.slope) return true;
  return less_real(*a.slope, *b.slope);
}

// Simplest rational in the open interval (lo, hi); hi = nullopt is +inf.
Rational simplest_between(const Rational& lo, const std::optional<Rational>& hi) {
  if (!hi) return lo.sign() < 0 ? Rational(0) : Rational(lo.floor() + 1);
  if (lo.sign() < 0 && hi->sign() > 0) return Rational(0);
  if (hi->sign() <= 0) return -simplest_between(-*hi, -lo);
  BigInt f = lo.floor();
  if (Rational(f + 1) < *hi) return Rational(f + 1);
  Rational lo_frac = lo - Rational(f);
  Rational hi_frac = *hi - Rational(f);
  std::optional<Rational> upper;
  if (!lo_frac.is_zero()) upper = lo_frac.inverse();
  return Rational(f) + simplest_between(hi_frac.inverse(), upper).inverse();
}

// A rational slope strictly between consecutive anchors a < b (cyclically:
// from a upwards to b, possibly through infinity).
Slope cut_between(const Anchor& a, const Anchor& b) {
  if (!a.slope) {
    auto e = b.slope->enclose(32);
    return Slope(-simplest_between(-e.first, std::nullopt));
  }
  if (!b.slope) {
    auto e = a.slope->enclose(32);
    return Slope(simplest_between(e.second, std::nullopt));
  }
  if (anchor_less(b, a)) return Slope::infinity();
  auto [ea, eb] = separate(*a.slope, *b.slope);
  return Slope(simplest_between(ea.second, eb.first));
}

// ---- candidate elements --------------------------------------------------

struct Candidate {
  Word word;
  QMatrix m;
  std::vector<Anchor> fixed;  // one (parabolic) or two (hyperbolic)
};

std::optional<Candidate> as_candidate(const Word& w, const QMatrix& m) {
  if (is_scalar(m)) return std::nullopt;
  Rational tr = m(0, 0) + m(1, 1);
  Rational det = determinant(m);
  Rational disc = tr * tr - Rational(4) * det;
  if (disc.sign() < 0) return std::nullopt;
  if (disc.sign() > 0 && det.sign() < 0 && tr.is_zero()) return std::nullopt;
  EigenData ed = eigen_directions(m);
  Candidate c{w, m, {}};
  for (const auto& p : ed.directions) c.fixed.push_back(anchor_of(p));
  return c;
}

bool disjoint_fixed(const Candidate& a, const Candidate& b) {
  for (const auto& x : a.fixed)
    for (const auto& y : b.fixed)
      if (same_point(x, y)) return false;
  return true;
}

struct Layout {
  Arc attract_g, repel_g, attract_h, repel_h;
};

// Tiles the circle by arcs around each fixed point. conv selects whether
// every arc owns its start or its end.
std::vector<Layout> layouts(const Candidate& g, const Candidate& h) {
  struct Mark {
    Anchor at;
    int owner;  // 0: g, 1: h
    int index;  // position in the owner's fixed list
  };
  std::vector<Mark> marks;
  for (std::size_t i = 0; i < g.fixed.size(); ++i) marks.push_back({g.fixed[i], 0, static_cast<int>(i)});
  for (std::size_t i = 0; i < h.fixed.size(); ++i) marks.push_back({h.fixed[i], 1, static_cast<int>(i)});
  std::sort(marks.begin(), marks.end(), [](const Mark& a, const Mark& b) { return anchor_less(a.at, b.at); });
  const std::size_t k = marks.size();
  std::vector<Slope> cuts(k);  // cuts[i] lies between marks[i] and marks[i+1]
  for (std::size_t i = 0; i < k; ++i) cuts[i] = cut_between(marks[i].at, marks[(i + 1) % k].at);

  std::vector<Layout> out;
  for (bool own_start : {true, false}) {
    auto arc = [&](const Slope& s, const Slope& e) { return Arc{s, e, own_start, !own_start}; };
    // arcs[owner] holds (first-role arc, second-role arc) candidates.
    std::vector<std::pair<Arc, Arc>> options[2];
    for (int owner = 0; owner < 2; ++owner) {
      const Candidate& c = owner == 0 ? g : h;
      std::vector<std::size_t> pos;
      for (std::size_t i = 0; i < k; ++i)
        if (marks[i].owner == owner) pos.push_back(i);
      if (c.fixed.size() == 2) {
        Arc a0 = arc(cuts[(pos[0] + k - 1) % k], cuts[pos[0]]);
        Arc a1 = arc(cuts[(pos[1] + k - 1) % k], cuts[pos[1]]);
        options[owner] = {{a0, a1}, {a1, a0}};
      } else {
        std::size_t i = pos[0];
        Slope f = [&] {
          const Anchor& a = marks[i].at;
          if (!a.slope) return Slope::infinity();
          return Slope(a.slope->rational_part());
        }();
        Arc before = arc(cuts[(i + k - 1) % k], f);
        Arc after = arc(f, cuts[i]);
        options[owner] = {{before, after}, {after, before}};
      }
    }
    for (const auto& [ag, rg] : options[0])
      for (const auto& [ah, rh] : options[1]) out.push_back({ag, rg, ah, rh});
  }
  return out;
}

bool schottky_side(const QMatrix& m, const Arc& attract, const Arc& repel) {
  return is_subset(image(m, complement(repel)), attract) &&
         is_subset(image(inverse(m), complement(attract)), repel);
}

bool pairwise_disjoint(const std::vector<Arc>& arcs) {
  for (const auto& a : arcs)
    if (a.start == a.end) return false;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j)
      if (intersects(arcs[i], arcs[j])) return false;
  return true;
}

}  // namespace

std::optional<FreePair> pingpong_certify(const MatrixGroup& group, const TitsOptions& opts) {
  std::vector<Candidate> cands;
  for (const auto& [w, m] : short_words(group, opts.pingpong_word_length)) {
    auto c = as_candidate(w, m);
    if (!c) continue;
    // Only parabolic fixed points with rational coordinates can be arc endpoints.
    if (c->fixed.size() == 1 && c->fixed[0].slope && !c->fixed[0].slope->is_rational()) continue;
    bool duplicate = std::any_of(cands.begin(), cands.end(), [&](const Candidate& o) {
      if (o.fixed.size() != c->fixed.size()) return false;
      return std::all_of(c->fixed.begin(), c->fixed.end(), [&](const Anchor& a) {
        return std::any_of(o.fixed.begin(), o.fixed.end(), [&](const Anchor& b) { return same_point(a, b); });
      });
    });
    if (!duplicate) cands.push_back(std::move(*c));
  }

  for (std::size_t j = 1; j < cands.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      const Candidate& g = cands[i];
      const Candidate& h = cands[j];
      if (!disjoint_fixed(g, h)) continue;
      for (const auto& lay : layouts(g, h)) {
        if (!pairwise_disjoint({lay.attract_g, lay.repel_g, lay.attract_h, lay.repel_h})) continue;
        std::optional<long> kg, kh;
        for (long k : opts.powers)
          if (schottky_side(power(g.m, k), lay.attract_g, lay.repel_g)) {
            kg = k;
            break;
          }
        if (!kg) continue;
        for (long k : opts.powers)
          if (schottky_side(power(h.m, k), lay.attract_h, lay.repel_h)) {
            kh = k;
            break;
          }
        if (!kh) continue;
        return FreePair{g.word.power(*kg), h.word.power(*kh), power(g.m, *kg), power(h.m, *kh),
                        lay.attract_g, lay.repel_g, lay.attract_h, lay.repel_h};
      }
    }
  return std::nullopt;
}

bool verify(const FreePair& fp, const MatrixGroup& group) {
  if (group.evaluate(fp.g_word) != fp.g || group.evaluate(fp.h_word) != fp.h) return false;
  if (!pairwise_disjoint({fp.attract_g, fp.repel_g, fp.attract_h, fp.repel_h})) return false;
  return schottky_side(fp.g, fp.attract_g, fp.repel_g) && schottky_side(fp.h, fp.attract_h, fp.repel_h);
}

bool verify(const TitsCertificate& cert, const MatrixGroup& group) {
  const auto& gens = group.generators;
  switch (cert.kind) {
    case TitsCertificate::Kind::scalar:
      return std::all_of(gens.begin(), gens.end(), is_scalar);
    case TitsCertificate::Kind::invariant_line:
      return cert.line && std::all_of(gens.begin(), gens.end(),
                                      [&](const QMatrix& g) { return fixes(g, *cert.line); });
    case TitsCertificate::Kind::invariant_pair:
      return cert.pair.size() == 2 && !(cert.pair[0] == cert.pair[1]) &&
             std::all_of(gens.begin(), gens.end(),
                         [&](const QMatrix& g) { return permutes(g, cert.pair[0], cert.pair[1]); });
    case TitsCertificate::Kind::free_pair:
      return cert.free_pair && verify(*cert.free_pair, group);
  }
  return false;
}

TitsResult virtually_solvable(const MatrixGroup& group, const TitsOptions& opts) {
  for (const auto& g : group.generators)
    if (g.dim() != 2) throw std::invalid_argument("the Tits test is limited to n = 2");
  TitsResult result;
  if (std::all_of(group.generators.begin(), group.generators.end(), is_scalar)) {
    result.virtually_solvable = Verdict::yes;
    result.certificate = TitsCertificate{TitsCertificate::Kind::scalar, std::nullopt, {}, std::nullopt};
    return result;
  }

  auto words = short_words(group, opts.pivot_word_length);
  auto pivot = std::find_if(words.begin(), words.end(), [](const auto& wm) { return !is_scalar(wm.second); });
  if (pivot != words.end()) {
    for (const auto& p : eigen_directions(pivot->second).directions) {
      bool common = std::all_of(group.generators.begin(), group.generators.end(),
                                [&](const QMatrix& g) { return fixes(g, p); });
      if (!common) continue;
      result.virtually_solvable = Verdict::yes;
      if (p.is_real()) {
        result.certificate = TitsCertificate{TitsCertificate::Kind::invariant_line, p, {}, std::nullopt};
      } else {
        std::vector<ProjPoint> pair{p, conjugate(p)};
        std::sort(pair.begin(), pair.end());
        result.certificate = TitsCertificate{TitsCertificate::Kind::invariant_pair, std::nullopt, pair, std::nullopt};
      }
      return result;
    }
  }

  std::vector<std::vector<ProjPoint>> pairs;
  for (const auto& [w, m] : words)
    for (const QMatrix& x : {m, m * m}) {
      if (is_scalar(x)) continue;
      auto dirs = eigen_directions(x).directions;
      if (dirs.size() == 2 && std::find(pairs.begin(), pairs.end(), dirs) == pairs.end()) pairs.push_back(dirs);
    }
  for (const auto& pair : pairs) {
    bool invariant = std::all_of(group.generators.begin(), group.generators.end(),
                                 [&](const QMatrix& g) { return permutes(g, pair[0], pair[1]); });
    if (!invariant) continue;
    result.virtually_solvable = Verdict::yes;
    result.certificate = TitsCertificate{TitsCertificate::Kind::invariant_pair, std::nullopt, pair, std::nullopt};
    return result;
  }

  if (auto fp = pingpong_certify(group, opts)) {
    result.virtually_solvable = Verdict::no;
    result.certificate = TitsCertificate{TitsCertificate::Kind::free_pair, std::nullopt, {}, std::move(fp)};
    return result;
  }
  result.note = "no invariant line or pair among words of length <= " + std::to_string(opts.pivot_word_length) +
                " and no ping-pong pair among words of length <= " + std::to_string(opts.pingpong_word_length);
  return result;
}

ShortWordCheck check_short_words(const FreePair& fp) {
  const QMatrix mats[4] = {fp.g, inverse(fp.g), fp.h, inverse(fp.h)};
  const QMatrix id = QMatrix::identity(2);
  ShortWordCheck out;
  out.ok = true;
  // Letters 0..3 are g, g^-1, h, h^-1; i ^ 1 is the inverse of i.
  std::function<void(std::vector<int>&, const QMatrix&)> walk = [&](std::vector<int>& word, const QMatrix& m) {
    if (!word.empty()) {
      ++out.reduced_words;
      if (m == id) out.ok = false;
    }
    if (word.size() == 4) return;
    for (int i = 0; i < 4; ++i) {
      if (!word.empty() && (word.back() ^ 1) == i) continue;
      word.push_back(i);
      walk(word, m * mats[i]);
      word.pop_back();
    }
  };
  std::vector<int> word;
  walk(word, id);

  for (int code = 0; code < 256; ++code) {
    std::vector<int> letters{code & 3, (code >> 2) & 3, (code >> 4) & 3, (code >> 6) & 3};
    std::vector<int> reduced;
    QMatrix m = id;
    for (int x : letters) {
      m = m * mats[x];
      if (!reduced.empty() && (reduced.back() ^ 1) == x) reduced.pop_back();
      else reduced.push_back(x);
    }
    ++out.length_four_words;
    if ((m == id) != reduced.empty()) out.ok = false;
  }
  return out;
}

}  // namespace gbs
