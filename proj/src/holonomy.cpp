#include "gbs/holonomy.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace gbs {

std::vector<QMatrix> HolonomyData::image_generators() const {
  std::vector<QMatrix> out;
  for (const auto& s : stable) out.push_back(s.matrix);
  return out;
}

std::vector<std::string> HolonomyData::stable_letters() const {
  std::vector<std::string> out;
  for (const auto& s : stable) out.push_back(s.letter);
  return out;
}

const QMatrix& HolonomyData::image(const std::string& letter) const {
  auto it = letters.find(letter);
  if (it == letters.end()) throw std::invalid_argument("unknown letter '" + letter + "'");
  return it->second;
}

HolonomyData compute_holonomy(const GraphOfGroups& g) {
  HolonomyData hd;
  hd.rank = g.rank();
  hd.base_vertex = g.base_vertex();
  const auto n = g.rank();

  std::vector<QMatrix> frame(g.vertex_count(), QMatrix::identity(n));
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    QMatrix f = QMatrix::identity(n);
    for (const auto& step : g.tree_path(v)) {
      const auto& e = g.edges()[step.edge];
      QMatrix a = to_rational(e.alpha);
      QMatrix w = to_rational(e.omega);
      f = step.forward ? f * a * inverse(w) : f * w * inverse(a);
    }
    frame[v] = f;
  }

  for (const auto& gen : g.generators()) {
    if (gen.kind == Generator::Kind::vertex_letter) {
      hd.letters.emplace(gen.name, QMatrix::identity(n));
      continue;
    }
    const auto& e = g.edges()[gen.edge];
    QMatrix m = frame[e.target] * to_rational(e.omega) * inverse(to_rational(e.alpha)) *
                inverse(frame[e.source]);
    hd.letters.emplace(gen.name, m);
    hd.stable.push_back({gen.name, m});
  }
  return hd;
}

QMatrix word_image(const HolonomyData& hd, const Word& w) {
  QMatrix out = QMatrix::identity(hd.rank);
  for (const auto& s : w.syllables()) out = out * power(hd.image(s.letter), s.exponent);
  return out;
}

std::string to_string(DiscretenessProbe::Outcome o) {
  switch (o) {
    case DiscretenessProbe::Outcome::witness: return "non-discrete witness";
    case DiscretenessProbe::Outcome::discrete_integral: return "discrete (integral)";
    case DiscretenessProbe::Outcome::none_found: return "none found";
  }
  return "?";
}

namespace {

struct Overflow {};

// N / d with int64 entries, d > 0 and gcd(N, d) = 1. Products that leave the
// int64 range throw Overflow.
class SmallMatrix {
 public:
  static std::optional<SmallMatrix> from(const QMatrix& m) {
    BigInt den = 1;
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c) den = lcm(den, m(r, c).denominator());
    SmallMatrix out;
    out.n_ = m.dim();
    if (!den.fits_slong_p()) return std::nullopt;
    out.den_ = den.get_si();
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c) {
        BigInt x = m(r, c).numerator() * (den / m(r, c).denominator());
        if (!x.fits_slong_p()) return std::nullopt;
        out.num_.push_back(x.get_si());
      }
    return out;
  }

  static SmallMatrix identity(std::size_t n) {
    SmallMatrix out;
    out.n_ = n;
    out.num_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) out.num_[i * n + i] = 1;
    return out;
  }

  SmallMatrix operator*(const SmallMatrix& o) const {
    std::vector<__int128> wide(n_ * n_, 0);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t k = 0; k < n_; ++k) {
        __int128 a = num_[r * n_ + k];
        if (a == 0) continue;
        for (std::size_t c = 0; c < n_; ++c) wide[r * n_ + c] += a * o.num_[k * n_ + c];
      }
    __int128 den = static_cast<__int128>(den_) * o.den_;
    __int128 g = den;
    for (auto x : wide) g = gcd128(g, x < 0 ? -x : x);
    SmallMatrix out;
    out.n_ = n_;
    out.den_ = narrow(den / g);
    out.num_.reserve(wide.size());
    for (auto x : wide) out.num_.push_back(narrow(x / g));
    return out;
  }

  // max |entry - identity| < p / q
  bool within(std::int64_t p, std::int64_t q) const {
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) {
        __int128 dev = static_cast<__int128>(num_[r * n_ + c]) - (r == c ? den_ : 0);
        if (dev < 0) dev = -dev;
        if (dev * q >= static_cast<__int128>(p) * den_) return false;
      }
    return true;
  }

  QMatrix to_rational_matrix() const {
    QMatrix out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out(r, c) = Rational(BigInt(num_[r * n_ + c]), BigInt(den_));
    return out;
  }

  friend bool operator==(const SmallMatrix&, const SmallMatrix&) = default;

  struct Hash {
    std::size_t operator()(const SmallMatrix& m) const {
      std::size_t h = std::hash<std::int64_t>{}(m.den_);
      for (auto x : m.num_) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static std::int64_t narrow(__int128 x) {
    if (x > INT64_MAX || x < INT64_MIN) throw Overflow{};
    return static_cast<std::int64_t>(x);
  }

  std::size_t n_ = 0;
  std::vector<std::int64_t> num_;
  std::int64_t den_ = 1;
};

struct Move {
  std::string letter;
  int sign;
  QMatrix matrix;
};

// Breadth-first over freely reduced words, deduplicated by image. Words are
// kept as parent links and only spelled out for the witness.
template <class M, class Hash, class Near>
void search(DiscretenessProbe& probe, const std::vector<Move>& moves, const std::vector<M>& images,
            const M& identity, Near near) {
  struct Node {
    M image;
    std::size_t parent;
    int move;
  };
  std::vector<Node> nodes{{identity, 0, -1}};
  auto spell = [&](std::size_t at) {
    std::vector<int> path;
    for (; nodes[at].move >= 0; at = nodes[at].parent) path.push_back(nodes[at].move);
    Word w;
    for (auto it = path.rbegin(); it != path.rend(); ++it) w = w * Word::letter(moves[*it].letter, moves[*it].sign);
    return w;
  };
  std::unordered_set<M, Hash> seen{identity};
  std::size_t layer_begin = 0, layer_end = 1;
  for (int depth = 1; depth <= probe.max_word_length && layer_begin < layer_end; ++depth) {
    for (std::size_t at = layer_begin; at < layer_end; ++at) {
      for (int i = 0; i < static_cast<int>(moves.size()); ++i) {
        if (nodes[at].move >= 0 && (nodes[at].move ^ 1) == i) continue;
        M image = nodes[at].image * images[static_cast<std::size_t>(i)];
        if (!seen.insert(image).second) continue;
        ++probe.words_examined;
        bool hit = near(image);
        nodes.push_back({std::move(image), at, i});
        if (hit) {
          probe.outcome = DiscretenessProbe::Outcome::witness;
          probe.witness = spell(nodes.size() - 1);
          return;
        }
      }
    }
    layer_begin = layer_end;
    layer_end = nodes.size();
  }
}

}  // namespace

DiscretenessProbe non_discreteness_witness(const HolonomyData& hd, const Rational& epsilon,
                                           int max_word_length) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  DiscretenessProbe probe;
  probe.epsilon = epsilon;
  probe.max_word_length = max_word_length;

  auto gens = hd.image_generators();
  if (std::all_of(gens.begin(), gens.end(), is_integral_unimodular)) {
    probe.outcome = DiscretenessProbe::Outcome::discrete_integral;
    return probe;
  }

  std::vector<Move> moves;
  auto names = hd.stable_letters();
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    moves.push_back({name, 1, hd.image(name)});
    moves.push_back({name, -1, inverse(hd.image(name))});
  }

  // Machine-word arithmetic first; exact big rationals when it overflows.
  bool fast = epsilon.numerator().fits_slong_p() && epsilon.denominator().fits_slong_p();
  std::vector<SmallMatrix> small;
  for (const auto& m : moves) {
    auto s = SmallMatrix::from(m.matrix);
    if (!s) {
      fast = false;
      break;
    }
    small.push_back(*s);
  }
  if (fast) {
    const std::int64_t p = epsilon.numerator().get_si(), q = epsilon.denominator().get_si();
    try {
      search<SmallMatrix, SmallMatrix::Hash>(probe, moves, small, SmallMatrix::identity(hd.rank),
                                             [&](const SmallMatrix& m) { return m.within(p, q); });
    } catch (const Overflow&) {
      probe.outcome = DiscretenessProbe::Outcome::none_found;
      probe.witness.reset();
      probe.words_examined = 0;
      fast = false;
    }
  }
  if (!fast) {
    std::vector<QMatrix> images;
    for (const auto& m : moves) images.push_back(m.matrix);
    search<QMatrix, QMatrixHash>(probe, moves, images, QMatrix::identity(hd.rank),
                                 [&](const QMatrix& m) { return distance_from_identity(m) < epsilon; });
  }
  if (probe.witness) {
    probe.image = word_image(hd, *probe.witness);
    probe.distance = distance_from_identity(*probe.image);
  }
  return probe;
}

}  // namespace gbs
