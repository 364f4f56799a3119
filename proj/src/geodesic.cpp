#include "gbs/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gbs/holonomy.hpp"
#include "gbs/lattice.hpp"

namespace gbs {

std::string to_string(GeodesicResult::Method m) {
  return m == GeodesicResult::Method::breadth_first ? "breadth-first" : "vertex-layers";
}

namespace {

using Point = std::vector<std::int64_t>;

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : p) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

std::int64_t narrow(__int128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw std::overflow_error("vertex coordinates exceed int64");
  return static_cast<std::int64_t>(x);
}

std::int64_t to_i64(const BigInt& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("vertex coordinates exceed int64");
  return x.get_si();
}

// y -> target * source^-1 y on the lattice source Z^n, via the adjugate.
struct LatticeMap {
  std::vector<std::vector<__int128>> adjugate;
  std::vector<std::vector<__int128>> target;
  __int128 det = 1;

  LatticeMap(const IntMatrix& source, const IntMatrix& tgt) {
    const std::size_t n = source.dim();
    QMatrix inv = inverse(to_rational(source));
    BigInt d = determinant(source);
    det = to_i64(d);
    adjugate.assign(n, std::vector<__int128>(n));
    target.assign(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational a = inv(i, j) * Rational(d);
        adjugate[i][j] = to_i64(a.numerator());
        target[i][j] = to_i64(tgt(i, j));
      }
  }

  std::optional<Point> operator()(const Point& y) const {
    const std::size_t n = y.size();
    std::vector<__int128> c(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < n; ++j) s += adjugate[i][j] * y[j];
      if (s % det != 0) return std::nullopt;
      c[i] = s / det;
    }
    Point out(n);
    for (std::size_t i = 0; i < n; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < n; ++j) s += target[i][j] * c[j];
      out[i] = narrow(s);
    }
    return out;
  }
};

Point to_point(const IntVector& v) {
  Point p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = to_i64(v[i]);
  return p;
}

IntVector to_vector(const Point& p) {
  IntVector v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = BigInt(static_cast<long>(p[i]));
  return v;
}

}  // namespace

struct VertexLengthTable::Impl {
  std::size_t n = 0;
  std::vector<LatticeMap> excursions;
  std::unordered_map<Point, std::uint64_t, PointHash> known;
  std::vector<std::vector<Point>> spheres;
  // pieces[c]: vertex vectors realized by one piece of cost c.
  std::vector<std::vector<Point>> pieces;

  void extend() {
    const std::uint64_t r = spheres.size();
    if (r == 0) {
      Point zero(n, 0);
      known.emplace(zero, 0);
      spheres.push_back({zero});
      pieces.push_back({});
      return;
    }
    // Pieces of cost r come from sphere r - 2.
    std::vector<Point> fresh;
    if (r == 1) {
      for (std::size_t i = 0; i < n; ++i)
        for (int s : {1, -1}) {
          Point e(n, 0);
          e[i] = s;
          fresh.push_back(e);
        }
    } else {
      std::unordered_set<Point, PointHash> seen;
      for (const auto& y : spheres[r - 2])
        for (const auto& map : excursions)
          if (auto x = map(y); x && seen.insert(*x).second) fresh.push_back(*x);
    }
    pieces.push_back(std::move(fresh));

    std::vector<Point> sphere;
    for (std::uint64_t c = 1; c <= r; ++c) {
      for (const auto& base : spheres[r - c])
        for (const auto& piece : pieces[c]) {
          Point x(n);
          for (std::size_t i = 0; i < n; ++i) {
            std::int64_t v;
            if (__builtin_add_overflow(base[i], piece[i], &v))
              throw std::overflow_error("vertex coordinates exceed int64");
            x[i] = v;
          }
          if (known.emplace(x, r).second) sphere.push_back(std::move(x));
        }
    }
    spheres.push_back(std::move(sphere));
  }
};

VertexLengthTable::VertexLengthTable(const GraphOfGroups& g) : impl_(std::make_unique<Impl>()) {
  if (g.vertex_count() != 1) throw std::invalid_argument("vertex length table needs a one-vertex graph");
  impl_->n = g.rank();
  for (const auto& e : g.edges()) {
    impl_->excursions.emplace_back(e.alpha, e.omega);
    impl_->excursions.emplace_back(e.omega, e.alpha);
  }
}

VertexLengthTable::~VertexLengthTable() = default;
VertexLengthTable::VertexLengthTable(VertexLengthTable&&) noexcept = default;
VertexLengthTable& VertexLengthTable::operator=(VertexLengthTable&&) noexcept = default;

std::optional<std::uint64_t> VertexLengthTable::length(const IntVector& v, std::uint64_t max_radius) {
  Point p = to_point(v);
  while (true) {
    auto it = impl_->known.find(p);
    if (it != impl_->known.end()) {
      if (it->second <= max_radius) return it->second;
      return std::nullopt;
    }
    if (!impl_->spheres.empty() && impl_->spheres.size() - 1 >= max_radius) return std::nullopt;
    impl_->extend();
  }
}

std::size_t VertexLengthTable::sphere_size(std::uint64_t r) {
  while (impl_->spheres.size() <= r) impl_->extend();
  return impl_->spheres[r].size();
}

std::uint64_t VertexLengthTable::radius_built() const {
  return impl_->spheres.empty() ? 0 : impl_->spheres.size() - 1;
}

std::vector<IntVector> VertexLengthTable::sphere(std::uint64_t r) {
  sphere_size(r);
  std::vector<IntVector> out;
  for (const auto& p : impl_->spheres[r]) out.push_back(to_vector(p));
  return out;
}

GeodesicResult geodesic_length_bfs(const GraphOfGroups& g, const Word& w, std::uint64_t max_radius) {
  Britton br(g);
  GeodesicResult result;
  result.method = GeodesicResult::Method::breadth_first;
  result.radius = max_radius;
  NormalForm target = br.reduce(w);
  NormalForm start = br.identity();
  if (target == start) {
    result.length = 0;
    result.states = 1;
    return result;
  }
  std::vector<std::pair<std::string, int>> moves;
  for (const auto& gen : g.generators()) {
    moves.emplace_back(gen.name, 1);
    moves.emplace_back(gen.name, -1);
  }
  std::unordered_set<NormalForm, NormalFormHash> seen{start};
  std::vector<NormalForm> frontier{start};
  for (std::uint64_t r = 1; r <= max_radius && !frontier.empty(); ++r) {
    std::vector<NormalForm> next;
    for (const auto& nf : frontier)
      for (const auto& [letter, sign] : moves) {
        NormalForm x = br.multiply(nf, letter, sign);
        if (!seen.insert(x).second) continue;
        if (x == target) {
          result.length = r;
          result.states = seen.size();
          return result;
        }
        next.push_back(std::move(x));
      }
    frontier = std::move(next);
  }
  result.states = seen.size();
  return result;
}

GeodesicResult geodesic_length(const GraphOfGroups& g, const Word& w, std::uint64_t max_radius) {
  if (g.vertex_count() == 1) {
    NormalForm nf = britton_reduce(g, w);
    if (auto v = nf.vertex_element()) {
      VertexLengthTable table(g);
      GeodesicResult result;
      result.method = GeodesicResult::Method::vertex_layers;
      result.radius = max_radius;
      result.length = table.length(*v, max_radius);
      result.states = 0;
      for (std::uint64_t r = 0; r <= table.radius_built(); ++r) result.states += table.sphere_size(r);
      return result;
    }
  }
  return geodesic_length_bfs(g, w, max_radius);
}

namespace {

struct Expander {
  std::string letter;
  BigInt eigenvalue;
  // true: excursion t^-1 (.) t over the alpha image; false: t (.) t^-1.
  bool through_alpha = true;
};

std::optional<Expander> find_expander(const GraphOfGroups& g, const IntVector& v) {
  std::optional<Expander> best;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    if (e.in_tree || e.source != g.base_vertex() || e.target != g.base_vertex()) continue;
    for (bool through_alpha : {true, false}) {
      const IntMatrix& src = through_alpha ? e.alpha : e.omega;
      const IntMatrix& dst = through_alpha ? e.omega : e.alpha;
      auto c = lattice_solve(src, v);
      if (!c) continue;
      IntVector image = dst.apply(*c);
      // image = lambda v with integer lambda
      std::optional<Rational> lambda;
      bool ok = true;
      for (std::size_t j = 0; j < v.size() && ok; ++j) {
        if (v[j] == 0) {
          ok = image[j] == 0;
          continue;
        }
        Rational ratio(image[j], v[j]);
        if (lambda && *lambda != ratio) ok = false;
        lambda = ratio;
      }
      if (!ok || !lambda || !lambda->is_integer() || abs(lambda->numerator()) < 2) continue;
      if (!best || abs(lambda->numerator()) > abs(best->eigenvalue))
        best = Expander{e.name, lambda->numerator(), through_alpha};
    }
  }
  return best;
}

struct UpperBound {
  std::uint64_t length;
  Word word;
};

// Base-|lambda| rewriting: m v = lambda q v + r v with the excursion
// carrying q v, whichever is shorter than writing m v out.
UpperBound horner_bound(const std::vector<std::string>& letters, const IntVector& v,
                        const Expander& ex, std::uint64_t m,
                        std::unordered_map<std::uint64_t, UpperBound>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  IntVector mv = v;
  for (auto& x : mv) x *= static_cast<unsigned long>(m);
  Word direct = vertex_element_word(letters, mv);
  UpperBound best{direct.length(), direct};
  std::uint64_t base = BigInt(abs(ex.eigenvalue)).get_ui();
  std::uint64_t q = m / base;
  std::uint64_t r = m % base;
  if (q > 0) {
    UpperBound inner = horner_bound(letters, v, ex, q, memo);
    Word carried = ex.eigenvalue < 0 ? inner.word.inverse() : inner.word;
    Word t = Word::letter(ex.letter);
    Word excursion = ex.through_alpha ? t.inverse() * carried * t : t * carried * t.inverse();
    IntVector rv = v;
    for (auto& x : rv) x *= static_cast<unsigned long>(r);
    Word w = excursion * vertex_element_word(letters, rv);
    if (w.length() < best.length) best = {w.length(), w};
  }
  memo.emplace(m, best);
  return best;
}

}  // namespace

DistortionProfile distortion_profile(const GraphOfGroups& g, const IntVector& v,
                                     const std::vector<std::uint64_t>& powers,
                                     std::uint64_t exact_radius) {
  if (v.size() != g.rank()) throw std::invalid_argument("vertex vector has the wrong dimension");
  if (std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; }))
    throw std::invalid_argument("distortion needs a nonzero vertex element");
  DistortionProfile prof;
  prof.v = v;
  prof.exact_radius = exact_radius;
  const auto letters = g.vertex_letters(g.base_vertex());

  auto ex = find_expander(g, v);
  if (ex) {
    prof.expanding_letter = ex->letter;
    prof.eigenvalue = ex->eigenvalue;
  }

  std::optional<VertexLengthTable> table;
  if (g.vertex_count() == 1) {
    table.emplace(g);
    // The analytic bound |x| >= log ||x||_inf / log C, with C = max(2, sqrt K)
    // and K the largest inf-norm of an excursion map, holds by induction
    // over the piece decomposition.
    Rational k(1);
    for (const auto& e : g.edges()) {
      QMatrix a = to_rational(e.alpha), w = to_rational(e.omega);
      k = std::max({k, operator_norm_inf(w * inverse(a)), operator_norm_inf(a * inverse(w))});
    }
    prof.growth_constant = std::max(2.0, std::sqrt(k.to_double()));
  }

  Britton br(g);
  std::unordered_map<std::uint64_t, UpperBound> memo;
  for (std::uint64_t m : powers) {
    DistortionRow row;
    row.m = m;
    IntVector mv = v;
    for (auto& x : mv) x *= static_cast<unsigned long>(m);
    if (ex) {
      UpperBound ub = horner_bound(letters, v, *ex, m, memo);
      row.upper_bound = ub.length;
      row.upper_bound_word = ub.word;
      auto reduced = br.reduce(ub.word).vertex_element();
      row.upper_bound_certified = reduced && *reduced == mv;
    } else {
      Word direct = vertex_element_word(letters, mv);
      row.upper_bound = direct.length();
      row.upper_bound_word = direct;
      row.upper_bound_certified = true;
    }
    if (table) {
      try {
        row.exact_length = table->length(mv, exact_radius);
      } catch (const std::overflow_error&) {
      }
      BigInt norm = 0;
      for (const auto& x : mv) norm = std::max(norm, BigInt(abs(x)));
      row.lower_bound = std::log(norm.get_d()) / std::log(*prof.growth_constant);
    }
    if (m >= 2) {
      double len = static_cast<double>(row.exact_length ? *row.exact_length : *row.upper_bound);
      row.ratio = len / std::log(static_cast<double>(m));
      if (!prof.max_ratio || *row.ratio > *prof.max_ratio) prof.max_ratio = row.ratio;
    }
    prof.rows.push_back(std::move(row));
  }
  return prof;
}

}  // namespace gbs
