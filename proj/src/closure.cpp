#include "gbs/closure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gbs/cartan.hpp"

namespace gbs {

namespace {

std::vector<BigInt> gcd_free_base(std::vector<BigInt> numbers) {
  std::vector<BigInt> base;
  for (auto& n : numbers)
    if (n > 1) base.push_back(n);
  for (bool changed = true; changed;) {
    changed = false;
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    for (std::size_t i = 0; i < base.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        BigInt g = gcd(base[i], base[j]);
        if (g == 1) continue;
        BigInt a = base[i] / g, b = base[j] / g;
        base.erase(base.begin() + static_cast<std::ptrdiff_t>(j));
        base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
        for (const BigInt& x : {a, b, g})
          if (x > 1) base.push_back(x);
        changed = true;
      }
  }
  return base;
}

std::vector<BigInt> exponents(BigInt n, const std::vector<BigInt>& base) {
  std::vector<BigInt> out(base.size(), BigInt(0));
  for (std::size_t i = 0; i < base.size(); ++i)
    while (n % base[i] == 0) {
      n /= base[i];
      ++out[i];
    }
  return out;
}

std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

Rational rational_gcd(const std::vector<Rational>& xs) {
  BigInt num = 0, den = 1;
  for (const auto& x : xs) {
    num = gcd(num, x.numerator());
    den = lcm(den, x.denominator());
  }
  return Rational(num, den);
}

Rational entry_ratio(const QMatrix& t) { return (t(0, 0) / t(1, 1)).abs(); }

}  // namespace

PositiveValueGroup positive_value_group(const std::vector<Rational>& values) {
  PositiveValueGroup out;
  std::vector<BigInt> numbers;
  for (const auto& v : values) {
    if (v.is_zero()) throw std::invalid_argument("value group needs nonzero values");
    Rational a = v.abs();
    out.generators.push_back(a);
    numbers.push_back(a.numerator());
    numbers.push_back(a.denominator());
  }
  auto base = gcd_free_base(numbers);
  std::vector<std::vector<BigInt>> vecs;
  std::vector<std::vector<Rational>> rows;
  for (const auto& a : out.generators) {
    auto up = exponents(a.numerator(), base);
    auto down = exponents(a.denominator(), base);
    std::vector<BigInt> e(base.size());
    std::vector<Rational> row;
    for (std::size_t i = 0; i < base.size(); ++i) {
      e[i] = up[i] - down[i];
      row.emplace_back(e[i]);
    }
    vecs.push_back(e);
    rows.push_back(row);
  }
  out.rank = rank_of(rows);
  if (out.rank == 0) {
    out.cyclic_generator = Rational(1);
  } else if (out.rank == 1) {
    // All exponent vectors are integer multiples of one primitive vector.
    auto lead = std::find_if(vecs.begin(), vecs.end(), [](const std::vector<BigInt>& e) {
      return std::any_of(e.begin(), e.end(), [](const BigInt& x) { return x != 0; });
    });
    BigInt content = 0;
    for (const auto& x : *lead) content = gcd(content, x);
    std::vector<BigInt> prim(lead->size());
    for (std::size_t i = 0; i < prim.size(); ++i) prim[i] = (*lead)[i] / content;
    BigInt multiplier_gcd = 0;
    for (const auto& e : vecs) {
      auto k = std::find_if(prim.begin(), prim.end(), [](const BigInt& x) { return x != 0; });
      std::size_t idx = static_cast<std::size_t>(k - prim.begin());
      multiplier_gcd = gcd(multiplier_gcd, e[idx] / prim[idx]);
    }
    Rational gen(1);
    for (std::size_t i = 0; i < base.size(); ++i) {
      BigInt ex = prim[i] * multiplier_gcd;
      gen *= pow(Rational(base[i]), ex.get_si());
    }
    if (gen < Rational(1)) gen = gen.inverse();
    out.cyclic_generator = gen;
  }
  return out;
}

std::string to_string(ClosureDescription::Kind k) {
  return k == ClosureDescription::Kind::triangular ? "triangular" : "not-available";
}

ClosureDescription closure_describe(const MatrixGroup& group, std::size_t window_size) {
  ClosureDescription out;
  out.window_size = window_size;
  for (const auto& g : group.generators)
    if (g.dim() != 2) throw std::invalid_argument("closure description needs n = 2");

  std::optional<ProjPoint> line;
  auto pivot = std::find_if(group.generators.begin(), group.generators.end(),
                            [](const QMatrix& g) { return !is_scalar(g); });
  if (pivot == group.generators.end()) {
    line = ProjPoint(QuadraticNumber(Rational(1)), QuadraticNumber(Rational(0)));
  } else {
    for (const auto& p : eigen_directions(*pivot).directions) {
      if (!p.is_rational()) continue;
      bool common = std::all_of(group.generators.begin(), group.generators.end(),
                                [&](const QMatrix& g) { return apply(g, p) == p; });
      if (common) {
        line = p;
        break;
      }
    }
  }
  if (!line) {
    out.reason = "no rational invariant line";
    return out;
  }

  QMatrix c = line->x().is_zero()
                  ? QMatrix{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}
                  : QMatrix{{Rational(1), Rational(0)}, {line->y().rational_part(), Rational(1)}};
  QMatrix c_inv = inverse(c);
  out.kind = ClosureDescription::Kind::triangular;
  out.conjugator = c;
  std::vector<Rational> diag, ratios;
  for (const auto& g : group.generators) {
    QMatrix t = c_inv * g * c;
    out.triangular_generators.push_back(t);
    diag.push_back(t(0, 0).abs());
    ratios.push_back(entry_ratio(t));
  }
  out.diagonal = positive_value_group(diag);
  out.ratios = positive_value_group(ratios);

  const auto& ts = out.triangular_generators;
  auto add_seed = [&](const QMatrix& u) {
    Rational x = u(0, 1) / u(0, 0);
    if (!x.is_zero() && std::find(out.unipotent_seeds.begin(), out.unipotent_seeds.end(), x.abs()) ==
                            out.unipotent_seeds.end())
      out.unipotent_seeds.push_back(x.abs());
  };
  for (const auto& t : ts)
    if (t(0, 0) == t(1, 1)) add_seed(t);
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      add_seed(ts[i] * ts[j] * inverse(ts[i]) * inverse(ts[j]));
      if (ts[i](0, 0) == ts[j](0, 0) && ts[i](1, 1) == ts[j](1, 1)) add_seed(ts[i] * inverse(ts[j]));
    }

  auto expanding = std::find_if(ratios.begin(), ratios.end(), [](const Rational& r) { return r != Rational(1); });
  out.unipotent_dense = !out.unipotent_seeds.empty() && expanding != ratios.end();
  if (out.unipotent_dense) {
    Rational r = *expanding > Rational(1) ? *expanding : expanding->inverse();
    Rational x = out.unipotent_seeds.front();
    for (std::size_t k = 0; k < window_size; ++k) out.evidence_window.push_back(x * pow(r, -static_cast<long>(k)));
  } else {
    out.unipotent_generator = out.unipotent_seeds.empty() ? Rational(0) : rational_gcd(out.unipotent_seeds);
  }
  return out;
}

std::string to_string(CoarseDensity::Method m) {
  switch (m) {
    case CoarseDensity::Method::exact: return "exact";
    case CoarseDensity::Method::exact_subgroup: return "exact (subgroup)";
    case CoarseDensity::Method::sampled: return "sampled";
    case CoarseDensity::Method::none: return "none";
  }
  return "?";
}

namespace {

// Closure cocompact in the upper triangular group: a nontrivial ratio group
// together with a dense unipotent part.
bool triangular_cocompact(const ClosureDescription& cd) {
  return cd.kind == ClosureDescription::Kind::triangular && !cd.ratios.trivial() && cd.unipotent_dense;
}

}  // namespace

CoarseDensity coarse_density(const MatrixGroup& group, int radius, double mesh) {
  CoarseDensity out;
  TitsResult tits = virtually_solvable(group);
  if (tits.virtually_solvable == Verdict::yes) {
    ClosureDescription cd = closure_describe(group);
    out.method = CoarseDensity::Method::exact;
    if (triangular_cocompact(cd)) {
      out.coarsely_dense = Verdict::yes;
      out.reason = "closure is cocompact in the triangular group, which is cocompact in SL2(R)";
    } else {
      out.coarsely_dense = Verdict::no;
      if (cd.kind != ClosureDescription::Kind::triangular)
        out.reason = "group preserves a pair of points or is bounded modulo scalars";
      else if (cd.ratios.trivial())
        out.reason = "diagonal ratios are trivial: the group stays near a horocycle";
      else
        out.reason = "abelian diagonalizable group: it stays near a geodesic";
    }
    return out;
  }

  const std::size_t k = group.generators.size();
  if (k > 1 && k <= 12) {
    for (std::size_t size = k - 1; size >= 1; --size) {
      for (unsigned mask = 1; mask < (1u << k); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
        MatrixGroup sub;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (1u << i)) {
            sub.generators.push_back(group.generators[i]);
            sub.names.push_back(group.names[i]);
          }
        if (virtually_solvable(sub).virtually_solvable != Verdict::yes) continue;
        if (!triangular_cocompact(closure_describe(sub))) continue;
        out.coarsely_dense = Verdict::yes;
        out.method = CoarseDensity::Method::exact_subgroup;
        out.subgroup = sub.names;
        out.reason = "a generator subset has closure cocompact in the triangular group";
        return out;
      }
      if (size == 1) break;
    }
  }

  out.method = CoarseDensity::Method::sampled;
  std::vector<double> spreads;
  for (const auto& [w, m] : short_words(group, static_cast<std::size_t>(radius)))
    spreads.push_back(cartan_projection(m).spread());
  out.sampled_elements = spreads.size();
  double top = spreads.empty() ? 0 : *std::max_element(spreads.begin(), spreads.end());
  double reach = top / 2;
  out.cells = static_cast<std::size_t>(std::ceil(reach / mesh));
  std::vector<bool> hit(out.cells, false);
  for (double s : spreads) {
    auto cell = static_cast<std::size_t>(s / mesh);
    if (cell < out.cells) hit[cell] = true;
  }
  out.cells_hit = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  if (out.cells > 0 && out.cells_hit == out.cells) {
    out.coarsely_dense = Verdict::yes;
    out.reason = "Cartan spreads of the ball hit every mesh cell";
  } else {
    out.reason = "Cartan spreads of the ball leave mesh cells empty";
  }
  return out;
}

}  // namespace gbs
