#include "gbs/classify.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <unordered_set>

#include "gbs/cartan.hpp"
#include "gbs/lattice.hpp"

namespace gbs {

std::string to_string(WhyteCase c) {
  switch (c) {
    case WhyteCase::proper_2a: return "2a";
    case WhyteCase::amenable_2b: return "2b";
    case WhyteCase::folded_2c: return "2c";
    case WhyteCase::out_of_scope: return "out-of-scope(ends)";
    case WhyteCase::undetermined: return "undetermined";
  }
  return "?";
}

std::string to_string(QIVerdict::Kind k) {
  switch (k) {
    case QIVerdict::Kind::quasi_isometric: return "quasi-isometric";
    case QIVerdict::Kind::not_quasi_isometric: return "not-quasi-isometric";
    case QIVerdict::Kind::undetermined: return "undetermined";
  }
  return "?";
}

bool ClassificationReport::decided() const {
  return whyte_case != WhyteCase::undetermined && haagerup != Verdict::undetermined;
}

namespace {

bool all_unimodular(const GraphOfGroups& g) {
  return std::all_of(g.edges().begin(), g.edges().end(), [](const GraphOfGroups::Edge& e) {
    return sublattice_index(e.alpha) == 1 && sublattice_index(e.omega) == 1;
  });
}

// No nontrivial reduced word of length <= max_length over the stable letters
// maps to the identity.
bool free_injective_up_to(const HolonomyData& hd, int max_length) {
  std::vector<QMatrix> moves;
  for (const auto& s : hd.stable) {
    moves.push_back(s.matrix);
    moves.push_back(inverse(s.matrix));
  }
  const QMatrix id = QMatrix::identity(hd.rank);
  struct Node {
    QMatrix m;
    int last;
  };
  std::vector<Node> frontier{{id, -1}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier)
      for (int i = 0; i < static_cast<int>(moves.size()); ++i) {
        if (node.last >= 0 && (node.last ^ 1) == i) continue;
        QMatrix m = node.m * moves[i];
        if (m == id) return false;
        next.push_back({std::move(m), i});
      }
    frontier = std::move(next);
    if (frontier.size() > 2000000) break;
  }
  return true;
}

MatrixGroup holonomy_group(const HolonomyData& hd) {
  return MatrixGroup(hd.image_generators(), hd.stable_letters());
}

std::vector<double> spreads(const MatrixGroup& g, std::size_t radius) {
  std::vector<double> out;
  for (const auto& [w, m] : short_words(g, radius)) out.push_back(cartan_projection(m).spread());
  out.push_back(0.0);
  std::sort(out.begin(), out.end());
  return out;
}

// One-sided distance from the points of a below cutoff to the sorted set b.
double directed(const std::vector<double>& a, const std::vector<double>& b, double cutoff) {
  double worst = 0;
  for (double x : a) {
    if (x > cutoff) break;
    auto it = std::lower_bound(b.begin(), b.end(), x);
    double d = it == b.end() ? x - b.back() : *it - x;
    if (it != b.begin()) d = std::min(d, x - *std::prev(it));
    worst = std::max(worst, d);
  }
  return worst;
}

double spread_distance(const MatrixGroup& a, const MatrixGroup& b, std::size_t radius) {
  auto sa = spreads(a, radius), sb = spreads(b, radius);
  double cutoff = std::min(sa.back(), sb.back());
  return std::max(directed(sa, sb, cutoff), directed(sb, sa, cutoff));
}

bool spectral_radius_above_one(const QMatrix& m) {
  for (const auto& lambda : eigen_directions(m).eigenvalues) {
    if (lambda.is_real()) {
      if ((lambda - QuadraticNumber(Rational(1))).sign() > 0) return true;
      if ((lambda + QuadraticNumber(Rational(1))).sign() < 0) return true;
    } else {
      Rational modulus2 = lambda.rational_part() * lambda.rational_part() -
                          lambda.radical_coefficient() * lambda.radical_coefficient() * Rational(lambda.radicand());
      if (modulus2 > Rational(1)) return true;
    }
  }
  return false;
}

}  // namespace

ClassificationReport whyte_classify(const GraphOfGroups& g, const ClassifyOptions& opts) {
  ClassificationReport r;
  r.bass_serre = bass_serre_degrees(g);
  r.underlying_rank = underlying_rank(g);
  r.holonomy = compute_holonomy(g);
  r.evidence.push_back({"ends", "Bass-Serre tree: " + to_string(r.bass_serre.ends)});

  if (r.bass_serre.ends != EndsClass::infinitely_many) {
    r.amenable = Verdict::yes;
    r.amenable_reason = r.bass_serre.ends == EndsClass::bounded ? "the group fixes a vertex of its tree"
                                                                : "the group acts on a line with Z^n stabilizers";
    r.whyte_case = WhyteCase::out_of_scope;
    return r;
  }

  const auto& red = r.bass_serre.reduced;
  bool ascending = red.size() == 1 && red[0].source == red[0].target &&
                   (red[0].source_index == 1 || red[0].target_index == 1);
  if (ascending) {
    r.amenable = Verdict::yes;
    r.amenable_reason = "reduced graph is a single loop with an index-1 inclusion: ascending HNN extension";
    r.whyte_case = WhyteCase::amenable_2b;
    r.evidence.push_back({"amenability", r.amenable_reason});
    return r;
  }
  r.amenable = Verdict::no;
  if (r.underlying_rank >= 2) {
    r.amenable_reason = "killing the vertex letters leaves a free group of rank " +
                        std::to_string(r.underlying_rank);
  } else {
    r.amenable_reason =
        "reduced graph is not an ascending loop and the tree has infinitely many ends, so the action fixes no "
        "end or line";
  }
  r.evidence.push_back({"amenability", "nonamenable: " + r.amenable_reason});

  DiscretenessProbe probe = non_discreteness_witness(r.holonomy, opts.epsilon, opts.witness_word_length);
  r.discreteness = probe;
  if (probe.outcome == DiscretenessProbe::Outcome::witness) {
    r.whyte_case = WhyteCase::folded_2c;
    r.evidence.push_back({"discreteness", "holonomy of " + probe.witness->str() + " is " + to_string(*probe.image) +
                                              ", within " + probe.distance->str() + " of the identity"});
    return r;
  }
  if (probe.outcome == DiscretenessProbe::Outcome::discrete_integral && all_unimodular(g)) {
    bool injective = free_injective_up_to(r.holonomy, opts.injectivity_word_length);
    r.injectivity_consistent = injective;
    if (injective) {
      r.whyte_case = WhyteCase::proper_2a;
      r.evidence.push_back({"discreteness", "all inclusions unimodular and holonomy integral; no relation among "
                                            "stable-letter images up to length " +
                                                std::to_string(opts.injectivity_word_length)});
    } else {
      r.evidence.push_back({"discreteness", "holonomy is integral but not injective on the stable letters; "
                                            "the 2a form is ambiguous"});
    }
    return r;
  }
  r.evidence.push_back({"discreteness", probe.outcome == DiscretenessProbe::Outcome::discrete_integral
                                            ? "holonomy is integral but some inclusion is not unimodular"
                                            : "no witness of non-discreteness within the search bound"});
  return r;
}

void cv_properties(const GraphOfGroups& g, ClassificationReport& r) {
  if (r.holonomy.rank != g.rank()) r.holonomy = compute_holonomy(g);
  Verdict v = Verdict::undetermined;
  if (g.rank() == 1) {
    TitsResult t;
    t.virtually_solvable = Verdict::yes;
    t.certificate = TitsCertificate{TitsCertificate::Kind::scalar, std::nullopt, {}, std::nullopt};
    t.note = "1x1 holonomy image is abelian";
    r.tits = t;
    v = Verdict::yes;
  } else if (g.rank() == 2) {
    r.tits = virtually_solvable(holonomy_group(r.holonomy));
    v = r.tits->virtually_solvable;
  } else {
    r.cv_note = "undetermined (Tits module limited to n=2)";
  }
  r.haagerup = v;
  r.weakly_amenable = v;
  r.cowling_haagerup = v == Verdict::yes ? "1" : v == Verdict::no ? "not weakly amenable" : "undetermined";
  if (r.tits && r.tits->certificate)
    r.evidence.push_back({"holonomy closure", std::string(v == Verdict::yes ? "amenable" : "not amenable") +
                                                  " (certificate: " + to_string(r.tits->certificate->kind) + ")"});
}

ClassificationReport classify(const GraphOfGroups& g, const ClassifyOptions& opts) {
  ClassificationReport r = whyte_classify(g, opts);
  cv_properties(g, r);
  return r;
}

QIVerdict qi_compare(const GraphOfGroups& a, const GraphOfGroups& b, const ClassifyOptions& opts) {
  if (a.rank() != b.rank()) throw std::invalid_argument("cannot compare graphs of different rank");
  QIVerdict out;
  if (a.spec() == b.spec()) {
    out.verdict = QIVerdict::Kind::quasi_isometric;
    out.reasons.push_back({"identity", "identical graphs of groups"});
    return out;
  }
  ClassificationReport ra = whyte_classify(a, opts);
  ClassificationReport rb = whyte_classify(b, opts);
  out.reasons.push_back({"ends", to_string(ra.bass_serre.ends) + " / " + to_string(rb.bass_serre.ends)});
  out.reasons.push_back({"whyte case", to_string(ra.whyte_case) + " / " + to_string(rb.whyte_case)});

  if (ra.amenable != Verdict::undetermined && rb.amenable != Verdict::undetermined && ra.amenable != rb.amenable) {
    out.verdict = QIVerdict::Kind::not_quasi_isometric;
    out.reasons.push_back({"amenability", "one group is amenable and the other is not"});
    return out;
  }
  if (ra.bass_serre.ends != EndsClass::infinitely_many || rb.bass_serre.ends != EndsClass::infinitely_many) {
    out.reasons.push_back({"scope", "the subclass criterion needs trees with infinitely many ends"});
    return out;
  }
  if (ra.whyte_case == WhyteCase::undetermined || rb.whyte_case == WhyteCase::undetermined) return out;
  if (ra.whyte_case != rb.whyte_case) {
    out.verdict = QIVerdict::Kind::not_quasi_isometric;
    out.reasons.push_back({"subclass", "the subclasses are quasi-isometry invariant and differ"});
    return out;
  }
  if (ra.whyte_case == WhyteCase::amenable_2b) {
    out.reasons.push_back({"subclass", "both ascending; the finer classification inside 2b is not implemented"});
    return out;
  }
  if (ra.whyte_case == WhyteCase::proper_2a) {
    out.reasons.push_back({"subclass", "both 2a; Hausdorff equivalence of discrete holonomy is not implemented"});
    return out;
  }
  if (a.rank() != 2) {
    out.reasons.push_back({"holonomy", "Hausdorff evidence is limited to n=2"});
    return out;
  }
  out.density_a = coarse_density(holonomy_group(ra.holonomy));
  out.density_b = coarse_density(holonomy_group(rb.holonomy));
  auto describe = [](const CoarseDensity& d) {
    std::string s = to_string(d.coarsely_dense) + " (" + to_string(d.method);
    if (!d.subgroup.empty()) {
      s += " via <";
      for (std::size_t i = 0; i < d.subgroup.size(); ++i) s += (i ? "," : "") + d.subgroup[i];
      s += ">";
    }
    return s + ")";
  };
  out.reasons.push_back({"coarse density", describe(*out.density_a) + " / " + describe(*out.density_b)});
  if (out.density_a->coarsely_dense == Verdict::yes && out.density_b->coarsely_dense == Verdict::yes) {
    out.verdict = QIVerdict::Kind::quasi_isometric;
    bool exact = out.density_a->method != CoarseDensity::Method::sampled &&
                 out.density_b->method != CoarseDensity::Method::sampled;
    out.reasons.push_back({"hausdorff", std::string("both holonomy images are at finite Hausdorff distance from "
                                                    "SL2(R)") +
                                            (exact ? "" : " (sampled evidence)") +
                                            "; both lie in subclass 2c, a single quasi-isometry class"});
    return out;
  }
  // Sampled comparison of Cartan spreads over balls of growing radius.
  std::vector<double> distances;
  for (std::size_t radius : {4u, 6u, 8u})
    distances.push_back(spread_distance(holonomy_group(ra.holonomy), holonomy_group(rb.holonomy), radius));
  std::string trace;
  for (std::size_t i = 0; i < distances.size(); ++i) trace += (i ? ", " : "") + std::to_string(distances[i]);
  bool stable = distances[2] <= distances[1] + 0.5 && distances[2] <= 1.0;
  out.reasons.push_back({"hausdorff", "sampled Cartan spread distances at radii 4, 6, 8: " + trace +
                                          (stable ? " (stabilizing; sampled evidence)" : " (not stabilizing)")});
  if (stable) out.verdict = QIVerdict::Kind::quasi_isometric;
  return out;
}

CompressionReport compression_report(const GraphOfGroups& g, const Rational& p) {
  if (p < Rational(1)) throw std::invalid_argument("p must be at least 1");
  CompressionReport out;
  out.p = p;
  if (g.rank() != 2) {
    out.reasons.push_back({"scope", "compression report needs n=2"});
    return out;
  }
  ClassificationReport r;
  r.holonomy = compute_holonomy(g);
  cv_properties(g, r);
  out.amenable_closure = r.haagerup;

  if (r.haagerup == Verdict::no) {
    if (p <= Rational(2)) {
      out.kind = CompressionReport::Kind::zero;
      out.alpha = Rational(0);
      out.reasons.push_back({"haagerup", "no Haagerup property and 1 <= p <= 2: a proper affine action on L^p "
                                         "would give one"});
    } else {
      out.reasons.push_back({"haagerup", "no Haagerup property, but the vanishing argument needs p <= 2"});
    }
    return out;
  }
  if (r.haagerup == Verdict::undetermined) {
    out.reasons.push_back({"haagerup", "undetermined"});
    return out;
  }

  MatrixGroup hol = holonomy_group(r.holonomy);
  ClosureDescription cd = closure_describe(hol);
  if (cd.kind == ClosureDescription::Kind::triangular && !cd.diagonal.trivial() && cd.diagonal.discrete()) {
    out.cocompact_in_connected = Verdict::yes;
    out.reasons.push_back({"cocompact", "triangular closure with discrete cyclic diagonal group <" +
                                            cd.diagonal.cyclic_generator->str() + ">"});
  } else {
    out.reasons.push_back({"cocompact", "no certificate of cocompactness in a connected subgroup"});
  }
  for (const auto& s : r.holonomy.stable)
    if (spectral_radius_above_one(s.matrix)) {
      out.exponential_distortion = Verdict::yes;
      out.distortion_letter = s.letter;
      out.reasons.push_back({"distortion", "holonomy of " + s.letter + " has spectral radius > 1"});
      break;
    }
  if (out.exponential_distortion != Verdict::yes)
    out.reasons.push_back({"distortion", "no holonomy generator with spectral radius > 1"});

  if (out.cocompact_in_connected == Verdict::yes && out.exponential_distortion == Verdict::yes) {
    out.kind = CompressionReport::Kind::value;
    Rational inv_p = p.inverse();
    out.alpha = std::max(inv_p, Rational(BigInt(1), BigInt(2)));
  }
  return out;
}

}  // namespace gbs
