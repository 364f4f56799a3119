#include "gbs/report.hpp"

#include <cstdio>
#include <sstream>

namespace gbs {

using nlohmann::json;

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(row);
  }
  return rows;
}

namespace {

json point_json(const ProjPoint& p) { return json::array({p.x().str(), p.y().str()}); }

json arc_json(const Arc& a) {
  return {{"start", a.start.str()},
          {"end", a.end.str()},
          {"start_closed", a.start_closed},
          {"end_closed", a.end_closed}};
}

json evidence_json(const std::vector<Evidence>& ev) {
  json out = json::array();
  for (const auto& e : ev) out.push_back({{"topic", e.topic}, {"detail", e.detail}});
  return out;
}

std::string fixed(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string dump(const json& j) { return j.dump(2, ' ', false) + "\n"; }

}  // namespace

json to_json(const TitsCertificate& c) {
  json out = {{"kind", to_string(c.kind)}};
  if (c.line) out["line"] = point_json(*c.line);
  if (!c.pair.empty()) {
    out["pair"] = json::array();
    for (const auto& p : c.pair) out["pair"].push_back(point_json(p));
  }
  if (c.free_pair) {
    const FreePair& fp = *c.free_pair;
    out["free_pair"] = {{"g_word", fp.g_word.str()},   {"h_word", fp.h_word.str()},
                        {"g", to_json(fp.g)},           {"h", to_json(fp.h)},
                        {"attract_g", arc_json(fp.attract_g)}, {"repel_g", arc_json(fp.repel_g)},
                        {"attract_h", arc_json(fp.attract_h)}, {"repel_h", arc_json(fp.repel_h)}};
  }
  return out;
}

json to_json(const DiscretenessProbe& p) {
  json out = {{"outcome", to_string(p.outcome)},
              {"epsilon", p.epsilon.str()},
              {"max_word_length", p.max_word_length},
              {"words_examined", p.words_examined}};
  if (p.witness) out["witness"] = p.witness->str();
  if (p.image) out["image"] = to_json(*p.image);
  if (p.distance) out["distance"] = p.distance->str();
  return out;
}

namespace {

json holonomy_json(const HolonomyData& h) {
  json stable = json::object();
  for (const auto& s : h.stable) stable[s.letter] = to_json(s.matrix);
  return {{"rank", h.rank}, {"base_vertex", h.base_vertex}, {"stable_letters", stable}};
}

}  // namespace

json to_json(const ClassificationReport& r) {
  json degrees = json::array();
  for (const auto& d : r.bass_serre.degrees) degrees.push_back(d.get_str());
  json reduced = json::array();
  for (const auto& e : r.bass_serre.reduced)
    reduced.push_back({{"source", e.source},
                       {"target", e.target},
                       {"source_index", e.source_index.get_str()},
                       {"target_index", e.target_index.get_str()}});
  json out = {{"bass_serre", {{"degrees", degrees}, {"ends", to_string(r.bass_serre.ends)}, {"reduced", reduced}}},
              {"underlying_rank", r.underlying_rank},
              {"verdicts",
               {{"amenable", to_string(r.amenable)},
                {"whyte_case", to_string(r.whyte_case)},
                {"haagerup", to_string(r.haagerup)},
                {"weakly_amenable", to_string(r.weakly_amenable)},
                {"cowling_haagerup", r.cowling_haagerup}}},
              {"amenable_reason", r.amenable_reason},
              {"holonomy", holonomy_json(r.holonomy)},
              {"evidence", evidence_json(r.evidence)},
              {"decided", r.decided()}};
  if (r.injectivity_consistent) out["injectivity_consistent"] = *r.injectivity_consistent;
  if (!r.cv_note.empty()) out["cv_note"] = r.cv_note;
  json certs = json::object();
  if (r.discreteness) certs["discreteness"] = to_json(*r.discreteness);
  if (r.tits) {
    json t = {{"virtually_solvable", to_string(r.tits->virtually_solvable)}, {"note", r.tits->note}};
    if (r.tits->certificate) t["certificate"] = to_json(*r.tits->certificate);
    certs["tits"] = t;
  }
  out["certificates"] = certs;
  return out;
}

json to_json(const QIVerdict& v) {
  json out = {{"verdict", to_string(v.verdict)}, {"evidence", evidence_json(v.reasons)}};
  auto density = [](const CoarseDensity& d) {
    json j = {{"coarsely_dense", to_string(d.coarsely_dense)},
              {"method", to_string(d.method)},
              {"reason", d.reason}};
    if (!d.subgroup.empty()) j["subgroup"] = d.subgroup;
    if (d.method == CoarseDensity::Method::sampled)
      j["sampling"] = {{"elements", d.sampled_elements}, {"cells", d.cells}, {"cells_hit", d.cells_hit}};
    return j;
  };
  if (v.density_a) out["coarse_density_a"] = density(*v.density_a);
  if (v.density_b) out["coarse_density_b"] = density(*v.density_b);
  return out;
}

json to_json(const DistortionProfile& d) {
  json v = json::array();
  for (const auto& x : d.v) v.push_back(x.get_str());
  json rows = json::array();
  for (const auto& row : d.rows) {
    json j = {{"m", row.m}, {"upper_bound_certified", row.upper_bound_certified}};
    if (row.upper_bound) j["upper_bound"] = *row.upper_bound;
    if (row.upper_bound_word) j["upper_bound_word"] = row.upper_bound_word->str();
    if (row.exact_length) j["exact_length"] = *row.exact_length;
    if (row.lower_bound) j["analytic_lower_bound"] = fixed(*row.lower_bound);
    if (row.ratio) j["ratio"] = fixed(*row.ratio);
    rows.push_back(j);
  }
  json out = {{"vector", v}, {"rows", rows}, {"exact_radius", d.exact_radius}};
  if (d.expanding_letter) out["expanding_letter"] = *d.expanding_letter;
  if (d.eigenvalue) out["eigenvalue"] = d.eigenvalue->get_str();
  if (d.growth_constant) out["growth_constant"] = fixed(*d.growth_constant);
  if (d.max_ratio) out["max_ratio"] = fixed(*d.max_ratio);
  return out;
}

json to_json(const CompressionReport& c) {
  const char* kind = c.kind == CompressionReport::Kind::value  ? "value"
                     : c.kind == CompressionReport::Kind::zero ? "zero"
                                                               : "undetermined";
  json out = {{"p", c.p.str()},
              {"kind", kind},
              {"conditions",
               {{"amenable_closure", to_string(c.amenable_closure)},
                {"cocompact_in_connected", to_string(c.cocompact_in_connected)},
                {"exponential_distortion", to_string(c.exponential_distortion)}}},
              {"evidence", evidence_json(c.reasons)}};
  out["alpha"] = c.alpha ? json(c.alpha->str()) : json(nullptr);
  if (c.distortion_letter) out["distortion_letter"] = *c.distortion_letter;
  return out;
}

std::string render_validation(const ValidationReport& r, Format f) {
  if (f == Format::json) return dump({{"valid", r.ok()}, {"violations", r.violations}});
  if (r.ok()) return "valid\n";
  std::string out = "invalid\n";
  for (const auto& v : r.violations) out += "  " + v + "\n";
  return out;
}

std::string render_presentation(const Presentation& p, Format f) {
  if (f == Format::json) {
    json rels = json::array();
    for (const auto& r : p.relations)
      rels.push_back({{"text", r.text}, {"lhs", r.lhs.str()}, {"rhs", r.rhs.str()}});
    return dump({{"generators", p.generators}, {"relations", rels}, {"presentation", p.str()}});
  }
  return p.str() + "\n";
}

std::string render_holonomy(const HolonomyData& h, Format f) {
  if (f == Format::json) return dump(holonomy_json(h));
  std::string out;
  for (const auto& s : h.stable) out += "hol(" + s.letter + ") = " + to_string(s.matrix) + "\n";
  if (h.stable.empty()) out += "no stable letters; holonomy is trivial\n";
  return out;
}

std::string render_classification(const ClassificationReport& r, Format f) {
  if (f == Format::json) return dump(to_json(r));
  std::ostringstream out;
  out << "Bass-Serre degrees:";
  for (const auto& d : r.bass_serre.degrees) out << " " << d.get_str();
  out << "; ends: " << to_string(r.bass_serre.ends) << "\n";
  out << "underlying rank: " << r.underlying_rank << "\n";
  for (const auto& s : r.holonomy.stable) out << "hol(" << s.letter << ") = " << to_string(s.matrix) << "\n";
  out << "amenable: " << to_string(r.amenable);
  if (!r.amenable_reason.empty()) out << " (" << r.amenable_reason << ")";
  out << "\n";
  for (const auto& e : r.evidence) out << "  " << e.topic << ": " << e.detail << "\n";
  if (r.tits && r.tits->certificate) {
    const auto& c = *r.tits->certificate;
    out << "Tits certificate: " << to_string(c.kind);
    if (c.line) out << " " << c.line->str();
    for (const auto& p : c.pair) out << " " << p.str();
    if (c.free_pair)
      out << " <" << c.free_pair->g_word.str() << ", " << c.free_pair->h_word.str() << "> arcs "
          << c.free_pair->attract_g.str() << " " << c.free_pair->repel_g.str() << " "
          << c.free_pair->attract_h.str() << " " << c.free_pair->repel_h.str();
    out << "\n";
  }
  if (!r.cv_note.empty()) out << "note: " << r.cv_note << "\n";
  std::string lambda = r.cowling_haagerup == "1"                    ? "Λ_cb = 1"
                       : r.cowling_haagerup == "not weakly amenable" ? "Λ_cb = ∞"
                                                                     : "Λ_cb undetermined";
  out << "Whyte case: " << to_string(r.whyte_case) << "; Haagerup: " << to_string(r.haagerup)
      << "; weakly amenable: " << to_string(r.weakly_amenable) << "; " << lambda << "\n";
  return out.str();
}

std::string render_comparison(const QIVerdict& v, Format f) {
  if (f == Format::json) return dump(to_json(v));
  std::string out;
  for (const auto& e : v.reasons) out += e.topic + ": " + e.detail + "\n";
  return out + to_string(v.verdict) + "\n";
}

std::string render_distortion(const DistortionProfile& d, const std::string& element, Format f) {
  if (f == Format::json) {
    json j = to_json(d);
    j["element"] = element;
    return dump(j);
  }
  std::ostringstream out;
  out << "element " << element;
  if (d.expanding_letter) out << "; expanding letter " << *d.expanding_letter << " (eigenvalue "
                              << d.eigenvalue->get_str() << ")";
  out << "\n";
  out << "m\tupper\tcertified\texact\tlower\tratio\n";
  for (const auto& row : d.rows) {
    out << row.m << "\t" << (row.upper_bound ? std::to_string(*row.upper_bound) : "-") << "\t"
        << (row.upper_bound_certified ? "yes" : "no") << "\t"
        << (row.exact_length ? std::to_string(*row.exact_length) : "-") << "\t"
        << (row.lower_bound ? fixed(*row.lower_bound, 2) : "-") << "\t" << (row.ratio ? fixed(*row.ratio, 3) : "-")
        << "\n";
  }
  if (d.max_ratio) out << "max ratio |x^m| / ln m = " << fixed(*d.max_ratio, 3) << "\n";
  return out.str();
}

std::string compression_symbol(const Rational& p) {
  if (!p.is_integer()) return "α_{" + p.str() + "}";
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out = "α";
  for (char c : p.str()) out += digits[c - '0'];
  return out;
}

std::string render_compression(const CompressionReport& c, Format f) {
  if (f == Format::json) return dump(to_json(c));
  std::string out;
  for (const auto& e : c.reasons) out += e.topic + ": " + e.detail + "\n";
  std::string sym = compression_symbol(c.p);
  out += c.alpha ? sym + " = " + c.alpha->str() : sym + " undetermined";
  return out + "\n";
}

}  // namespace gbs
