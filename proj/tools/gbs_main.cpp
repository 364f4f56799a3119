#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gbs/classify.hpp"
#include "gbs/geodesic.hpp"
#include "gbs/gog_format.hpp"
#include "gbs/report.hpp"

namespace {

constexpr int kDecided = 0;
constexpr int kInputError = 1;
constexpr int kUndetermined = 2;

gbs::GraphOfGroups load(const std::string& path) { return gbs::GraphOfGroups::build(gbs::load_gog(path)); }

void emit(const std::string& body) { std::cout << body << std::flush; }

struct Options {
  std::string file;
  std::string file2;
  std::string format = "text";
  std::string element;
  std::uint64_t max_power = 64;
  std::uint64_t exact_radius = 16;
  std::string p = "2";
};

gbs::Format format_of(const Options& o) { return o.format == "json" ? gbs::Format::json : gbs::Format::text; }

int run_validate(const Options& o) {
  gbs::ValidationReport r = gbs::validate(gbs::load_gog(o.file));
  emit(gbs::render_validation(r, format_of(o)));
  return r.ok() ? kDecided : kInputError;
}

int run_presentation(const Options& o) {
  emit(gbs::render_presentation(gbs::presentation(load(o.file)), format_of(o)));
  return kDecided;
}

int run_holonomy(const Options& o) {
  emit(gbs::render_holonomy(gbs::compute_holonomy(load(o.file)), format_of(o)));
  return kDecided;
}

int run_classify(const Options& o) {
  gbs::ClassificationReport r = gbs::classify(load(o.file));
  emit(gbs::render_classification(r, format_of(o)));
  return r.decided() ? kDecided : kUndetermined;
}

int run_compare(const Options& o) {
  gbs::QIVerdict v = gbs::qi_compare(load(o.file), load(o.file2));
  emit(gbs::render_comparison(v, format_of(o)));
  return v.verdict == gbs::QIVerdict::Kind::undetermined ? kUndetermined : kDecided;
}

int run_distortion(const Options& o) {
  gbs::GraphOfGroups g = load(o.file);
  auto letters = g.vertex_letters(g.base_vertex());
  gbs::IntVector v(g.rank(), gbs::BigInt(0));
  bool found = false;
  for (std::size_t i = 0; i < letters.size(); ++i)
    if (letters[i] == o.element) {
      v[i] = 1;
      found = true;
    }
  if (!found) throw std::invalid_argument("element must be a letter of the base vertex group: " + o.element);
  std::vector<std::uint64_t> powers;
  for (std::uint64_t m = 1; m <= o.max_power; ++m) powers.push_back(m);
  gbs::DistortionProfile d = gbs::distortion_profile(g, v, powers, o.exact_radius);
  emit(gbs::render_distortion(d, o.element, format_of(o)));
  return kDecided;
}

int run_compression(const Options& o) {
  gbs::CompressionReport c = gbs::compression_report(load(o.file), gbs::Rational::parse(o.p));
  emit(gbs::render_compression(c, format_of(o)));
  return c.alpha ? kDecided : kUndetermined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of generalized Baumslag-Solitar groups given as graphs of Z^n groups"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, int (*)(const Options&)> handlers;

  auto add = [&](const std::string& name, const std::string& help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "graph of groups in .gog format")->required();
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    handlers[sub] = fn;
    return sub;
  };
  add("validate", "check a graph of groups", run_validate);
  add("presentation", "print a presentation", run_presentation);
  add("holonomy", "print the holonomy of the stable letters", run_holonomy);
  add("classify", "ends, amenability, Whyte case and Cowling-Haagerup properties", run_classify);
  add("compare", "quasi-isometry comparison of two graphs of groups", run_compare)
      ->add_option("file2", o.file2, "second graph of groups")
      ->required();
  CLI::App* dist = add("distortion", "word length of powers of a vertex letter", run_distortion);
  dist->add_option("--element", o.element, "vertex letter of the base vertex")->required();
  dist->add_option("--max-power", o.max_power, "largest power")->check(CLI::Range(1, 1 << 20));
  dist->add_option("--exact-radius", o.exact_radius, "radius of the exact length search");
  add("compression", "equivariant L^p compression exponent", run_compression)
      ->add_option("--p", o.p, "exponent p >= 1, rational");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << app.help();
    return kInputError;
  }

  try {
    for (const auto& [sub, fn] : handlers)
      if (sub->parsed()) return fn(o);
  } catch (const gbs::ParseError& e) {
    std::cerr << o.file << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
  } catch (const gbs::SpecError& e) {
    std::cerr << "invalid graph of groups:\n";
    for (const auto& v : e.report().violations) std::cerr << "  " << v << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kInputError;
}
