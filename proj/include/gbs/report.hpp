#pragma once

#include <string>

#include <json.hpp>

#include "gbs/classify.hpp"
#include "gbs/geodesic.hpp"
#include "gbs/graph_of_groups.hpp"
#include "gbs/holonomy.hpp"

namespace gbs {

enum class Format { text, json };

nlohmann::json to_json(const QMatrix& m);
nlohmann::json to_json(const IntMatrix& m);
nlohmann::json to_json(const TitsCertificate& c);
nlohmann::json to_json(const DiscretenessProbe& p);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const QIVerdict& v);
nlohmann::json to_json(const DistortionProfile& d);
nlohmann::json to_json(const CompressionReport& c);

/// Reports end with a newline; JSON output is pretty-printed with sorted keys.
std::string render_validation(const ValidationReport& r, Format f);
std::string render_presentation(const Presentation& p, Format f);
std::string render_holonomy(const HolonomyData& h, Format f);
std::string render_classification(const ClassificationReport& r, Format f);
std::string render_comparison(const QIVerdict& v, Format f);
std::string render_distortion(const DistortionProfile& d, const std::string& element, Format f);
std::string render_compression(const CompressionReport& c, Format f);

/// "α₂", "α_{3/2}"
std::string compression_symbol(const Rational& p);

}  // namespace gbs
