#include "siegel/io.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "siegel/error.hpp"

namespace siegel {

namespace {

std::string number_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw Error(ErrorCode::InvalidInput, "cli", "coefficient entries must be strings or numbers");
}

}  // namespace

CurveSpec parse_curve_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "cli", std::string("curve file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("family") || !doc.contains("coefficients")) {
    throw Error(ErrorCode::InvalidInput, "cli", "curve file needs 'family' and 'coefficients'");
  }
  CurveSpec spec;
  spec.family = family_from_string(doc.at("family").get<std::string>());
  if (doc.contains("label")) spec.label = doc.at("label").get<std::string>();
  const auto& coef = doc.at("coefficients");
  if (!coef.is_array()) throw Error(ErrorCode::InvalidInput, "cli", "'coefficients' must be an array");
  for (const auto& c : coef) {
    DecimalComplex z;
    if (c.is_array()) {
      if (c.size() != 2) throw Error(ErrorCode::InvalidInput, "cli", "complex entries are [re, im] pairs");
      z.re = number_text(c[0]);
      z.im = number_text(c[1]);
    } else {
      z.re = number_text(c);
    }
    // Validate early so the message points at the file.
    parse_decimal(z.re);
    parse_decimal(z.im);
    spec.coefficients.push_back(z);
  }
  return spec;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cli", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cli", "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "cli", "write failed for " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::Io, "cli", "cannot move " + tmp + " into place: " + ec.message());
}

CurveSpec read_curve_spec(const std::string& path) { return parse_curve_spec(read_text_file(path)); }

std::string curve_spec_json(const CurveSpec& spec) {
  nlohmann::json doc;
  doc["family"] = to_string(spec.family);
  nlohmann::json coef = nlohmann::json::array();
  for (const auto& c : spec.coefficients) coef.push_back({c.re, c.im});
  doc["coefficients"] = coef;
  if (!spec.label.empty()) doc["label"] = spec.label;
  return doc.dump(2) + "\n";
}

}  // namespace siegel
