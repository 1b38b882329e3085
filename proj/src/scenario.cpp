#include "wiregrid/scenario.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wiregrid/serialize.hpp"

namespace wiregrid {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int line_at(std::string_view text, std::size_t pos) {
  int line = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

/// Line of the first `"key"` at or after `from`, 0 if absent.
int line_of_key(std::string_view text, const std::string& key, std::size_t from = 0) {
  const auto pos = text.find("\"" + key + "\"", from);
  return pos == std::string_view::npos ? 0 : line_at(text, pos);
}

struct Reader {
  std::string_view text;
  std::size_t origin = 0;  // where the current object's keys start in `text`
  std::string prefix;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ScenarioError(line_of_key(text, key, origin), prefix + key, message);
  }

  const json& member(const json& obj, const std::string& key) const {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ScenarioError(line_at(text, origin), prefix + key, "missing required field");
    return *it;
  }

  double number(const json& obj, const std::string& key) const {
    const auto& v = member(obj, key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }

  std::optional<double> optional_number(const json& obj, const std::string& key) const {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return number(obj, key);
  }

  int integer(const json& obj, const std::string& key) const {
    const auto& v = member(obj, key);
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<int>();
  }

  std::string string(const json& obj, const std::string& key) const {
    const auto& v = member(obj, key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  void reject_unknown(const json& obj, const std::set<std::string>& known) const {
    for (const auto& [key, value] : obj.items())
      if (!known.contains(key)) fail(key, "unknown field");
  }
};

}  // namespace

ScenarioError::ScenarioError(int line, std::string field, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? std::string() : "field '" + field + "': ") + message),
      line_(line),
      field_(std::move(field)) {}

ScenarioDocument parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto pos = e.byte > 0 ? static_cast<std::size_t>(e.byte - 1) : 0;
    throw ScenarioError(line_at(text, pos), "", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioError(1, "", "scenario must be a JSON object");

  Reader top{text, 0, ""};
  top.reject_unknown(root, {"wavelength_nm", "alpha_rad", "beam_diameter_mm", "R_m", "theta_max_rad",
                            "detector_half_angle_rad", "detector_aperture", "grid"});

  ScenarioDocument doc;
  auto& s = doc.setup;
  s.wavelength = top.number(root, "wavelength_nm") * 1e-9;
  s.beam_half_angle = top.number(root, "alpha_rad");
  s.beam_diameter = top.number(root, "beam_diameter_mm") * 1e-3;
  s.grid_to_detector_distance = top.number(root, "R_m");
  s.detection_half_angle = top.number(root, "theta_max_rad");
  s.detector_half_angle = top.optional_number(root, "detector_half_angle_rad");
  if (root.contains("detector_aperture")) {
    const auto shape = aperture_from_string(top.string(root, "detector_aperture"));
    if (!shape) top.fail("detector_aperture", "expected \"disc\" or \"strip\"");
    s.detector_aperture = *shape;
  }

  const auto& g = top.member(root, "grid");
  if (!g.is_object()) top.fail("grid", "expected an object");
  const auto grid_pos = text.find("\"grid\"");
  Reader sub{text, grid_pos == std::string_view::npos ? 0 : grid_pos, "grid."};
  sub.reject_unknown(g, {"count", "thickness_um", "pitch_um", "placement"});
  doc.grid.count = sub.integer(g, "count");
  doc.grid.thickness = sub.number(g, "thickness_um") * 1e-6;
  doc.grid.pitch = sub.number(g, "pitch_um") * 1e-6;
  const auto placement = placement_from_string(sub.string(g, "placement"));
  if (!placement) sub.fail("placement", "expected \"single_beam_centered\" or \"at_dark_fringes\"");
  doc.grid.placement = *placement;
  return doc;
}

ScenarioDocument load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(0, "", "cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string dump_scenario(const ScenarioDocument& doc) {
  // Unit conversions leave last-bit noise; 12 digits restores the entered values.
  auto clean = [](double v) { return round_significant(v, 12); };
  const auto& s = doc.setup;
  ordered_json j;
  j["wavelength_nm"] = clean(s.wavelength * 1e9);
  j["alpha_rad"] = clean(s.beam_half_angle);
  j["beam_diameter_mm"] = clean(s.beam_diameter * 1e3);
  j["R_m"] = clean(s.grid_to_detector_distance);
  j["theta_max_rad"] = clean(s.detection_half_angle);
  if (s.detector_half_angle) j["detector_half_angle_rad"] = clean(*s.detector_half_angle);
  j["detector_aperture"] = to_string(s.detector_aperture);
  j["grid"] = {{"count", doc.grid.count},
               {"thickness_um", clean(doc.grid.thickness * 1e6)},
               {"pitch_um", clean(doc.grid.pitch * 1e6)},
               {"placement", to_string(doc.grid.placement)}};
  return j.dump(2) + "\n";
}

std::string scenario_hash(const ScenarioDocument& doc) { return hex64(fnv1a64(dump_scenario(doc))); }

ScenarioDocument reference_scenario(Placement placement) { return {reference_setup(), reference_grid(placement)}; }

}  // namespace wiregrid
