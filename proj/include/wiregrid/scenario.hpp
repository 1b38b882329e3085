#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wiregrid/experiment.hpp"

namespace wiregrid {

/// Contents of a scenario file before validation.
struct ScenarioDocument {
  OpticalSetup setup;
  WireGrid grid;
};

/// Malformed scenario text. `line` is 1-based, 0 when unknown.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(int line, std::string field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Parses the scenario JSON schema:
///
///   { "wavelength_nm", "alpha_rad", "beam_diameter_mm", "R_m", "theta_max_rad",
///     "detector_half_angle_rad"?, "detector_aperture"?,
///     "grid": { "count", "thickness_um", "pitch_um", "placement" } }
///
/// Unknown keys are rejected. Field values are not range-checked here.
ScenarioDocument parse_scenario(std::string_view text);
ScenarioDocument load_scenario(const std::filesystem::path& path);

/// Canonical JSON text for a scenario, with every default written out.
std::string dump_scenario(const ScenarioDocument& doc);

/// 64-bit FNV-1a of the canonical scenario text, as 16 hex digits.
std::string scenario_hash(const ScenarioDocument& doc);

ScenarioDocument reference_scenario(Placement placement);

}  // namespace wiregrid
