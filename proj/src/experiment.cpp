#include "wiregrid/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wiregrid {

namespace {

std::string join_messages(const std::vector<Diagnostic>& diagnostics) {
  std::string text = "invalid configuration:";
  for (const auto& d : diagnostics) {
    text += "\n  ";
    text += d.field;
    text += ": ";
    text += d.message;
  }
  return text;
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

std::vector<double> layout_centers(const WireGrid& grid) {
  std::vector<double> centers;
  centers.reserve(static_cast<std::size_t>(std::max(grid.count, 0)));
  if (grid.placement == Placement::SingleBeamCentered) {
    const double offset = 0.5 * (grid.count - 1);
    for (int j = 0; j < grid.count; ++j) centers.push_back((j - offset) * grid.pitch);
  } else {
    // Wires sit at y = (n + 1/2) d; for even counts the set is symmetric.
    const int first = -(grid.count / 2);
    for (int j = 0; j < grid.count; ++j) centers.push_back((first + j + 0.5) * grid.pitch);
  }
  return centers;
}

}  // namespace

double OpticalSetup::detector_half_width() const {
  if (detector_half_angle) return *detector_half_angle;
  return std::atan(0.5 * beam_diameter / grid_to_detector_distance);
}

double OpticalSetup::wave_number() const { return 2.0 * std::numbers::pi / wavelength; }

double OpticalSetup::transverse_wave_number() const {
  return wave_number() * std::sin(beam_half_angle);
}

DetectorBank::DetectorBank(std::vector<Detector> detectors) : detectors_(std::move(detectors)) {
  std::sort(detectors_.begin(), detectors_.end(),
            [](const Detector& a, const Detector& b) { return a.center_angle < b.center_angle; });
}

DetectorBank DetectorBank::single_beam(const OpticalSetup& setup) {
  const double w = setup.detector_half_width();
  return DetectorBank({{0.0, w, "D1"}, {2.0 * setup.beam_half_angle, w, "D2"}});
}

DetectorBank DetectorBank::two_beam(const OpticalSetup& setup) {
  const double w = setup.detector_half_width();
  return DetectorBank({{-setup.beam_half_angle, w, "D1"}, {setup.beam_half_angle, w, "D2"}});
}

const Detector& DetectorBank::at(const std::string& label) const {
  for (const auto& d : detectors_)
    if (d.label == label) return d;
  throw std::out_of_range("no detector labelled " + label);
}

std::vector<std::string> DetectorBank::problems(double theta_max) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < detectors_.size(); ++i) {
    const auto& d = detectors_[i];
    if (!(d.half_width > 0.0)) out.push_back(d.label + " has non-positive half width");
    if (d.center_angle - d.half_width < -theta_max || d.center_angle + d.half_width > theta_max)
      out.push_back(d.label + " extends beyond the detection region");
    if (i + 1 < detectors_.size()) {
      const auto& next = detectors_[i + 1];
      if (d.center_angle + d.half_width > next.center_angle - next.half_width)
        out.push_back(d.label + " overlaps " + next.label);
    }
  }
  return out;
}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::invalid_argument(join_messages(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Configuration::Configuration(OpticalSetup setup, WireGrid grid, WaveParameters waves)
    : setup_(std::move(setup)), grid_(grid), waves_(waves), centers_(layout_centers(grid_)) {}

Configuration Configuration::checked(const OpticalSetup& setup, const WireGrid& grid) {
  auto result = validate(setup, grid);
  if (!result.ok()) throw ValidationError(std::move(result.errors));
  return std::move(*result.config);
}

double Configuration::slope_sign(std::size_t j) const {
  if (grid_.placement == Placement::SingleBeamCentered) return 1.0;
  // d/dy cos(k_y y) at y = (n + 1/2) pi / k_y is -k_y (-1)^n.
  const int n = -(grid_.count / 2) + static_cast<int>(j);
  return (n % 2 == 0) ? -1.0 : 1.0;
}

DetectorBank Configuration::detectors() const {
  return grid_.placement == Placement::SingleBeamCentered ? DetectorBank::single_beam(setup_)
                                                          : DetectorBank::two_beam(setup_);
}

ValidationResult validate(const OpticalSetup& setup, const WireGrid& grid) {
  std::vector<Diagnostic> errors;
  auto fail = [&](std::string field, std::string message) {
    errors.push_back({std::move(field), std::move(message)});
  };

  if (!positive_finite(setup.wavelength)) fail("wavelength", "must be positive");
  if (!positive_finite(setup.beam_diameter)) fail("beam_diameter", "must be positive");
  if (!positive_finite(setup.grid_to_detector_distance))
    fail("grid_to_detector_distance", "must be positive");
  if (!positive_finite(setup.field_amplitude)) fail("field_amplitude", "must be positive");
  if (!positive_finite(setup.beam_half_angle))
    fail("beam_half_angle", "must be positive");
  if (!(setup.detection_half_angle > setup.beam_half_angle))
    fail("detection_half_angle", "must exceed the beam half angle");
  if (!(setup.detection_half_angle <= kHalfSpace))
    fail("detection_half_angle", "must not exceed pi/2 (forward half space)");

  const double w = positive_finite(setup.beam_diameter) && positive_finite(setup.grid_to_detector_distance)
                       ? setup.detector_half_width()
                       : 0.0;
  if (!positive_finite(w)) {
    fail("detector_half_angle", "must be positive");
  } else if (!(w < setup.beam_half_angle)) {
    fail("detector_half_angle", "detector apertures at +/-alpha overlap (half width must be below alpha)");
  }

  if (grid.count < 1) fail("grid.count", "must be at least 1");
  if (!positive_finite(grid.thickness)) fail("grid.thickness", "must be positive");
  if (!positive_finite(grid.pitch)) fail("grid.pitch", "must be positive");
  if (positive_finite(grid.thickness) && positive_finite(grid.pitch) && !(grid.thickness < grid.pitch))
    fail("grid.thickness", "thickness must be strictly less than pitch");

  WaveParameters waves;
  const bool waves_ok = positive_finite(setup.wavelength) && positive_finite(setup.beam_half_angle);
  if (waves_ok) {
    waves.wave_number = setup.wave_number();
    waves.transverse_wave_number = setup.transverse_wave_number();
    waves.beta = grid.beta(waves.wave_number);
    waves.gamma = grid.gamma(waves.wave_number);
    waves.fringe_spacing = std::numbers::pi / waves.transverse_wave_number;
  }

  if (grid.placement == Placement::AtDarkFringes && waves_ok && positive_finite(grid.pitch)) {
    const double mismatch = std::abs(waves.fringe_spacing - grid.pitch) / grid.pitch;
    if (!(mismatch < 1e-3))
      fail("grid.pitch", "pitch/fringe mismatch: fringe spacing is " +
                             std::to_string(waves.fringe_spacing * 1e6) + " um");
  }

  if (grid.count >= 1 && positive_finite(grid.pitch) && positive_finite(grid.thickness) &&
      positive_finite(setup.beam_diameter)) {
    const auto centers = layout_centers(grid);
    const double extent = std::max(std::abs(centers.front()), std::abs(centers.back())) + 0.5 * grid.thickness;
    if (extent > setup.beam_radius()) fail("grid", "grid extends beyond the beam cross-section");
  }

  if (positive_finite(w) && setup.detection_half_angle > setup.beam_half_angle) {
    const auto bank = grid.placement == Placement::SingleBeamCentered ? DetectorBank::single_beam(setup)
                                                                      : DetectorBank::two_beam(setup);
    for (auto& p : bank.problems(setup.detection_half_angle)) fail("detectors", std::move(p));
  }

  ValidationResult result;
  if (errors.empty()) {
    result.config = Configuration(setup, grid, waves);
  } else {
    result.errors = std::move(errors);
  }
  return result;
}

OpticalSetup reference_setup() { return OpticalSetup{}; }

WireGrid reference_grid(Placement placement) {
  WireGrid grid;
  grid.placement = placement;
  return grid;
}

std::vector<double> dark_fringe_positions(const OpticalSetup& setup, int first, int last) {
  const double ky = setup.transverse_wave_number();
  std::vector<double> out;
  if (last < first) return out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (int n = first; n <= last; ++n) out.push_back((2.0 * n + 1.0) * std::numbers::pi / (2.0 * ky));
  return out;
}

double effective_amplitude(const OpticalSetup& setup, double y) {
  return 2.0 * setup.field_amplitude * std::cos(setup.transverse_wave_number() * y);
}

double linearized_effective_amplitude(const OpticalSetup& setup, double u, double slope_sign) {
  return slope_sign * 2.0 * setup.field_amplitude * setup.transverse_wave_number() * u;
}

std::string to_string(Placement placement) {
  return placement == Placement::SingleBeamCentered ? "single_beam_centered" : "at_dark_fringes";
}

std::optional<Placement> placement_from_string(const std::string& text) {
  if (text == "single_beam_centered") return Placement::SingleBeamCentered;
  if (text == "at_dark_fringes") return Placement::AtDarkFringes;
  return std::nullopt;
}

std::string to_string(ApertureShape shape) { return shape == ApertureShape::Disc ? "disc" : "strip"; }

std::optional<ApertureShape> aperture_from_string(const std::string& text) {
  if (text == "disc") return ApertureShape::Disc;
  if (text == "strip") return ApertureShape::Strip;
  return std::nullopt;
}

}  // namespace wiregrid
