#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wiregrid {

// Fixed calibration constants for the reference geometry. The detector
// distance is not a measured quantity; 5 m is the distance at which the
// single-beam field normalization yields the reference amplitude ratio.
inline constexpr double kDefaultDetectorDistance = 5.0;  // m
inline constexpr double kHalfSpace = 1.5707963267948966;  // rad

enum class Placement { SingleBeamCentered, AtDarkFringes };

/// Shape of a detector aperture when integrating the far-field pattern.
///
/// `Disc` models a circular detector of radius R*tan(half_width) sitting in a
/// diffracted stripe whose x-extent is the beam diameter; the angular weight
/// is the fraction of the stripe's width covered by the disc chord. `Strip`
/// is a plain angular window.
enum class ApertureShape { Disc, Strip };

struct OpticalSetup {
  double wavelength = 638e-9;          // m
  double beam_half_angle = 1e-3;       // rad, each beam's tilt from z
  double beam_diameter = 3.22e-3;      // m, uniform circular beam
  double grid_to_detector_distance = kDefaultDetectorDistance;  // m
  double detection_half_angle = kHalfSpace;                     // rad
  std::optional<double> detector_half_angle;  // rad; default atan(D/2 / R)
  double field_amplitude = 1.0;               // arbitrary units
  ApertureShape detector_aperture = ApertureShape::Disc;

  double detector_half_width() const;
  double wave_number() const;
  double transverse_wave_number() const;
  double beam_radius() const { return 0.5 * beam_diameter; }
};

struct WireGrid {
  int count = 6;
  double thickness = 32e-6;  // m
  double pitch = 319e-6;     // m, center to center
  Placement placement = Placement::SingleBeamCentered;

  double beta(double wave_number) const { return 0.5 * wave_number * thickness; }
  double gamma(double wave_number) const { return 0.5 * wave_number * pitch; }
};

struct Detector {
  double center_angle = 0.0;  // rad
  double half_width = 0.0;    // rad
  std::string label;
};

class DetectorBank {
 public:
  DetectorBank() = default;
  explicit DetectorBank(std::vector<Detector> detectors);

  /// On-axis detector "D1" at 0 and the neighbouring detector "D2" at 2*alpha,
  /// both in the frame of the single incoming beam.
  static DetectorBank single_beam(const OpticalSetup& setup);
  /// Detectors "D1" at -alpha and "D2" at +alpha.
  static DetectorBank two_beam(const OpticalSetup& setup);

  const std::vector<Detector>& detectors() const { return detectors_; }
  const Detector& at(const std::string& label) const;

  /// Non-empty when detectors overlap or leave [-theta_max, theta_max].
  std::vector<std::string> problems(double theta_max) const;

 private:
  std::vector<Detector> detectors_;
};

struct WaveParameters {
  double wave_number = 0.0;             // kappa = 2 pi / lambda
  double transverse_wave_number = 0.0;  // k_y = kappa sin(alpha)
  double beta = 0.0;                    // kappa b / 2
  double gamma = 0.0;                   // kappa d / 2
  double fringe_spacing = 0.0;          // pi / k_y
};

struct Diagnostic {
  std::string field;
  std::string message;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// An immutable, checked combination of setup and grid.
class Configuration {
 public:
  /// Throws ValidationError carrying every violated invariant.
  static Configuration checked(const OpticalSetup& setup, const WireGrid& grid);

  const OpticalSetup& setup() const { return setup_; }
  const WireGrid& grid() const { return grid_; }
  const WaveParameters& waves() const { return waves_; }

  /// Wire (or slit) centers along y, ascending.
  const std::vector<double>& wire_centers() const { return centers_; }
  /// Sign of the linearized field slope across wire j (+1 or -1).
  double slope_sign(std::size_t j) const;

  DetectorBank detectors() const;

 private:
  friend struct ValidationResult validate(const OpticalSetup& setup, const WireGrid& grid);
  Configuration(OpticalSetup setup, WireGrid grid, WaveParameters waves);

  OpticalSetup setup_;
  WireGrid grid_;
  WaveParameters waves_;
  std::vector<double> centers_;
};

struct ValidationResult {
  std::optional<Configuration> config;
  std::vector<Diagnostic> errors;

  bool ok() const { return config.has_value(); }
};

ValidationResult validate(const OpticalSetup& setup, const WireGrid& grid);

/// Reference geometry with the requested placement.
OpticalSetup reference_setup();
WireGrid reference_grid(Placement placement);

/// y_n = (2n+1) pi / (2 k_y) for n in [first, last], ascending.
std::vector<double> dark_fringe_positions(const OpticalSetup& setup, int first, int last);

/// 2 E0 cos(k_y y).
double effective_amplitude(const OpticalSetup& setup, double y);

/// Linearization of the effective amplitude a distance u from a dark fringe:
/// slope_sign * 2 E0 k_y u.
double linearized_effective_amplitude(const OpticalSetup& setup, double u, double slope_sign = 1.0);

std::string to_string(Placement placement);
std::optional<Placement> placement_from_string(const std::string& text);
std::string to_string(ApertureShape shape);
std::optional<ApertureShape> aperture_from_string(const std::string& text);

}  // namespace wiregrid
