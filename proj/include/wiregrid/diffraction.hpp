#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wiregrid/experiment.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid {

enum class Normalization { RawFieldSquare, FractionOfIncident };
enum class Provenance { SingleBeamGrating, TwoBeamSlitGrid, WireGridViaBabinet };

std::string to_string(Normalization n);
std::string to_string(Provenance p);

struct IntensitySample {
  double theta = 0.0;
  /// Empty where the field method cannot determine the intensity.
  std::optional<double> intensity;
};

/// Far-field intensity sampled on a strictly increasing angle grid.
/// RawFieldSquare samples are time-averaged field squares; FractionOfIncident
/// samples are fractions of the incident energy per radian.
struct AngularIntensityProfile {
  std::vector<IntensitySample> samples;
  Normalization normalization = Normalization::RawFieldSquare;
  Provenance provenance = Provenance::SingleBeamGrating;

  /// Throws std::logic_error if angles are not strictly increasing inside
  /// [-theta_max, theta_max] or an intensity is negative.
  void check(double theta_max) const;
};

struct FieldSample {
  double theta = 0.0;
  std::optional<double> amplitude;  // sign-carrying; square is the time-averaged intensity
};

struct FieldProfile {
  std::vector<FieldSample> samples;
  Provenance provenance = Provenance::SingleBeamGrating;
};

struct AngularInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

/// Quadrature settings used for whole-pattern integrals.
numerics::QuadratureSpec pattern_quadrature();

// ---------------------------------------------------------------------------
// Single beam through a slit grid.

/// Normalized N-slit amplitude f(theta); f(0) = 1.
double grating_pattern(const Configuration& config, double theta);

struct SingleBeamNormalization {
  double lambda = 0.0;            // field units
  double lambda_over_e0 = 0.0;
  double pattern_integral = 0.0;  // integral of f^2 over the detection region, rad
  numerics::QuadratureResult quadrature;
};

/// Scale constant Lambda for E_s = Lambda f(theta), fixed by requiring that
/// the energy reaching the detection region,
///   Lambda^2 R * integral f^2 dtheta   (per unit length along the slits),
/// equals the energy passing the slits, E0^2 N b. Requires SingleBeamCentered.
SingleBeamNormalization normalize_single_beam(const Configuration& config,
                                              const numerics::QuadratureSpec& spec = pattern_quadrature());

// ---------------------------------------------------------------------------
// Two beams diffracted by slits at the dark fringes.

/// Omega = 2 E0 kappa sin(alpha) / R, the field scale of the linearized slits.
double slit_field_scale(const Configuration& config);

enum class SlitIndexing {
  Centered,  // wires at the configuration's wire centers
  OneSided,  // wires at j d, j = 0 .. N-1
};

/// Two quadrature components of the slit-grid field: the field is
/// Omega * (sin(phi) * in_phase + cos(phi) * quadrature) for the carrier phase phi.
struct SlitGridField {
  double scale = 0.0;  // Omega
  double in_phase = 0.0;
  double quadrature = 0.0;

  /// Time-averaged intensity Omega^2 (C^2 + S^2) / 2.
  double intensity() const;
  /// Sign-carrying amplitude whose square is intensity().
  double amplitude() const;
};

/// Direct numerical quadrature of the alternating-sign linear-amplitude slit
/// sum, for any wire count. Requires AtDarkFringes.
SlitGridField two_beam_slit_field_numeric(const Configuration& config, double theta,
                                          SlitIndexing indexing = SlitIndexing::Centered,
                                          const numerics::QuadratureSpec& spec = {1e-12, 1e-300, 10000});

/// Closed-form six-slit intensity. Throws std::invalid_argument for counts
/// other than 6 (use the numeric or array-factor path) or the wrong placement.
double two_beam_slit_intensity_closed(const Configuration& config, double theta);

/// Analytic slit factor times the explicit array sum; valid for any count.
double two_beam_slit_intensity_array(const Configuration& config, double theta);

// ---------------------------------------------------------------------------
// Patterns normalized against the incident beam.

/// A far-field pattern tied to a configuration, able to report raw and
/// incident-normalized intensities and integrate them over angular windows.
class FarFieldPattern {
 public:
  /// Single-beam slit-grid pattern carrying `diffracted_fraction` of the
  /// incident energy over the detection region.
  static FarFieldPattern single_beam(const Configuration& config, double diffracted_fraction,
                                     const numerics::QuadratureSpec& spec = pattern_quadrature());
  static FarFieldPattern two_beam(const Configuration& config, double diffracted_fraction,
                                  const numerics::QuadratureSpec& spec = pattern_quadrature());

  Provenance provenance() const { return provenance_; }
  const Configuration& config() const { return config_; }
  double diffracted_fraction() const { return diffracted_fraction_; }

  /// Time-averaged field square.
  double raw(double theta) const;
  /// Fraction of the incident energy per radian.
  double density(double theta) const;
  /// Fraction of the incident energy landing in [lo, hi].
  double fraction_in(double lo, double hi) const;
  /// Fraction of the incident energy collected by a detector aperture.
  double fraction_in(const Detector& detector) const;
  /// Integral of the raw intensity over the detection region, rad.
  double raw_integral() const { return raw_integral_; }

  /// Lobe boundaries inside [lo, hi], including both ends.
  std::vector<double> breakpoints(double lo, double hi) const;

  AngularIntensityProfile sample(Normalization normalization, int samples_per_segment = 8) const;
  AngularIntensityProfile sample(Normalization normalization, double lo, double hi, int samples_per_segment) const;

 private:
  FarFieldPattern(Configuration config, Provenance provenance, double diffracted_fraction,
                  numerics::QuadratureSpec spec);
  double shape(double theta) const;
  void shape(std::span<const double> theta, std::span<double> out) const;

  Configuration config_;
  Provenance provenance_;
  double diffracted_fraction_;
  numerics::QuadratureSpec spec_;
  double raw_scale_ = 1.0;       // raw = raw_scale * shape
  double shape_integral_ = 1.0;  // integral of shape over the detection region
  double raw_integral_ = 0.0;
};

/// Angular weight of a detector aperture at theta (0 outside, <= 1 inside).
double aperture_weight(const OpticalSetup& setup, const Detector& detector, double theta);

/// Fraction of the incident energy diffracted into the detection region,
/// computed from the Fraunhofer prefactor 1/(lambda R) rather than from the
/// region normalization, with the slits spanning the full beam diameter.
/// Independent of any assumed energy budget.
double fraunhofer_diffracted_fraction(const Configuration& config,
                                      const numerics::QuadratureSpec& spec = pattern_quadrature());

// ---------------------------------------------------------------------------
// Babinet complement.

/// Angular intervals where the unperturbed beam arrives (the apertures of the
/// detectors facing the incoming beams).
std::vector<AngularInterval> unperturbed_beam_support(const Configuration& config);

/// Wire-grid intensity from a slit-grid intensity: identical outside the
/// support, indeterminate inside it.
AngularIntensityProfile babinet_wire_profile(const AngularIntensityProfile& slit_profile,
                                             std::span<const AngularInterval> unperturbed_beam_support);

/// Wire-grid field E_w = -E_s outside the support, indeterminate inside it.
FieldProfile babinet_wire_field(const FieldProfile& slit_field,
                                std::span<const AngularInterval> unperturbed_beam_support);

/// Single-beam slit field Lambda f(theta) on the given grid.
FieldProfile single_beam_field_profile(const Configuration& config, std::span<const double> theta);

}  // namespace wiregrid
