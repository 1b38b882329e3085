#include "wiregrid/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "wiregrid/kernels.hpp"

namespace wiregrid {

namespace {

void require_placement(const Configuration& config, Placement placement, const char* what) {
  if (config.grid().placement != placement)
    throw std::invalid_argument(std::string(what) + " requires placement " + to_string(placement));
}

kernels::GratingParams grating_params(const Configuration& config) {
  return {config.waves().beta, config.waves().gamma, config.grid().count};
}

// Zeros of the array factors fall on a lattice in sin(theta) with spacing
// lambda / (N d); half of that also brackets every lobe maximum.
double lobe_spacing_in_sine(const Configuration& config) {
  return config.setup().wavelength / (2.0 * config.grid().count * config.grid().pitch);
}

std::vector<double> lobe_breakpoints(const Configuration& config, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("breakpoints: empty interval");
  const double ds = lobe_spacing_in_sine(config);
  const double slo = std::sin(lo);
  const double shi = std::sin(hi);
  std::vector<double> pts;
  for (double k = std::ceil(slo / ds); k * ds <= shi; k += 1.0) pts.push_back(std::asin(std::clamp(k * ds, -1.0, 1.0)));
  return numerics::clip_breakpoints(std::move(pts), lo, hi);
}

}  // namespace

std::string to_string(Normalization n) {
  return n == Normalization::RawFieldSquare ? "RawFieldSquare" : "FractionOfIncident";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::SingleBeamGrating:
      return "SingleBeamGrating";
    case Provenance::TwoBeamSlitGrid:
      return "TwoBeamSlitGrid";
    case Provenance::WireGridViaBabinet:
      return "WireGridViaBabinet";
  }
  return "unknown";
}

void AngularIntensityProfile::check(double theta_max) const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (s.theta < -theta_max || s.theta > theta_max) throw std::logic_error("profile angle outside detection region");
    if (i > 0 && !(s.theta > samples[i - 1].theta)) throw std::logic_error("profile angles not strictly increasing");
    if (s.intensity && !(*s.intensity >= 0.0)) throw std::logic_error("negative profile intensity");
  }
}

numerics::QuadratureSpec pattern_quadrature() { return {1e-10, 1e-15, 200000}; }

double grating_pattern(const Configuration& config, double theta) {
  return kernels::scalar::grating_amplitude(grating_params(config), theta);
}

SingleBeamNormalization normalize_single_beam(const Configuration& config, const numerics::QuadratureSpec& spec) {
  require_placement(config, Placement::SingleBeamCentered, "normalize_single_beam");
  const auto params = grating_params(config);
  const double theta_max = config.setup().detection_half_angle;
  const auto points = lobe_breakpoints(config, -theta_max, theta_max);
  auto q = numerics::require_converged(
      numerics::integrate(
          [&](double t) {
            const double f = kernels::scalar::grating_amplitude(params, t);
            return f * f;
          },
          std::span<const double>(points), spec),
      "single-beam normalization");

  const auto& s = config.setup();
  const auto& g = config.grid();
  const double lambda = s.field_amplitude * std::sqrt(g.count * g.thickness / (s.grid_to_detector_distance * q.value));
  return {lambda, lambda / s.field_amplitude, q.value, q};
}

double slit_field_scale(const Configuration& config) {
  const auto& s = config.setup();
  return 2.0 * s.field_amplitude * s.transverse_wave_number() / s.grid_to_detector_distance;
}

double SlitGridField::intensity() const { return 0.5 * scale * scale * (in_phase * in_phase + quadrature * quadrature); }

double SlitGridField::amplitude() const {
  const double magnitude = std::sqrt(intensity());
  const double dominant = std::abs(in_phase) >= std::abs(quadrature) ? in_phase : quadrature;
  return dominant < 0.0 ? -magnitude : magnitude;
}

SlitGridField two_beam_slit_field_numeric(const Configuration& config, double theta, SlitIndexing indexing,
                                          const numerics::QuadratureSpec& spec) {
  require_placement(config, Placement::AtDarkFringes, "two_beam_slit_field_numeric");
  const auto& g = config.grid();
  const double q = config.waves().wave_number * std::sin(theta);
  const double half_b = 0.5 * g.thickness;

  numerics::QuadratureSpec slit_spec = spec;
  slit_spec.absolute_tolerance = std::max(spec.absolute_tolerance, 1e-13 * half_b * half_b);

  SlitGridField field;
  field.scale = slit_field_scale(config);
  for (int j = 0; j < g.count; ++j) {
    const double center = indexing == SlitIndexing::Centered ? config.wire_centers()[static_cast<std::size_t>(j)]
                                                             : j * g.pitch;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double lo = center - half_b;
    const double hi = center + half_b;
    // Partition at half periods of the carrier so each panel is smooth.
    const double period = q == 0.0 ? g.thickness : std::numbers::pi / std::abs(q);
    const double panel = std::max(period, g.thickness / 256.0);
    const auto points = numerics::uniform_breakpoints(lo, hi, panel, lo);
    const auto c = numerics::integrate([&](double y) { return (y - center) * std::cos(q * y); },
                                       std::span<const double>(points), slit_spec);
    const auto s = numerics::integrate([&](double y) { return (y - center) * std::sin(q * y); },
                                       std::span<const double>(points), slit_spec);
    numerics::require_converged(c, "slit field (cosine part)");
    numerics::require_converged(s, "slit field (sine part)");
    field.in_phase += sign * c.value;
    field.quadrature += sign * s.value;
  }
  return field;
}

double two_beam_slit_intensity_closed(const Configuration& config, double theta) {
  require_placement(config, Placement::AtDarkFringes, "two_beam_slit_intensity_closed");
  const auto& g = config.grid();
  if (g.count != 6)
    throw std::invalid_argument(
        "closed-form slit-grid intensity is six-slit specific; use two_beam_slit_field_numeric for count " +
        std::to_string(g.count));
  const double omega = slit_field_scale(config);
  const kernels::SixSlitParams p{config.waves().wave_number, g.thickness, g.pitch, 2.0 * omega * omega};
  return kernels::scalar::six_slit_intensity(p, theta);
}

double two_beam_slit_intensity_array(const Configuration& config, double theta) {
  require_placement(config, Placement::AtDarkFringes, "two_beam_slit_intensity_array");
  const auto& g = config.grid();
  const double q = config.waves().wave_number * std::sin(theta);
  const double half_b = 0.5 * g.thickness;
  // integral of u e^{iqu} over one slit = i (b/2)^3 q h(q b/2)
  const double slit = half_b * half_b * half_b * q * numerics::series::linear_slit_shape(q * half_b);
  std::complex<double> array{0.0, 0.0};
  for (int j = 0; j < g.count; ++j) {
    const double phase = q * config.wire_centers()[static_cast<std::size_t>(j)];
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    array += sign * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  const double omega = slit_field_scale(config);
  return 0.5 * omega * omega * slit * slit * std::norm(array);
}

// ---------------------------------------------------------------------------

FarFieldPattern::FarFieldPattern(Configuration config, Provenance provenance, double diffracted_fraction,
                                 numerics::QuadratureSpec spec)
    : config_(std::move(config)), provenance_(provenance), diffracted_fraction_(diffracted_fraction), spec_(spec) {}

FarFieldPattern FarFieldPattern::single_beam(const Configuration& config, double diffracted_fraction,
                                             const numerics::QuadratureSpec& spec) {
  const auto norm = normalize_single_beam(config, spec);
  FarFieldPattern p(config, Provenance::SingleBeamGrating, diffracted_fraction, spec);
  p.raw_scale_ = norm.lambda * norm.lambda;
  p.shape_integral_ = norm.pattern_integral;
  p.raw_integral_ = p.raw_scale_ * p.shape_integral_;
  return p;
}

FarFieldPattern FarFieldPattern::two_beam(const Configuration& config, double diffracted_fraction,
                                          const numerics::QuadratureSpec& spec) {
  require_placement(config, Placement::AtDarkFringes, "two-beam pattern");
  FarFieldPattern p(config, Provenance::TwoBeamSlitGrid, diffracted_fraction, spec);
  // shape = raw / (2 Omega^2 (b/2)^6 kappa^2), an O(1) function of theta.
  const double omega = slit_field_scale(config);
  const double half_b = 0.5 * config.grid().thickness;
  const double b3 = half_b * half_b * half_b;
  const double k = config.waves().wave_number;
  p.raw_scale_ = 2.0 * omega * omega * b3 * b3 * k * k;
  const double theta_max = config.setup().detection_half_angle;
  const auto points = p.breakpoints(-theta_max, theta_max);
  const auto q = numerics::require_converged(
      numerics::integrate([&](double t) { return p.shape(t); }, std::span<const double>(points), spec),
      "two-beam pattern integral");
  p.shape_integral_ = q.value;
  p.raw_integral_ = p.raw_scale_ * q.value;
  return p;
}

double FarFieldPattern::shape(double theta) const {
  if (provenance_ == Provenance::SingleBeamGrating) {
    const double f = grating_pattern(config_, theta);
    return f * f;
  }
  const double raw = config_.grid().count == 6 ? two_beam_slit_intensity_closed(config_, theta)
                                               : two_beam_slit_intensity_array(config_, theta);
  return raw / raw_scale_;
}

void FarFieldPattern::shape(std::span<const double> theta, std::span<double> out) const {
  if (provenance_ == Provenance::SingleBeamGrating) {
    kernels::grating_amplitude(grating_params(config_), theta, out);
    for (auto& v : out) v *= v;
    return;
  }
  if (config_.grid().count == 6) {
    const auto& g = config_.grid();
    const kernels::SixSlitParams p{config_.waves().wave_number, g.thickness, g.pitch, 1.0};
    kernels::six_slit_intensity(p, theta, out);
    const double k = config_.waves().wave_number;
    const double half_b = 0.5 * g.thickness;
    const double b3 = half_b * half_b * half_b;
    // Kernel scale 1 gives raw / (2 Omega^2); divide the rest of raw_scale out.
    const double rest = b3 * b3 * k * k;
    for (auto& v : out) v /= rest;
    return;
  }
  for (std::size_t i = 0; i < theta.size(); ++i) out[i] = shape(theta[i]);
}

double FarFieldPattern::raw(double theta) const { return raw_scale_ * shape(theta); }

double FarFieldPattern::density(double theta) const { return diffracted_fraction_ * shape(theta) / shape_integral_; }

std::vector<double> FarFieldPattern::breakpoints(double lo, double hi) const {
  return lobe_breakpoints(config_, lo, hi);
}

double FarFieldPattern::fraction_in(double lo, double hi) const {
  const double theta_max = config_.setup().detection_half_angle;
  lo = std::max(lo, -theta_max);
  hi = std::min(hi, theta_max);
  if (!(hi > lo)) return 0.0;
  const auto points = breakpoints(lo, hi);
  const auto q = numerics::require_converged(
      numerics::integrate([&](double t) { return shape(t); }, std::span<const double>(points), spec_),
      "pattern window integral");
  return diffracted_fraction_ * q.value / shape_integral_;
}

double FarFieldPattern::fraction_in(const Detector& detector) const {
  const double lo = detector.center_angle - detector.half_width;
  const double hi = detector.center_angle + detector.half_width;
  if (config_.setup().detector_aperture == ApertureShape::Strip) return fraction_in(lo, hi);
  const auto points = breakpoints(lo, hi);
  const auto q = numerics::require_converged(
      numerics::integrate([&](double t) { return shape(t) * aperture_weight(config_.setup(), detector, t); },
                          std::span<const double>(points), spec_),
      "detector aperture integral");
  return diffracted_fraction_ * q.value / shape_integral_;
}

AngularIntensityProfile FarFieldPattern::sample(Normalization normalization, int samples_per_segment) const {
  const double theta_max = config_.setup().detection_half_angle;
  return sample(normalization, -theta_max, theta_max, samples_per_segment);
}

AngularIntensityProfile FarFieldPattern::sample(Normalization normalization, double lo, double hi,
                                                int samples_per_segment) const {
  if (samples_per_segment < 1) throw std::invalid_argument("sample: need at least one sample per segment");
  const auto points = breakpoints(lo, hi);
  std::vector<double> theta;
  theta.reserve((points.size() - 1) * static_cast<std::size_t>(samples_per_segment) + 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double a = points[i - 1];
    const double step = (points[i] - a) / samples_per_segment;
    for (int k = 0; k < samples_per_segment; ++k) theta.push_back(a + k * step);
  }
  theta.push_back(points.back());

  std::vector<double> values(theta.size());
  shape(theta, values);
  const double factor = normalization == Normalization::RawFieldSquare ? raw_scale_
                                                                       : diffracted_fraction_ / shape_integral_;
  AngularIntensityProfile profile;
  profile.normalization = normalization;
  profile.provenance = provenance_;
  profile.samples.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i)
    profile.samples.push_back({theta[i], std::max(0.0, factor * values[i])});
  return profile;
}

double aperture_weight(const OpticalSetup& setup, const Detector& detector, double theta) {
  const double offset = theta - detector.center_angle;
  if (std::abs(offset) > detector.half_width) return 0.0;
  if (setup.detector_aperture == ApertureShape::Strip) return 1.0;
  // Disc of radius rho = R tan(w) centred on the stripe; the diffracted stripe
  // is as wide as the beam.
  const double R = setup.grid_to_detector_distance;
  const double rho = R * std::tan(detector.half_width);
  const double eta = R * std::tan(offset);
  const double half_chord = std::sqrt(std::max(0.0, rho * rho - eta * eta));
  return std::min(1.0, half_chord / setup.beam_radius());
}

double fraunhofer_diffracted_fraction(const Configuration& config, const numerics::QuadratureSpec& spec) {
  const auto& s = config.setup();
  const auto& g = config.grid();
  const double theta_max = s.detection_half_angle;
  const double D = s.beam_diameter;
  const double lambda = s.wavelength;
  const double R = s.grid_to_detector_distance;
  const double disc = numerics::disc_area(D);

  if (g.placement == Placement::SingleBeamCentered) {
    // |E|^2 = (E0 N b)^2 f^2 / (lambda R); energy per unit length = R * integral.
    const auto params = grating_params(config);
    const auto points = lobe_breakpoints(config, -theta_max, theta_max);
    const auto q = numerics::require_converged(
        numerics::integrate(
            [&](double t) {
              const double f = kernels::scalar::grating_amplitude(params, t);
              return f * f;
            },
            std::span<const double>(points), spec),
        "Fraunhofer single-beam energy");
    const double e0 = s.field_amplitude;
    const double aperture = g.count * g.thickness;
    const double energy = D * (e0 * aperture) * (e0 * aperture) * q.value / lambda;
    return energy / (e0 * e0 * disc);
  }

  // Time-averaged physical intensity is raw * R / lambda, so the energy per
  // unit length is R^2 / lambda * integral(raw). The incident time-averaged
  // energy over the disc is E0^2 * area (mean cos^2 = 1/2 of 2 E0^2).
  const FarFieldPattern pattern = FarFieldPattern::two_beam(config, 1.0, spec);
  const double energy = D * R * R * pattern.raw_integral() / lambda;
  const double e0 = s.field_amplitude;
  const double incident = e0 * e0 * disc;
  return energy / incident;
}

std::vector<AngularInterval> unperturbed_beam_support(const Configuration& config) {
  const auto& s = config.setup();
  const double w = s.detector_half_width();
  if (config.grid().placement == Placement::SingleBeamCentered) return {{-w, w}};
  const double a = s.beam_half_angle;
  return {{-a - w, -a + w}, {a - w, a + w}};
}

namespace {

bool inside(std::span<const AngularInterval> support, double theta) {
  return std::any_of(support.begin(), support.end(), [&](const AngularInterval& i) { return i.contains(theta); });
}

}  // namespace

AngularIntensityProfile babinet_wire_profile(const AngularIntensityProfile& slit_profile,
                                             std::span<const AngularInterval> support) {
  if (slit_profile.provenance == Provenance::WireGridViaBabinet)
    throw std::invalid_argument("babinet_wire_profile expects a slit-grid profile");
  AngularIntensityProfile out;
  out.normalization = slit_profile.normalization;
  out.provenance = Provenance::WireGridViaBabinet;
  out.samples.reserve(slit_profile.samples.size());
  for (const auto& s : slit_profile.samples) {
    if (inside(support, s.theta)) {
      out.samples.push_back({s.theta, std::nullopt});
    } else {
      out.samples.push_back(s);
    }
  }
  return out;
}

FieldProfile babinet_wire_field(const FieldProfile& slit_field, std::span<const AngularInterval> support) {
  if (slit_field.provenance == Provenance::WireGridViaBabinet)
    throw std::invalid_argument("babinet_wire_field expects a slit-grid field");
  FieldProfile out;
  out.provenance = Provenance::WireGridViaBabinet;
  out.samples.reserve(slit_field.samples.size());
  for (const auto& s : slit_field.samples) {
    if (inside(support, s.theta) || !s.amplitude) {
      out.samples.push_back({s.theta, std::nullopt});
    } else {
      out.samples.push_back({s.theta, -*s.amplitude});
    }
  }
  return out;
}

FieldProfile single_beam_field_profile(const Configuration& config, std::span<const double> theta) {
  const auto norm = normalize_single_beam(config);
  std::vector<double> f(theta.size());
  kernels::grating_amplitude(grating_params(config), theta, f);
  FieldProfile out;
  out.provenance = Provenance::SingleBeamGrating;
  out.samples.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) out.samples.push_back({theta[i], norm.lambda * f[i]});
  return out;
}

}  // namespace wiregrid
