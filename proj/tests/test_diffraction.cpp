#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "wiregrid/diffraction.hpp"
#include "wiregrid/kernels.hpp"

using namespace wiregrid;

namespace {

Configuration single() { return Configuration::checked(reference_setup(), reference_grid(Placement::SingleBeamCentered)); }
Configuration two() { return Configuration::checked(reference_setup(), reference_grid(Placement::AtDarkFringes)); }

/// sinc(beta sin) times the explicit six-slit phasor sum over 6.
double grating_direct(double theta) {
  const double k = 2.0 * std::numbers::pi / 638e-9;
  const double s = std::sin(theta);
  const double beta = 0.5 * k * 32e-6 * s;
  std::complex<double> sum{0.0, 0.0};
  for (int j = 0; j < 6; ++j) {
    const double c = (j - 2.5) * 319e-6;
    sum += std::polar(1.0, k * s * c);
  }
  return (beta == 0.0 ? 1.0 : std::sin(beta) / beta) * sum.real() / 6.0;
}

}  // namespace

TEST_CASE("grating pattern matches the explicit slit sum") {
  const auto c = single();
  CHECK(grating_pattern(c, 0.0) == doctest::Approx(1.0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-0.05, 0.05);
  for (int i = 0; i < 200; ++i) {
    const double t = d(rng);
    CHECK(grating_pattern(c, t) == doctest::Approx(grating_direct(t)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("single-beam normalization") {
  const auto n = normalize_single_beam(single());
  CHECK(n.quadrature.converged);
  // Independent value: sqrt(N b / (R * integral f^2)) at R = 5 m.
  CHECK(n.lambda_over_e0 == doctest::Approx(0.1075039).epsilon(1e-6));
  CHECK(n.lambda_over_e0 == doctest::Approx(std::sqrt(6 * 32e-6 / (5.0 * n.pattern_integral))));
  CHECK_THROWS_AS(normalize_single_beam(two()), std::invalid_argument);
}

TEST_CASE("slit field scale") {
  const auto c = two();
  CHECK(slit_field_scale(c) == doctest::Approx(2.0 * c.setup().transverse_wave_number() / 5.0));
}

TEST_CASE("six-slit closed form, array factor and numeric sum agree") {
  const auto c = two();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    const double t = i < 10 ? 1e-3 * d(rng) : d(rng);
    const double closed = two_beam_slit_intensity_closed(c, t);
    CHECK(two_beam_slit_intensity_array(c, t) == doctest::Approx(closed).epsilon(1e-10));
    const auto f = two_beam_slit_field_numeric(c, t);
    CHECK(f.intensity() == doctest::Approx(closed).epsilon(1e-7));
    CHECK(f.amplitude() * f.amplitude() == doctest::Approx(f.intensity()));
  }
  // The centred odd sum has no quadrature component.
  CHECK(std::abs(two_beam_slit_field_numeric(c, 0.01).quadrature) <
        1e-9 * std::abs(two_beam_slit_field_numeric(c, 0.01).in_phase));
  CHECK(two_beam_slit_intensity_closed(c, 0.0) == 0.0);
}

TEST_CASE("general wire count uses the numeric and array paths") {
  auto g = reference_grid(Placement::AtDarkFringes);
  g.count = 5;
  const auto c = Configuration::checked(reference_setup(), g);
  CHECK_THROWS_AS(two_beam_slit_intensity_closed(c, 0.01), std::invalid_argument);
  for (double t : {2e-4, 1e-3, 0.01, 0.3})
    CHECK(two_beam_slit_field_numeric(c, t).intensity() ==
          doctest::Approx(two_beam_slit_intensity_array(c, t)).epsilon(1e-7));
  const auto p = FarFieldPattern::two_beam(c, 1e-3);
  CHECK(p.fraction_in(-c.setup().detection_half_angle, c.setup().detection_half_angle) ==
        doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("placement is enforced") {
  CHECK_THROWS_AS(two_beam_slit_intensity_closed(single(), 0.01), std::invalid_argument);
  CHECK_THROWS_AS(two_beam_slit_field_numeric(single(), 0.01), std::invalid_argument);
  CHECK_THROWS_AS(FarFieldPattern::two_beam(single(), 1e-3), std::invalid_argument);
}

TEST_CASE("patterns distribute the diffracted fraction over the region") {
  for (const auto& c : {single(), two()}) {
    const double f = 0.01;
    const auto p = c.grid().placement == Placement::SingleBeamCentered ? FarFieldPattern::single_beam(c, f)
                                                                       : FarFieldPattern::two_beam(c, f);
    const double tm = c.setup().detection_half_angle;
    CHECK(p.fraction_in(-tm, tm) == doctest::Approx(f).epsilon(1e-9));
    CHECK(p.fraction_in(-2.0 * tm, 2.0 * tm) == doctest::Approx(f).epsilon(1e-9));
    CHECK(p.fraction_in(0.0, tm) == doctest::Approx(0.5 * f).epsilon(1e-9));
    CHECK(p.fraction_in(0.1, 0.1) == 0.0);
    CHECK(p.density(0.013) == doctest::Approx(f * p.raw(0.013) / p.raw_integral()));

    const auto s = p.sample(Normalization::FractionOfIncident, 4);
    CHECK_NOTHROW(s.check(tm));
    std::vector<double> x, y;
    for (const auto& v : s.samples) {
      x.push_back(v.theta);
      y.push_back(*v.intensity);
    }
    // Stored grid is dense enough for trapezoidal re-integration.
    CHECK(numerics::trapezoid(x, y) == doctest::Approx(f).epsilon(1e-4));

    const auto raw = p.sample(Normalization::RawFieldSquare, -0.01, 0.01, 4);
    CHECK(raw.normalization == Normalization::RawFieldSquare);
    for (const auto& v : raw.samples) CHECK(*v.intensity == doctest::Approx(p.raw(v.theta)).epsilon(1e-9).scale(1e-30));
  }
}

TEST_CASE("profile invariants are checked") {
  AngularIntensityProfile p;
  p.samples = {{-0.01, 1.0}, {0.0, 2.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(p.check(0.05), std::logic_error);
  p.samples = {{-0.01, 1.0}, {0.06, 2.0}};
  CHECK_THROWS_AS(p.check(0.05), std::logic_error);
  p.samples = {{-0.01, -1.0}};
  CHECK_THROWS_AS(p.check(0.05), std::logic_error);
  p.samples = {{-0.01, std::nullopt}, {0.01, 0.5}};
  CHECK_NOTHROW(p.check(0.05));
}

TEST_CASE("detector apertures") {
  const auto c = two();
  const auto& s = c.setup();
  const Detector d{1e-3, s.detector_half_width(), "D2"};
  CHECK(aperture_weight(s, d, 1e-3) == doctest::Approx(1.0));
  CHECK(aperture_weight(s, d, 1e-3 + 0.5 * d.half_width) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-6));
  CHECK(aperture_weight(s, d, 1e-3 + 1.01 * d.half_width) == 0.0);

  auto strip_setup = reference_setup();
  strip_setup.detector_aperture = ApertureShape::Strip;
  CHECK(aperture_weight(strip_setup, d, 1e-3 + 0.9 * d.half_width) == 1.0);
}

TEST_CASE("frozen detector captures") {
  // Single beam, disc aperture at 2 alpha: 0.62670 % of the incident beam.
  const auto c1 = single();
  const auto p1 = FarFieldPattern::single_beam(c1, 0.0759198735);
  CHECK(100.0 * p1.fraction_in(c1.detectors().at("D2")) == doctest::Approx(0.626700).epsilon(1e-5));
  CHECK(100.0 * p1.fraction_in(c1.detectors().at("D1")) == doctest::Approx(0.647862).epsilon(1e-5));

  // Two beams, detector at +alpha: 8.925e-7 of one beam with the disc, and
  // 9.584e-7 with a plain angular window.
  const auto c2 = two();
  const auto p2 = FarFieldPattern::two_beam(c2, 0.00125667338);
  CHECK(p2.fraction_in(c2.detectors().at("D2")) == doctest::Approx(8.92532e-7).epsilon(1e-5));
  auto strip_setup = reference_setup();
  strip_setup.detector_aperture = ApertureShape::Strip;
  const auto c3 = Configuration::checked(strip_setup, reference_grid(Placement::AtDarkFringes));
  const auto p3 = FarFieldPattern::two_beam(c3, 0.00125667338);
  CHECK(p3.fraction_in(c3.detectors().at("D2")) == doctest::Approx(9.58448e-7).epsilon(1e-4));
}

TEST_CASE("Fraunhofer totals match the energy removed by the wires") {
  // 4 N b / (pi D) for the single beam; the linearized two-beam wire loss.
  CHECK(fraunhofer_diffracted_fraction(single()) == doctest::Approx(4 * 6 * 32e-6 / (std::numbers::pi * 3.22e-3)).epsilon(1e-3));
  CHECK(fraunhofer_diffracted_fraction(two()) == doctest::Approx(0.00125667338).epsilon(1e-3));
}

TEST_CASE("Babinet complement") {
  const auto c = two();
  const auto support = unperturbed_beam_support(c);
  REQUIRE(support.size() == 2);
  CHECK(support[0].lo == doctest::Approx(-1e-3 - c.setup().detector_half_width()));
  CHECK(unperturbed_beam_support(single()).size() == 1);

  const auto slit = FarFieldPattern::two_beam(c, 1e-3).sample(Normalization::FractionOfIncident, -3e-3, 3e-3, 8);
  const auto wire = babinet_wire_profile(slit, support);
  CHECK(wire.provenance == Provenance::WireGridViaBabinet);
  bool masked = false;
  for (std::size_t i = 0; i < slit.samples.size(); ++i) {
    const double t = slit.samples[i].theta;
    if (support[0].contains(t) || support[1].contains(t)) {
      CHECK_FALSE(wire.samples[i].intensity.has_value());
      masked = true;
    } else {
      CHECK(wire.samples[i].intensity == slit.samples[i].intensity);
    }
  }
  CHECK(masked);
  CHECK_THROWS_AS(babinet_wire_profile(wire, support), std::invalid_argument);

  const std::vector<double> grid{-1e-3, 0.0, 1e-4, 2e-3};
  const auto es = single_beam_field_profile(single(), grid);
  const auto ew = babinet_wire_field(es, unperturbed_beam_support(single()));
  CHECK(*ew.samples[0].amplitude == -*es.samples[0].amplitude);
  CHECK_FALSE(ew.samples[1].amplitude.has_value());
  CHECK_FALSE(ew.samples[2].amplitude.has_value());
  CHECK(*ew.samples[3].amplitude == -*es.samples[3].amplitude);
  CHECK_THROWS_AS(babinet_wire_field(ew, unperturbed_beam_support(single())), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and ISA independent at serialization precision") {
  const auto p = FarFieldPattern::two_beam(two(), 1e-3);
  const auto a = p.sample(Normalization::FractionOfIncident, -0.02, 0.02, 4);
  const auto b = p.sample(Normalization::FractionOfIncident, -0.02, 0.02, 4);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].intensity == b.samples[i].intensity);
  for (const auto& s : a.samples)
    CHECK(*s.intensity == doctest::Approx(p.density(s.theta)).epsilon(1e-11).scale(1e-12));
}

TEST_CASE("names") {
  CHECK(to_string(Normalization::RawFieldSquare) == "RawFieldSquare");
  CHECK(to_string(Normalization::FractionOfIncident) == "FractionOfIncident");
  CHECK(to_string(Provenance::TwoBeamSlitGrid) == "TwoBeamSlitGrid");
  CHECK(to_string(Provenance::WireGridViaBabinet) == "WireGridViaBabinet");
}
