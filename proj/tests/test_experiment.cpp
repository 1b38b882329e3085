#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wiregrid/experiment.hpp"

using namespace wiregrid;

namespace {

bool has_field(const ValidationResult& r, const std::string& field) {
  for (const auto& d : r.errors)
    if (d.field == field) return true;
  return false;
}

bool has_message(const ValidationResult& r, const std::string& text) {
  for (const auto& d : r.errors)
    if (d.message.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("reference wave parameters") {
  const auto c = Configuration::checked(reference_setup(), reference_grid(Placement::AtDarkFringes));
  const auto& w = c.waves();
  // 2 pi / 638 nm and its projection on sin(1e-3).
  CHECK(w.wave_number == doctest::Approx(9.848253e6).epsilon(1e-7));
  CHECK(w.transverse_wave_number == doctest::Approx(9848.25).epsilon(1e-6));
  CHECK(w.fringe_spacing * 1e6 == doctest::Approx(319.0).epsilon(1e-6));
  CHECK(w.beta == doctest::Approx(0.5 * w.wave_number * 32e-6));
  CHECK(w.gamma == doctest::Approx(0.5 * w.wave_number * 319e-6));
}

TEST_CASE("detector half width follows the beam and distance") {
  auto s = reference_setup();
  CHECK(s.detector_half_width() == doctest::Approx(std::atan(1.61e-3 / 5.0)));
  s.detector_half_angle = 2e-4;
  CHECK(s.detector_half_width() == 2e-4);
}

TEST_CASE("wire centres for both placements") {
  const auto single = Configuration::checked(reference_setup(), reference_grid(Placement::SingleBeamCentered));
  const auto& a = single.wire_centers();
  REQUIRE(a.size() == 6);
  CHECK(a.front() == doctest::Approx(-2.5 * 319e-6));
  CHECK(a.back() == doctest::Approx(2.5 * 319e-6));

  const auto two = Configuration::checked(reference_setup(), reference_grid(Placement::AtDarkFringes));
  const auto& b = two.wire_centers();
  REQUIRE(b.size() == 6);
  CHECK(b.front() == doctest::Approx(-2.5 * 319e-6));
  // Innermost dark fringe sits at half a spacing from the axis.
  CHECK(b[3] * 1e6 == doctest::Approx(159.5).epsilon(1e-6));
  for (std::size_t j = 1; j < b.size(); ++j) CHECK(b[j] - b[j - 1] == doctest::Approx(319e-6));
}

TEST_CASE("slope signs alternate across the dark fringes") {
  const auto c = Configuration::checked(reference_setup(), reference_grid(Placement::AtDarkFringes));
  const double ky = c.setup().transverse_wave_number();
  for (std::size_t j = 0; j < 6; ++j) {
    const double y = c.wire_centers()[j];
    const double slope = -2.0 * ky * std::sin(ky * y);
    CHECK((slope > 0) == (c.slope_sign(j) > 0));
    CHECK(linearized_effective_amplitude(c.setup(), 1e-6, c.slope_sign(j)) ==
          doctest::Approx(effective_amplitude(c.setup(), y + 1e-6)).epsilon(1e-3));
  }
}

TEST_CASE("dark fringe positions") {
  const auto ys = dark_fringe_positions(reference_setup(), -1, 1);
  REQUIRE(ys.size() == 3);
  CHECK(ys[1] * 1e6 == doctest::Approx(159.5).epsilon(1e-6));
  CHECK(ys[0] == doctest::Approx(-ys[1]));
  for (double y : ys) CHECK(std::abs(effective_amplitude(reference_setup(), y)) < 1e-9);
  CHECK(dark_fringe_positions(reference_setup(), 2, 1).empty());
}

TEST_CASE("detector banks") {
  const auto s = reference_setup();
  const auto one = DetectorBank::single_beam(s);
  CHECK(one.at("D1").center_angle == 0.0);
  CHECK(one.at("D2").center_angle == doctest::Approx(2e-3));
  const auto two = DetectorBank::two_beam(s);
  CHECK(two.at("D1").center_angle == doctest::Approx(-1e-3));
  CHECK(two.at("D2").center_angle == doctest::Approx(1e-3));
  CHECK(two.problems(s.detection_half_angle).empty());
  CHECK_THROWS_AS(two.at("D3"), std::out_of_range);

  const DetectorBank overlapping({{0.0, 2e-3, "A"}, {1e-3, 2e-3, "B"}});
  CHECK_FALSE(overlapping.problems(0.1).empty());
  const DetectorBank outside({{0.09, 2e-2, "A"}});
  CHECK_FALSE(outside.problems(0.1).empty());
}

TEST_CASE("validation collects every problem") {
  auto s = reference_setup();
  s.wavelength = -1.0;
  s.beam_diameter = 0.0;
  auto g = reference_grid(Placement::AtDarkFringes);
  g.thickness = 400e-6;
  const auto r = validate(s, g);
  CHECK_FALSE(r.ok());
  CHECK(has_field(r, "wavelength"));
  CHECK(has_field(r, "beam_diameter"));
  CHECK(has_message(r, "thickness must be strictly less than pitch"));
  CHECK_THROWS_AS(Configuration::checked(s, g), ValidationError);
  try {
    Configuration::checked(s, g);
  } catch (const ValidationError& e) {
    CHECK(e.diagnostics().size() == r.errors.size());
  }
}

TEST_CASE("validation is pure") {
  auto g = reference_grid(Placement::AtDarkFringes);
  g.pitch = 300e-6;
  const auto a = validate(reference_setup(), g);
  const auto b = validate(reference_setup(), g);
  REQUIRE(a.errors.size() == b.errors.size());
  for (std::size_t i = 0; i < a.errors.size(); ++i) CHECK(a.errors[i].message == b.errors[i].message);
  CHECK(has_message(a, "pitch/fringe mismatch"));
  CHECK(has_message(a, "319.0"));
}

TEST_CASE("pitch is not tied to the fringes for a single beam") {
  auto g = reference_grid(Placement::SingleBeamCentered);
  g.pitch = 300e-6;
  CHECK(validate(reference_setup(), g).ok());
}

TEST_CASE("geometry limits") {
  auto g = reference_grid(Placement::SingleBeamCentered);
  g.count = 12;
  CHECK(has_field(validate(reference_setup(), g), "grid"));

  auto s = reference_setup();
  s.detection_half_angle = 2.0;
  CHECK(has_field(validate(s, reference_grid(Placement::SingleBeamCentered)), "detection_half_angle"));

  s = reference_setup();
  s.detector_half_angle = 1.5e-3;
  CHECK(has_field(validate(s, reference_grid(Placement::AtDarkFringes)), "detector_half_angle"));

  s = reference_setup();
  s.detection_half_angle = 5e-4;
  CHECK_FALSE(validate(s, reference_grid(Placement::AtDarkFringes)).ok());
}

TEST_CASE("string conversions round trip") {
  for (auto p : {Placement::SingleBeamCentered, Placement::AtDarkFringes})
    CHECK(placement_from_string(to_string(p)) == p);
  for (auto a : {ApertureShape::Disc, ApertureShape::Strip}) CHECK(aperture_from_string(to_string(a)) == a);
  CHECK_FALSE(placement_from_string("centered").has_value());
  CHECK_FALSE(aperture_from_string("square").has_value());
}
