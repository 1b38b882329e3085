#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wiregrid/ledger.hpp"

using namespace wiregrid;

namespace {

Configuration single() { return Configuration::checked(reference_setup(), reference_grid(Placement::SingleBeamCentered)); }
Configuration two() { return Configuration::checked(reference_setup(), reference_grid(Placement::AtDarkFringes)); }

}  // namespace

TEST_CASE("single-beam wire loss under both footprint models") {
  const auto c = single();
  CHECK(wire_loss_single_beam(c) == doctest::Approx(400.0 * 6 * 32e-6 / (std::numbers::pi * 3.22e-3)).epsilon(1e-12));
  CHECK(wire_loss_single_beam(c, numerics::StripModel::ChordExact) == doctest::Approx(7.1328).epsilon(1e-3));
}

TEST_CASE("single-beam ledger balances") {
  const auto c = single();
  const auto l = solve_single_beam_ledger(c, c.detectors());
  CHECK(l.scenario == Scenario::SingleBeam);
  CHECK(l.solved_detector == "D1");
  CHECK(l.f0 == doctest::Approx(l.f_wires + l.f_diffracted_away + l.f_detector).epsilon(1e-14));
  CHECK(l.f_diffracted_away == doctest::Approx(diffracted_away_single_beam(c, c.detectors())));
  CHECK(l.diffracted_into_detector() == doctest::Approx(l.cross_term("D1").percent));
  CHECK(l.cross_term("D1").percent == doctest::Approx(0.647862).epsilon(1e-5));
  CHECK(l.cross_term("D2").percent == doctest::Approx(0.626700).epsilon(1e-5));
  CHECK(l.detector_decrease() == doctest::Approx(100.0 - l.f_detector));
  CHECK_THROWS_AS(l.cross_term("D9"), std::out_of_range);
  CHECK_THROWS_AS(solve_single_beam_ledger(two(), two().detectors()), std::invalid_argument);
}

TEST_CASE("two-beam wire loss") {
  const auto c = two();
  const double lin = wire_loss_two_beam(c);
  // Closed form: 100 * N (D b^3 k_y^2 / 3) / (pi D^2 / 2).
  const double ky = c.setup().transverse_wave_number();
  const double b = 32e-6;
  const double D = 3.22e-3;
  const double closed = 100.0 * 6 * (4.0 * D * ky * ky * b * b * b / 12.0) / (0.5 * 4.0 * std::numbers::pi * D * D / 4.0);
  CHECK(lin == doctest::Approx(closed).epsilon(1e-10));
  CHECK(lin == doctest::Approx(0.1256673).epsilon(1e-6));

  const double exact = wire_loss_two_beam(c, AmplitudeModel::ExactCosine);
  CHECK(exact == doctest::Approx(lin).epsilon(5e-3));
  CHECK(exact < lin);
  const double chord = wire_loss_two_beam(c, AmplitudeModel::Linearized, numerics::StripModel::ChordExact);
  CHECK(chord < lin);
  CHECK_THROWS_AS(wire_loss_two_beam(single()), std::invalid_argument);
}

TEST_CASE("two-beam ledger assigns one detector") {
  const auto c = two();
  const auto l = solve_two_beam_ledger(c, c.detectors());
  CHECK(l.scenario == Scenario::TwoBeam);
  CHECK(l.solved_detector == "D2");
  CHECK(l.f_diffracted_away == doctest::Approx(l.f_wires - l.cross_term("D2").percent));
  CHECK(l.f0 == doctest::Approx(l.f_wires + l.f_diffracted_away + l.f_detector).epsilon(1e-14));
  // Symmetric pattern: both detectors see the same capture.
  CHECK(l.cross_term("D1").percent == doctest::Approx(l.cross_term("D2").percent).epsilon(1e-9));
  CHECK(l.f_diffracted_away == doctest::Approx(0.1255781).epsilon(1e-6));
  CHECK(l.f_detector == doctest::Approx(99.748755).epsilon(1e-8));
}

TEST_CASE("ledger options propagate") {
  const auto c = two();
  LedgerOptions o;
  o.strip_model = numerics::StripModel::ChordExact;
  o.amplitude_model = AmplitudeModel::ExactCosine;
  const auto l = solve_two_beam_ledger(c, c.detectors(), o);
  CHECK(l.strip_model == numerics::StripModel::ChordExact);
  CHECK(l.amplitude_model == AmplitudeModel::ExactCosine);
  CHECK(l.f_wires == doctest::Approx(wire_loss_two_beam(c, AmplitudeModel::ExactCosine, numerics::StripModel::ChordExact)));
}

TEST_CASE("fractions are independent of E0") {
  auto s = reference_setup();
  s.field_amplitude = 0.25;
  const auto c = Configuration::checked(s, reference_grid(Placement::AtDarkFringes));
  const auto a = solve_two_beam_ledger(c, c.detectors());
  const auto b = solve_two_beam_ledger(two(), two().detectors());
  CHECK(a.f_wires == doctest::Approx(b.f_wires).epsilon(1e-13));
  CHECK(a.f_detector == doctest::Approx(b.f_detector).epsilon(1e-13));
  CHECK(wire_loss_two_beam(c, AmplitudeModel::ExactCosine) ==
        doctest::Approx(wire_loss_two_beam(two(), AmplitudeModel::ExactCosine)).epsilon(1e-12));
}

TEST_CASE("wire strips follow the configuration") {
  const auto strips = wire_strips(two());
  REQUIRE(strips.size() == 6);
  for (const auto& s : strips) CHECK(s.width == 32e-6);
  CHECK(strips[0].center_y == doctest::Approx(-2.5 * 319e-6));
}

TEST_CASE("names") {
  CHECK(to_string(Scenario::SingleBeam) == "SingleBeam");
  CHECK(to_string(Scenario::TwoBeam) == "TwoBeam");
  CHECK(to_string(AmplitudeModel::Linearized) == "linearized");
  CHECK(to_string(AmplitudeModel::ExactCosine) == "exact_cosine");
}
