#include "wiregrid/ledger.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wiregrid {

double EnergyLedger::diffracted_into_detector() const { return f_wires - f_diffracted_away; }

const CrossTerm& EnergyLedger::cross_term(const std::string& label) const {
  for (const auto& t : detector_cross_terms)
    if (t.label == label) return t;
  throw std::out_of_range("ledger has no cross term for " + label);
}

std::vector<numerics::Strip> wire_strips(const Configuration& config) {
  std::vector<numerics::Strip> strips;
  for (double c : config.wire_centers()) strips.push_back({c, config.grid().thickness});
  return strips;
}

double wire_loss_single_beam(const Configuration& config, numerics::StripModel model) {
  const double D = config.setup().beam_diameter;
  const auto strips = wire_strips(config);
  return 100.0 * numerics::disc_strip_area(D, strips, model) / numerics::disc_area(D);
}

namespace {

void require_single_beam(const Configuration& config) {
  if (config.grid().placement != Placement::SingleBeamCentered)
    throw std::invalid_argument("single-beam ledger requires placement single_beam_centered");
}

void require_two_beam(const Configuration& config) {
  if (config.grid().placement != Placement::AtDarkFringes)
    throw std::invalid_argument("two-beam ledger requires placement at_dark_fringes");
}

std::vector<CrossTerm> captures(const FarFieldPattern& pattern, const DetectorBank& detectors) {
  std::vector<CrossTerm> out;
  for (const auto& d : detectors.detectors()) out.push_back({d.label, 100.0 * pattern.fraction_in(d)});
  return out;
}

}  // namespace

double diffracted_away_single_beam(const Configuration& config, const DetectorBank& detectors,
                                   const LedgerOptions& options) {
  require_single_beam(config);
  const double f_w = wire_loss_single_beam(config, options.strip_model);
  const auto pattern = FarFieldPattern::single_beam(config, f_w / 100.0, options.quadrature);
  return f_w - 100.0 * pattern.fraction_in(detectors.at("D1"));
}

EnergyLedger solve_single_beam_ledger(const Configuration& config, const DetectorBank& detectors,
                                      const LedgerOptions& options) {
  require_single_beam(config);
  EnergyLedger ledger;
  ledger.scenario = Scenario::SingleBeam;
  ledger.strip_model = options.strip_model;
  ledger.solved_detector = "D1";
  ledger.f_wires = wire_loss_single_beam(config, options.strip_model);

  const auto pattern = FarFieldPattern::single_beam(config, ledger.f_wires / 100.0, options.quadrature);
  ledger.detector_cross_terms = captures(pattern, detectors);
  ledger.f_diffracted_away = ledger.f_wires - ledger.cross_term("D1").percent;
  ledger.f_detector = ledger.f0 - ledger.f_wires - ledger.f_diffracted_away;
  return ledger;
}

double wire_loss_two_beam(const Configuration& config, AmplitudeModel amplitude, numerics::StripModel strips) {
  require_two_beam(config);
  const auto& s = config.setup();
  const double D = s.beam_diameter;
  const double r = s.beam_radius();
  const double ky = s.transverse_wave_number();
  const double e0 = s.field_amplitude;
  const double half_b = 0.5 * config.grid().thickness;

  auto length = [&](double y) { return strips == numerics::StripModel::ChordExact ? numerics::disc_chord(D, y) : D; };
  auto field_sq = [&](double y, std::size_t j) {
    if (amplitude == AmplitudeModel::Linearized) {
      const double e = linearized_effective_amplitude(s, y - config.wire_centers()[j], config.slope_sign(j));
      return e * e;
    }
    const double e = effective_amplitude(s, y);
    return e * e;
  };

  const numerics::QuadratureSpec spec{1e-12, 1e-300, 10000};
  double stopped = 0.0;
  for (std::size_t j = 0; j < config.wire_centers().size(); ++j) {
    const double c = config.wire_centers()[j];
    const auto q = numerics::require_converged(
        numerics::integrate([&](double y) { return length(y) * field_sq(y, j); }, c - half_b, c + half_b, spec),
        "wire-loss numerator");
    stopped += q.value;
  }

  double incident = 0.0;
  if (amplitude == AmplitudeModel::Linearized) {
    incident = 0.5 * 4.0 * e0 * e0 * numerics::disc_area(D);
  } else {
    // Split at fringe quarter periods so panels resolve cos^2.
    const auto points = numerics::uniform_breakpoints(-r, r, 0.5 * std::numbers::pi / ky);
    const auto q = numerics::require_converged(
        numerics::integrate(
            [&](double y) {
              const double e = effective_amplitude(s, y);
              return numerics::disc_chord(D, y) * e * e;
            },
            std::span<const double>(points), spec),
        "wire-loss denominator");
    incident = q.value;
  }
  return 100.0 * stopped / incident;
}

EnergyLedger solve_two_beam_ledger(const Configuration& config, const DetectorBank& detectors,
                                   const LedgerOptions& options) {
  require_two_beam(config);
  EnergyLedger ledger;
  ledger.scenario = Scenario::TwoBeam;
  ledger.strip_model = options.strip_model;
  ledger.amplitude_model = options.amplitude_model;
  ledger.solved_detector = "D2";
  ledger.f_wires = wire_loss_two_beam(config, options.amplitude_model, options.strip_model);

  const auto pattern = FarFieldPattern::two_beam(config, ledger.f_wires / 100.0, options.quadrature);
  ledger.detector_cross_terms = captures(pattern, detectors);
  ledger.f_diffracted_away = ledger.f_wires - ledger.cross_term("D2").percent;
  ledger.f_detector = ledger.f0 - ledger.f_wires - ledger.f_diffracted_away;
  return ledger;
}

std::string to_string(Scenario scenario) { return scenario == Scenario::SingleBeam ? "SingleBeam" : "TwoBeam"; }

std::string to_string(AmplitudeModel model) {
  return model == AmplitudeModel::Linearized ? "linearized" : "exact_cosine";
}

}  // namespace wiregrid
