#pragma once

#include <string>
#include <vector>

#include "wiregrid/diffraction.hpp"
#include "wiregrid/experiment.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid {

enum class Scenario { SingleBeam, TwoBeam };

/// Field used for the energy stopped at the wires in the two-beam case.
enum class AmplitudeModel {
  Linearized,   // +/- 2 E0 k_y u across each wire, mean cos^2 = 1/2 over the disc
  ExactCosine,  // 2 E0 cos(k_y y) everywhere, integrated over the actual disc
};

struct CrossTerm {
  std::string label;
  double percent = 0.0;  // diffracted light collected by that detector
};

/// Percent photon budget: f0 = f_wires + f_diffracted_away + f_detector.
struct EnergyLedger {
  Scenario scenario = Scenario::SingleBeam;
  double f0 = 100.0;
  double f_wires = 0.0;
  double f_diffracted_away = 0.0;
  double f_detector = 0.0;  // defined by the identity above
  std::string solved_detector;
  std::vector<CrossTerm> detector_cross_terms;

  numerics::StripModel strip_model = numerics::StripModel::FullDiameterStrip;
  AmplitudeModel amplitude_model = AmplitudeModel::Linearized;

  /// Percent decrease at the solved detector relative to the unperturbed beam.
  double detector_decrease() const { return f0 - f_detector; }
  /// Diffracted light collected by the solved detector (percent).
  double diffracted_into_detector() const;
  const CrossTerm& cross_term(const std::string& label) const;
};

struct LedgerOptions {
  numerics::StripModel strip_model = numerics::StripModel::FullDiameterStrip;
  AmplitudeModel amplitude_model = AmplitudeModel::Linearized;
  numerics::QuadratureSpec quadrature = pattern_quadrature();
};

/// Wire strips of the configuration for the disc-geometry helpers.
std::vector<numerics::Strip> wire_strips(const Configuration& config);

/// Percent of a uniform beam stopped by the wires: 100 * wire area / disc area.
double wire_loss_single_beam(const Configuration& config,
                             numerics::StripModel model = numerics::StripModel::FullDiameterStrip);

/// Percent of the single beam diffracted into the detection region outside
/// the on-axis detector "D1".
double diffracted_away_single_beam(const Configuration& config, const DetectorBank& detectors,
                                   const LedgerOptions& options = {});

EnergyLedger solve_single_beam_ledger(const Configuration& config, const DetectorBank& detectors,
                                      const LedgerOptions& options = {});

/// Percent of the two-beam energy stopped at the wires:
/// 100 * sum over wires of integral E_eff^2 dA / integral over the disc of E_eff^2 dA.
double wire_loss_two_beam(const Configuration& config, AmplitudeModel amplitude = AmplitudeModel::Linearized,
                          numerics::StripModel strips = numerics::StripModel::FullDiameterStrip);

/// Two-beam ledger for the beam assigned to detector "D2". The diffracted
/// pattern carries f_WG, and only that detector's capture is removed from it.
EnergyLedger solve_two_beam_ledger(const Configuration& config, const DetectorBank& detectors,
                                   const LedgerOptions& options = {});

std::string to_string(Scenario scenario);
std::string to_string(AmplitudeModel model);

}  // namespace wiregrid
