#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wiregrid/experiment.hpp"
#include "wiregrid/ledger.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid {

inline constexpr std::int64_t kDefaultPhotonTotal = 100000;

/// Integer photon counts for photons leaving one mirror.
struct PhotonBudget {
  std::int64_t total = 0;
  std::int64_t stopped_at_wires = 0;
  std::int64_t diffracted_total = 0;
  std::int64_t diffracted_off_detector = 0;
  std::int64_t diffracted_at_detector = 0;
  std::int64_t direct_with_which_way = 0;

  /// Below 10^4 photons rounding dominates the small categories.
  bool rounding_dominated() const { return total < 10000; }
  /// Throws std::logic_error when a budget invariant fails.
  void check() const;
};

/// Rounds each ledger fraction of `total` to the nearest integer; the direct
/// count absorbs the remainder so the four categories sum to `total`.
PhotonBudget photon_budget(const EnergyLedger& ledger, std::int64_t total = kDefaultPhotonTotal);

/// Fraction of detector arrivals that carry which-way information:
/// direct / (direct + diffracted_at_detector). Empty with no arrivals.
std::optional<double> which_way_parameter(const PhotonBudget& budget);

struct VisibilityBound {
  std::int64_t stopped = 0;
  std::int64_t passed = 0;
  double wire_area_mm2 = 0.0;
  double open_area_mm2 = 0.0;
  double i_min = 0.0;  // photons per mm^2
  double i_max = 0.0;  // photons per mm^2
  double visibility = 0.0;
};

/// (I_max - I_min) / (I_max + I_min).
double visibility(double i_max, double i_min);

/// Square-wave bound from counts and areas; throws std::invalid_argument on
/// non-positive areas.
VisibilityBound visibility_from_counts(std::int64_t stopped, std::int64_t passed, double wire_area_mm2,
                                       double open_area_mm2);

/// Lowest visibility compatible with the two-beam ledger: stopped photons
/// spread over the wire footprint, passed photons over the rest of the disc.
/// Wire areas use `model` (chord-exact by default).
VisibilityBound visibility_lower_bound(const EnergyLedger& ledger, const Configuration& config,
                                       std::int64_t total = kDefaultPhotonTotal,
                                       numerics::StripModel model = numerics::StripModel::ChordExact);

struct DualityValue {
  double v_squared = 0.0;
  double k_squared = 0.0;
  double total = 0.0;
};

DualityValue duality_value(double visibility, double which_way);

struct ComplementarityReport {
  PhotonBudget budget;
  VisibilityBound bound;
  double which_way = 0.0;
  DualityValue duality;
};

ComplementarityReport complementarity_report(const EnergyLedger& ledger, const Configuration& config,
                                             std::int64_t total = kDefaultPhotonTotal);

struct SquareWavePoint {
  double y_mm = 0.0;
  double intensity = 0.0;
};

/// Minimal-visibility profile across the beam: `low` over each strip, `high`
/// elsewhere inside the disc. Each level change appears as two points at the
/// same y so the list plots as a step function.
std::vector<SquareWavePoint> squarewave_profile(double low, double high, double beam_diameter,
                                                std::span<const numerics::Strip> strips);

std::vector<SquareWavePoint> squarewave_profile(const VisibilityBound& bound, const Configuration& config);

}  // namespace wiregrid
