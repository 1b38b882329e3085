#include "wiregrid/complementarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wiregrid {

void PhotonBudget::check() const {
  if (stopped_at_wires != diffracted_total) throw std::logic_error("budget: stopped must equal diffracted");
  if (diffracted_off_detector + diffracted_at_detector != diffracted_total)
    throw std::logic_error("budget: diffracted categories do not add up");
  if (direct_with_which_way + diffracted_at_detector + diffracted_off_detector + stopped_at_wires != total)
    throw std::logic_error("budget: categories do not sum to total");
  if (stopped_at_wires < 0 || diffracted_off_detector < 0 || diffracted_at_detector < 0 || direct_with_which_way < 0)
    throw std::logic_error("budget: negative count");
}

PhotonBudget photon_budget(const EnergyLedger& ledger, std::int64_t total) {
  if (ledger.scenario != Scenario::TwoBeam) throw std::invalid_argument("photon_budget requires a two-beam ledger");
  if (total < 0) throw std::invalid_argument("photon_budget: negative total");
  auto count = [total](double percent) {
    return static_cast<std::int64_t>(std::llround(percent / 100.0 * static_cast<double>(total)));
  };
  PhotonBudget b;
  b.total = total;
  b.stopped_at_wires = count(ledger.f_wires);
  // Babinet: the complementary slits pass exactly what the wires stop.
  b.diffracted_total = b.stopped_at_wires;
  b.diffracted_at_detector = std::min(count(ledger.diffracted_into_detector()), b.diffracted_total);
  b.diffracted_off_detector = b.diffracted_total - b.diffracted_at_detector;
  b.direct_with_which_way = total - b.stopped_at_wires - b.diffracted_total;
  return b;
}

std::optional<double> which_way_parameter(const PhotonBudget& budget) {
  const auto arrivals = budget.direct_with_which_way + budget.diffracted_at_detector;
  if (arrivals <= 0) return std::nullopt;
  return static_cast<double>(budget.direct_with_which_way) / static_cast<double>(arrivals);
}

double visibility(double i_max, double i_min) {
  const double sum = i_max + i_min;
  if (!(sum > 0.0)) throw std::invalid_argument("visibility: intensities must not both vanish");
  return (i_max - i_min) / sum;
}

VisibilityBound visibility_from_counts(std::int64_t stopped, std::int64_t passed, double wire_area_mm2,
                                       double open_area_mm2) {
  if (!(wire_area_mm2 > 0.0) || !(open_area_mm2 > 0.0))
    throw std::invalid_argument("visibility bound: degenerate wire or open area");
  VisibilityBound v;
  v.stopped = stopped;
  v.passed = passed;
  v.wire_area_mm2 = wire_area_mm2;
  v.open_area_mm2 = open_area_mm2;
  v.i_min = static_cast<double>(stopped) / wire_area_mm2;
  v.i_max = static_cast<double>(passed) / open_area_mm2;
  v.visibility = visibility(v.i_max, v.i_min);
  return v;
}

VisibilityBound visibility_lower_bound(const EnergyLedger& ledger, const Configuration& config, std::int64_t total,
                                       numerics::StripModel model) {
  const auto budget = photon_budget(ledger, total);
  const double D = config.setup().beam_diameter;
  const auto strips = wire_strips(config);
  constexpr double kMm2 = 1e6;
  const double wire_area = numerics::disc_strip_area(D, strips, model) * kMm2;
  const double open_area = numerics::disc_area(D) * kMm2 - wire_area;
  return visibility_from_counts(budget.stopped_at_wires, total - budget.stopped_at_wires, wire_area, open_area);
}

DualityValue duality_value(double v, double k) {
  DualityValue d;
  d.v_squared = v * v;
  d.k_squared = k * k;
  d.total = d.v_squared + d.k_squared;
  return d;
}

ComplementarityReport complementarity_report(const EnergyLedger& ledger, const Configuration& config,
                                             std::int64_t total) {
  ComplementarityReport r;
  r.budget = photon_budget(ledger, total);
  const auto k = which_way_parameter(r.budget);
  if (!k) throw std::invalid_argument("which-way parameter undefined: no detector arrivals");
  r.which_way = *k;
  r.bound = visibility_lower_bound(ledger, config, total);
  r.duality = duality_value(r.bound.visibility, r.which_way);
  return r;
}

std::vector<SquareWavePoint> squarewave_profile(double low, double high, double beam_diameter,
                                                std::span<const numerics::Strip> strips) {
  constexpr double kMm = 1e3;
  const double r = 0.5 * beam_diameter;
  std::vector<numerics::Strip> sorted(strips.begin(), strips.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const numerics::Strip& a, const numerics::Strip& b) { return a.center_y < b.center_y; });

  std::vector<SquareWavePoint> out;
  out.push_back({-r * kMm, high});
  for (const auto& s : sorted) {
    const double lo = (s.center_y - 0.5 * s.width) * kMm;
    const double hi = (s.center_y + 0.5 * s.width) * kMm;
    out.push_back({lo, high});
    out.push_back({lo, low});
    out.push_back({hi, low});
    out.push_back({hi, high});
  }
  out.push_back({r * kMm, high});
  return out;
}

std::vector<SquareWavePoint> squarewave_profile(const VisibilityBound& bound, const Configuration& config) {
  const auto strips = wire_strips(config);
  return squarewave_profile(bound.i_min, bound.i_max, config.setup().beam_diameter, strips);
}

}  // namespace wiregrid
