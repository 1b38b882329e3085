#include "wiregrid/reference.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wiregrid/complementarity.hpp"
#include "wiregrid/diffraction.hpp"
#include "wiregrid/ledger.hpp"
#include "wiregrid/serialize.hpp"

namespace wiregrid {

ReferenceTable::ReferenceTable(std::vector<ReferenceEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (e.source.empty()) throw std::invalid_argument("reference entry " + e.key + " has no source");
}

ReferenceTable ReferenceTable::standard() {
  using C = Check;
  const std::string single = "single-beam calculation";
  const std::string two = "two-beam calculation";
  const std::string counting = "photon counting";
  const std::string vis = "visibility bound";
  const std::string measured = "original experiment, measured";
  const std::string apparatus = "original apparatus";
  return ReferenceTable({
      {"lambda_over_e0", 0.10751306, 1e-3, C::Relative, single, "", 0},
      {"f_w_single_beam", 7.59199, 1e-4, C::Relative, single + ", strip model", "%", 0},
      {"f_s_single_beam", 6.9652, 2e-2, C::Relative, single, "%", 0},
      {"f_D_single_beam", 85.4428, 0.5, C::Absolute, single, "%", 0},
      {"decrease_single_beam", 14.14, 0.0, C::Range, measured + " bracket", "%", 14.62},
      {"capture_D2_single_beam", 0.627, 5e-2, C::Relative, single + ", detector at 2 alpha", "%", 0},
      {"f_WG_linearized", 0.125667, 1e-3, C::Relative, two, "%", 0},
      {"f_WG_exact_cosine", 0.125667, 5e-3, C::Relative, two, "%", 0},
      {"f_LD_two_beam", 0.124709, 2e-2, C::Relative, two, "%", 0},
      {"f_D_two_beam", 99.7496, 0.01, C::Absolute, two, "%", 0},
      {"decrease_two_beam", 0.25, 0.01, C::Absolute, two, "%", 0},
      {"capture_fraction_two_beam", 9.58447e-6, 5e-2, C::Relative, two + ", detector capture", "", 0},
      {"stopped_at_wires", 126, 0.0, C::Exact, counting + ", 100000 photons", "photons", 0},
      {"direct_with_which_way", 99748, 0.0, C::Exact, counting + ", 100000 photons", "photons", 0},
      {"I_min_proxy", 217.2, 5e-3, C::Relative, vis + ", chord model", "1/mm^2", 0},
      {"I_max_proxy", 13205.2, 5e-3, C::Relative, vis + ", chord model", "1/mm^2", 0},
      {"visibility", 0.968, 1e-3, C::Absolute, vis, "", 0},
      {"duality", 1.93, 0.0, C::AtLeast, "duality sum V^2 + K^2", "", 0},
      {"wire_area_chord", 0.5801, 2e-3, C::Relative, vis + ", chord model", "mm^2", 0},
      {"open_area_chord", 7.56322, 2e-3, C::Relative, vis + ", chord model", "mm^2", 0},
      {"measured_decrease_detector1", 14.14, 0, C::Informational, measured + ", pinhole A", "%", 0},
      {"measured_decrease_detector2", 14.62, 0, C::Informational, measured + ", pinhole B", "%", 0},
      {"measured_deflection_detector2", 0.678, 0, C::Informational, measured + ", pinhole A", "%", 0},
      {"measured_two_beam_decrease_detector1", 0.31, 0, C::Informational, measured + ", both pinholes", "%", 0},
      {"measured_two_beam_decrease_detector2", 1.13, 0, C::Informational, measured + ", both pinholes", "%", 0},
      {"apparatus_wavelength", 638, 0, C::Informational, apparatus, "nm", 0},
      {"apparatus_wire_thickness", 128, 0, C::Informational, apparatus, "um", 0},
      {"apparatus_wire_pitch", 1.34, 0, C::Informational, apparatus, "mm", 0},
  });
}

const ReferenceEntry& ReferenceTable::at(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.key == key) return e;
  throw std::out_of_range("no reference entry " + key);
}

ComputedValues compute_reference_values(const OpticalSetup& setup, const WireGrid& grid) {
  ComputedValues v;

  WireGrid g1 = grid;
  g1.placement = Placement::SingleBeamCentered;
  const auto c1 = Configuration::checked(setup, g1);
  const auto l1 = solve_single_beam_ledger(c1, c1.detectors());
  v["lambda_over_e0"] = normalize_single_beam(c1).lambda_over_e0;
  v["f_w_single_beam"] = l1.f_wires;
  v["f_s_single_beam"] = l1.f_diffracted_away;
  v["f_D_single_beam"] = l1.f_detector;
  v["decrease_single_beam"] = l1.detector_decrease();
  v["capture_D2_single_beam"] = l1.cross_term("D2").percent;

  WireGrid g2 = grid;
  g2.placement = Placement::AtDarkFringes;
  const auto c2 = Configuration::checked(setup, g2);
  const auto l2 = solve_two_beam_ledger(c2, c2.detectors());
  v["f_WG_linearized"] = l2.f_wires;
  v["f_WG_exact_cosine"] = wire_loss_two_beam(c2, AmplitudeModel::ExactCosine, numerics::StripModel::FullDiameterStrip);
  v["f_LD_two_beam"] = l2.f_diffracted_away;
  v["f_D_two_beam"] = l2.f_detector;
  v["decrease_two_beam"] = l2.detector_decrease();
  v["capture_fraction_two_beam"] = l2.cross_term(l2.solved_detector).percent / 100.0;

  const auto report = complementarity_report(l2, c2);
  v["stopped_at_wires"] = static_cast<double>(report.budget.stopped_at_wires);
  v["direct_with_which_way"] = static_cast<double>(report.budget.direct_with_which_way);
  v["I_min_proxy"] = report.bound.i_min;
  v["I_max_proxy"] = report.bound.i_max;
  v["visibility"] = report.bound.visibility;
  v["duality"] = report.duality.total;
  v["wire_area_chord"] = report.bound.wire_area_mm2;
  v["open_area_chord"] = report.bound.open_area_mm2;
  return v;
}

std::vector<VerifyRow> verify(const ReferenceTable& table, const ComputedValues& values) {
  std::vector<VerifyRow> rows;
  for (const auto& e : table.entries()) {
    VerifyRow row;
    row.entry = &e;
    if (e.check == Check::Informational) {
      rows.push_back(row);
      continue;
    }
    const auto it = values.find(e.key);
    if (it == values.end()) {
      row.pass = false;
      rows.push_back(row);
      continue;
    }
    const double x = it->second;
    row.computed = x;
    switch (e.check) {
      case Check::Relative:
        row.deviation = std::abs(x - e.value) / std::abs(e.value);
        row.pass = *row.deviation <= e.tolerance;
        break;
      case Check::Absolute:
        row.deviation = std::abs(x - e.value);
        row.pass = *row.deviation <= e.tolerance;
        break;
      case Check::Exact:
        row.deviation = std::abs(x - e.value);
        row.pass = x == e.value;
        break;
      case Check::AtLeast:
        row.deviation = x - e.value;
        row.pass = x >= e.value;
        break;
      case Check::Range:
        row.deviation = x < e.value ? e.value - x : (x > e.upper ? x - e.upper : 0.0);
        row.pass = x >= e.value && x <= e.upper;
        break;
      case Check::Informational:
        break;
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string reference_text(const ReferenceEntry& e) {
  if (e.check == Check::Range) return format_number(e.value) + ".." + format_number(e.upper);
  if (e.check == Check::AtLeast) return ">=" + format_number(e.value);
  return format_number(e.value);
}

std::string tolerance_text(const ReferenceEntry& e) {
  switch (e.check) {
    case Check::Relative:
      return format_number(e.tolerance, 3) + " rel";
    case Check::Absolute:
      return format_number(e.tolerance, 3) + " abs";
    case Check::Exact:
      return "exact";
    case Check::AtLeast:
      return "bound";
    case Check::Range:
      return "range";
    case Check::Informational:
      return "-";
  }
  return "-";
}

}  // namespace

std::string format_verify_table(const std::vector<VerifyRow>& rows) {
  std::string out = pad("quantity", 38) + pad("reference", 18) + pad("computed", 18) + pad("deviation", 14) +
                    pad("tolerance", 12) + pad("result", 7) + "source\n";
  for (const auto& r : rows) {
    const auto& e = *r.entry;
    out += pad(e.key, 38);
    out += pad(reference_text(e) + (e.unit.empty() ? "" : " " + e.unit), 18);
    out += pad(r.computed ? format_number(*r.computed, 9) : "-", 18);
    out += pad(r.deviation ? format_number(*r.deviation, 3) : "-", 14);
    out += pad(tolerance_text(e), 12);
    out += pad(!r.pass ? "INFO" : (*r.pass ? "PASS" : "FAIL"), 7);
    out += e.source + "\n";
  }
  return out;
}

bool all_pass(const std::vector<VerifyRow>& rows) {
  for (const auto& r : rows)
    if (r.pass && !*r.pass) return false;
  return true;
}

std::string to_string(Check check) {
  switch (check) {
    case Check::Relative:
      return "relative";
    case Check::Absolute:
      return "absolute";
    case Check::Exact:
      return "exact";
    case Check::AtLeast:
      return "at_least";
    case Check::Range:
      return "range";
    case Check::Informational:
      return "informational";
  }
  return "unknown";
}

}  // namespace wiregrid
