#include "wiregrid/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "wiregrid/scenario.hpp"

namespace wiregrid {

using nlohmann::ordered_json;

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  if (r.ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, r.ptr);
}

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  double out = 0.0;
  const auto text = format_number(value, digits);
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

void Metadata::add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }

void Metadata::add(std::string key, double value) { add(std::move(key), format_number(value)); }

Metadata make_metadata(const Configuration& config, const RunModels& models, bool from_scenario_file) {
  const auto& s = config.setup();
  Metadata m;
  m.add("tool", kToolName);
  m.add("tool_version", kToolVersion);
  m.add("scenario_hash", scenario_hash({s, config.grid()}));
  m.add("placement", to_string(config.grid().placement));
  m.add("strip_model", numerics::to_string(models.strip_model));
  m.add("amplitude_model", to_string(models.amplitude_model));
  m.add("detector_aperture", to_string(s.detector_aperture));
  m.add("theta_max_rad", s.detection_half_angle);
  m.add("R_m", s.grid_to_detector_distance);
  m.add("R_source", from_scenario_file ? "scenario" : "calibrated default");
  m.add("detector_half_angle_rad", s.detector_half_width());
  m.add("detector_half_angle_source", s.detector_half_angle ? "scenario" : "derived atan(D/2/R)");
  m.add("quadrature_rel_tol", models.quadrature.relative_tolerance);
  m.add("quadrature_abs_tol", models.quadrature.absolute_tolerance);
  return m;
}

namespace {

std::string csv_preamble(const Metadata& meta) {
  std::string out;
  for (const auto& [k, v] : meta.entries) out += "# " + k + "=" + v + "\n";
  return out;
}

ordered_json meta_json(const Metadata& meta) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : meta.entries) j[k] = v;
  return j;
}

double num(double v) { return round_significant(v, kFloatDigits); }
double pct(double v) { return round_significant(v, kPercentDigits); }

std::string finish(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string profile_csv(const AngularIntensityProfile& profile, const Metadata& meta) {
  const auto norm = to_string(profile.normalization);
  const auto prov = to_string(profile.provenance);
  std::string out = csv_preamble(meta);
  out += "theta_rad,intensity,normalization,provenance\n";
  for (const auto& s : profile.samples) {
    out += format_number(s.theta);
    out += ',';
    out += s.intensity ? format_number(*s.intensity) : std::string("indeterminate");
    out += ',' + norm + ',' + prov + '\n';
  }
  return out;
}

std::string profile_json(const AngularIntensityProfile& profile, const Metadata& meta) {
  ordered_json j;
  j["metadata"] = meta_json(meta);
  j["normalization"] = to_string(profile.normalization);
  j["provenance"] = to_string(profile.provenance);
  auto samples = ordered_json::array();
  for (const auto& s : profile.samples) {
    ordered_json row = ordered_json::array();
    row.push_back(num(s.theta));
    if (s.intensity)
      row.push_back(num(*s.intensity));
    else
      row.push_back(nullptr);
    samples.push_back(std::move(row));
  }
  j["samples"] = std::move(samples);
  return finish(j);
}

std::string ledger_json(const EnergyLedger& ledger, const Metadata& meta) {
  ordered_json j;
  j["metadata"] = meta_json(meta);
  j["scenario"] = to_string(ledger.scenario);
  j["f0"] = pct(ledger.f0);
  j["f_wires"] = pct(ledger.f_wires);
  j["f_diffracted_away"] = pct(ledger.f_diffracted_away);
  j["f_detector"] = pct(ledger.f_detector);
  j["detector_decrease"] = pct(ledger.detector_decrease());
  j["solved_detector"] = ledger.solved_detector;
  j["diffracted_into_detector"] = pct(ledger.diffracted_into_detector());
  auto terms = ordered_json::array();
  for (const auto& t : ledger.detector_cross_terms) terms.push_back({{"label", t.label}, {"percent", pct(t.percent)}});
  j["detector_cross_terms"] = std::move(terms);
  j["strip_model"] = numerics::to_string(ledger.strip_model);
  j["amplitude_model"] = to_string(ledger.amplitude_model);
  j["accounting"] = "f_diffracted_away removes only the solved detector's capture";
  return finish(j);
}

std::string report_json(const ComplementarityReport& report, const Metadata& meta) {
  const auto& b = report.budget;
  ordered_json j;
  j["metadata"] = meta_json(meta);
  j["K"] = num(report.which_way);
  j["K_definition"] = "direct_with_which_way / (direct_with_which_way + diffracted_at_detector)";
  j["V_lower_bound"] = num(report.bound.visibility);
  j["I_min_proxy"] = num(report.bound.i_min);
  j["I_max_proxy"] = num(report.bound.i_max);
  j["proxy_units"] = "photons per mm^2";
  j["wire_area_mm2"] = num(report.bound.wire_area_mm2);
  j["open_area_mm2"] = num(report.bound.open_area_mm2);
  j["duality"] = {{"V_squared", num(report.duality.v_squared)},
                  {"K_squared", num(report.duality.k_squared)},
                  {"total", num(report.duality.total)}};
  j["budget"] = {{"total", b.total},
                 {"stopped_at_wires", b.stopped_at_wires},
                 {"diffracted_total", b.diffracted_total},
                 {"diffracted_off_detector", b.diffracted_off_detector},
                 {"diffracted_at_detector", b.diffracted_at_detector},
                 {"direct_with_which_way", b.direct_with_which_way},
                 {"rounding_dominated", b.rounding_dominated()}};
  return finish(j);
}

std::string squarewave_csv(const std::vector<SquareWavePoint>& points, const Metadata& meta) {
  std::string out = csv_preamble(meta);
  out += "y_mm,intensity_proxy\n";
  for (const auto& p : points) out += format_number(p.y_mm) + ',' + format_number(p.intensity) + '\n';
  return out;
}

std::string squarewave_json(const std::vector<SquareWavePoint>& points, const Metadata& meta) {
  ordered_json j;
  j["metadata"] = meta_json(meta);
  auto rows = ordered_json::array();
  for (const auto& p : points) rows.push_back({{"y_mm", num(p.y_mm)}, {"intensity_proxy", num(p.intensity)}});
  j["points"] = std::move(rows);
  return finish(j);
}

std::vector<FringePosition> fringe_map(const Configuration& config) {
  const auto& s = config.setup();
  const double spacing = config.waves().fringe_spacing;
  // y_n = (n + 1/2) spacing; keep the fringes that fall on the beam.
  const int last = static_cast<int>(std::floor(s.beam_radius() / spacing - 0.5));
  const int first = -last - 1;
  std::vector<FringePosition> out;
  const auto ys = dark_fringe_positions(s, first, last);
  for (int n = first; n <= last; ++n) out.push_back({n, ys[static_cast<std::size_t>(n - first)]});
  return out;
}

std::string fringe_csv(const std::vector<FringePosition>& fringes, const Metadata& meta) {
  std::string out = csv_preamble(meta);
  out += "n,y_mm\n";
  for (const auto& f : fringes) out += std::to_string(f.n) + ',' + format_number(f.y * 1e3) + '\n';
  return out;
}

std::string fringe_json(const std::vector<FringePosition>& fringes, const Metadata& meta) {
  ordered_json j;
  j["metadata"] = meta_json(meta);
  auto rows = ordered_json::array();
  for (const auto& f : fringes) rows.push_back({{"n", f.n}, {"y_mm", num(f.y * 1e3)}});
  j["fringes"] = std::move(rows);
  return finish(j);
}

}  // namespace wiregrid
