#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wiregrid/complementarity.hpp"
#include "wiregrid/diffraction.hpp"
#include "wiregrid/ledger.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid {

inline constexpr const char* kToolName = "wiregrid";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kFloatDigits = 9;
inline constexpr int kPercentDigits = 6;

/// Shortest locale-independent text with at most `digits` significant digits.
std::string format_number(double value, int digits = kFloatDigits);
double round_significant(double value, int digits);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Provenance block embedded in every emitted file, as ordered key/value text.
struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(std::string key, std::string value);
  void add(std::string key, double value);
};

struct RunModels {
  numerics::StripModel strip_model = numerics::StripModel::FullDiameterStrip;
  AmplitudeModel amplitude_model = AmplitudeModel::Linearized;
  numerics::QuadratureSpec quadrature = pattern_quadrature();
};

Metadata make_metadata(const Configuration& config, const RunModels& models, bool from_scenario_file = false);

std::string profile_csv(const AngularIntensityProfile& profile, const Metadata& meta);
std::string profile_json(const AngularIntensityProfile& profile, const Metadata& meta);

std::string ledger_json(const EnergyLedger& ledger, const Metadata& meta);

std::string report_json(const ComplementarityReport& report, const Metadata& meta);

std::string squarewave_csv(const std::vector<SquareWavePoint>& points, const Metadata& meta);
std::string squarewave_json(const std::vector<SquareWavePoint>& points, const Metadata& meta);

struct FringePosition {
  int n = 0;
  double y = 0.0;  // m
};

std::vector<FringePosition> fringe_map(const Configuration& config);

std::string fringe_csv(const std::vector<FringePosition>& fringes, const Metadata& meta);
std::string fringe_json(const std::vector<FringePosition>& fringes, const Metadata& meta);

}  // namespace wiregrid
