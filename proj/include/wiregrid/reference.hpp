#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wiregrid/experiment.hpp"

namespace wiregrid {

enum class Check {
  Relative,       // |computed - value| <= tolerance * |value|
  Absolute,       // |computed - value| <= tolerance
  Exact,          // computed == value
  AtLeast,        // computed >= value
  Range,          // value <= computed <= upper
  Informational,  // listed, never compared
};

struct ReferenceEntry {
  std::string key;
  double value = 0.0;
  double tolerance = 0.0;
  Check check = Check::Relative;
  std::string source;  // where the number comes from
  std::string unit;
  double upper = 0.0;  // Range only
};

/// Published constants with per-entry tolerances.
class ReferenceTable {
 public:
  explicit ReferenceTable(std::vector<ReferenceEntry> entries);

  /// Results of the modified experiment, the measured comparison values of
  /// the original experiment, and that apparatus's parameters.
  static ReferenceTable standard();

  const std::vector<ReferenceEntry>& entries() const { return entries_; }
  const ReferenceEntry& at(const std::string& key) const;

 private:
  std::vector<ReferenceEntry> entries_;
};

using ComputedValues = std::map<std::string, double>;

/// Every comparable quantity of the standard table, computed from one
/// setup and grid (the grid placement is ignored; both are run).
ComputedValues compute_reference_values(const OpticalSetup& setup, const WireGrid& grid);

struct VerifyRow {
  const ReferenceEntry* entry = nullptr;
  std::optional<double> computed;
  std::optional<double> deviation;  // relative for Relative checks, absolute otherwise
  std::optional<bool> pass;         // empty for Informational rows
};

std::vector<VerifyRow> verify(const ReferenceTable& table, const ComputedValues& values);

/// Fixed-width text table, one row per entry.
std::string format_verify_table(const std::vector<VerifyRow>& rows);

bool all_pass(const std::vector<VerifyRow>& rows);

std::string to_string(Check check);

}  // namespace wiregrid
