#include "wiregrid/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "wiregrid/complementarity.hpp"
#include "wiregrid/diffraction.hpp"
#include "wiregrid/kernels.hpp"
#include "wiregrid/ledger.hpp"
#include "wiregrid/reference.hpp"
#include "wiregrid/scenario.hpp"
#include "wiregrid/serialize.hpp"

namespace wiregrid::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kProfileSamplesPerLobe = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<std::string> scenario;
  bool reference_defaults = false;
  std::string out_dir = ".";
  std::optional<double> theta_max;
  std::string format = "csv";
  std::string model = "strip";
};

ScenarioDocument load(const Options& opt, std::optional<Placement> required) {
  if (opt.scenario && opt.reference_defaults) throw ConfigError("--scenario and --paper-defaults are exclusive");
  if (!opt.scenario && !opt.reference_defaults) throw ConfigError("one of --scenario or --paper-defaults is required");

  ScenarioDocument doc;
  if (opt.scenario) {
    doc = load_scenario(*opt.scenario);
    if (required && doc.grid.placement != *required)
      throw ScenarioError(0, "grid.placement", "this command needs placement \"" + to_string(*required) + "\"");
  } else {
    doc = reference_scenario(required.value_or(Placement::SingleBeamCentered));
  }
  if (opt.theta_max) doc.setup.detection_half_angle = *opt.theta_max;
  return doc;
}

Configuration configure(const ScenarioDocument& doc) { return Configuration::checked(doc.setup, doc.grid); }

RunModels models(const Options& opt) {
  RunModels m;
  m.strip_model = opt.model == "chord" ? numerics::StripModel::ChordExact : numerics::StripModel::FullDiameterStrip;
  return m;
}

LedgerOptions ledger_options(const RunModels& m) {
  LedgerOptions o;
  o.strip_model = m.strip_model;
  o.amplitude_model = m.amplitude_model;
  o.quadrature = m.quadrature;
  return o;
}

void emit(const Options& opt, const std::string& name, const std::string& content, std::ostream& out) {
  const fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto path = dir / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path.string());
  file << content;
  if (!file) throw ConfigError("failed writing " + path.string());
  out << "wrote " << path.string() << "\n";
}

std::string profile_text(const Options& opt, const AngularIntensityProfile& p, const Metadata& meta) {
  return opt.format == "json" ? profile_json(p, meta) : profile_csv(p, meta);
}

std::string extension(const Options& opt) { return opt.format == "json" ? ".json" : ".csv"; }

int single_beam(const Options& opt, std::ostream& out) {
  const auto config = configure(load(opt, Placement::SingleBeamCentered));
  const auto m = models(opt);
  const auto meta = make_metadata(config, m, opt.scenario.has_value());
  const auto ledger = solve_single_beam_ledger(config, config.detectors(), ledger_options(m));
  const auto pattern = FarFieldPattern::single_beam(config, ledger.f_wires / 100.0, m.quadrature);
  emit(opt, "single_beam_ledger.json", ledger_json(ledger, meta), out);
  emit(opt, "single_beam_profile" + extension(opt),
       profile_text(opt, pattern.sample(Normalization::FractionOfIncident, kProfileSamplesPerLobe), meta), out);
  return kExitOk;
}

int two_beam(const Options& opt, std::ostream& out) {
  const auto config = configure(load(opt, Placement::AtDarkFringes));
  const auto m = models(opt);
  const auto meta = make_metadata(config, m, opt.scenario.has_value());
  const auto ledger = solve_two_beam_ledger(config, config.detectors(), ledger_options(m));
  const auto pattern = FarFieldPattern::two_beam(config, ledger.f_wires / 100.0, m.quadrature);
  emit(opt, "two_beam_ledger.json", ledger_json(ledger, meta), out);
  emit(opt, "two_beam_profile" + extension(opt),
       profile_text(opt, pattern.sample(Normalization::FractionOfIncident, kProfileSamplesPerLobe), meta), out);
  return kExitOk;
}

int complementarity(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto config = configure(load(opt, Placement::AtDarkFringes));
  const auto m = models(opt);
  auto meta = make_metadata(config, m, opt.scenario.has_value());
  meta.add("visibility_area_model", numerics::to_string(numerics::StripModel::ChordExact));
  const auto ledger = solve_two_beam_ledger(config, config.detectors(), ledger_options(m));
  const auto report = complementarity_report(ledger, config);
  if (report.budget.rounding_dominated()) err << "warning: fewer than 10000 photons; rounding dominates the counts\n";
  const auto wave = squarewave_profile(report.bound, config);
  emit(opt, "complementarity_report.json", report_json(report, meta), out);
  emit(opt, "squarewave" + extension(opt),
       opt.format == "json" ? squarewave_json(wave, meta) : squarewave_csv(wave, meta), out);
  return kExitOk;
}

int fringes(const Options& opt, std::ostream& out) {
  const auto config = configure(load(opt, std::nullopt));
  const auto meta = make_metadata(config, models(opt), opt.scenario.has_value());
  const auto list = fringe_map(config);
  emit(opt, "fringe_map" + extension(opt),
       opt.format == "json" ? fringe_json(list, meta) : fringe_csv(list, meta), out);
  return kExitOk;
}

int verify_command(const Options& opt, std::ostream& out) {
  const auto doc = load(opt, std::nullopt);
  const auto table = ReferenceTable::standard();
  const auto rows = verify(table, compute_reference_values(doc.setup, doc.grid));
  out << format_verify_table(rows);
  const bool ok = all_pass(rows);
  out << (ok ? "all checks pass\n" : "some checks FAIL\n");
  return ok ? kExitOk : kExitVerifyFailed;
}

void print_diagnostics(const ValidationError& e, std::ostream& err) {
  err << "error: invalid configuration\n";
  for (const auto& d : e.diagnostics()) err << "  " << d.field << ": " << d.message << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wire-grid diffraction and photon-budget calculator", "wiregrid"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Options opt;
  app.add_option("--scenario", opt.scenario, "Scenario JSON file");
  app.add_flag("--paper-defaults", opt.reference_defaults, "Use the built-in reference geometry");
  app.add_option("--out-dir", opt.out_dir, "Directory for emitted files")->capture_default_str();
  app.add_option("--theta-max", opt.theta_max, "Half-width of the detection region (rad)");
  app.add_option("--format", opt.format, "Profile format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--model", opt.model, "Wire footprint model for the ledgers")
      ->check(CLI::IsMember({"strip", "chord"}))
      ->capture_default_str();

  auto* single = app.add_subcommand("single-beam", "Single-beam ledger and grating profile");
  auto* two = app.add_subcommand("two-beam", "Two-beam ledger and slit-grid profile");
  auto* comp = app.add_subcommand("complementarity", "Photon budget, visibility bound and duality sum");
  auto* ver = app.add_subcommand("verify", "Compare against the reference table");
  auto* fmap = app.add_subcommand("fringe-map", "Dark-fringe positions across the beam");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << " (kernels: " << kernels::to_string(kernels::active()) << ")\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (single->parsed()) return single_beam(opt, out);
    if (two->parsed()) return two_beam(opt, out);
    if (comp->parsed()) return complementarity(opt, out, err);
    if (ver->parsed()) return verify_command(opt, out);
    if (fmap->parsed()) return fringes(opt, out);
  } catch (const ValidationError& e) {
    print_diagnostics(e, err);
    return kExitConfigError;
  } catch (const ScenarioError& e) {
    err << "error: scenario: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitConfigError;
}

}  // namespace wiregrid::cli
