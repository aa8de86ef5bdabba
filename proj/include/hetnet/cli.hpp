#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hetnet/hetnet_model.hpp"

namespace hetnet::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kValidationFailed = 1, kConfigError = 2, kIoError = 3 };

/// Scenario selection shared by the subcommands: exactly one of config_path
/// and preset, followed by optional overrides.
struct ScenarioSource {
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<int, int>> grid;
  std::optional<double> alpha;
  std::optional<double> threshold_db;
};

/// Loads or builds the scenario and applies overrides. Throws ConfigError.
ScenarioConfig resolve_scenario(const ScenarioSource& source);

/// Parses "NXxNY", e.g. "500x500". Throws ConfigError.
std::pair<int, int> parse_grid(const std::string& text);

struct OutputFile {
  std::string name;
  std::uintmax_t bytes = 0;
  std::string sha256;
};

struct RunManifest {
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::size_t realizations = 0;
  std::string version = kVersion;
  std::vector<OutputFile> outputs;

  nlohmann::json to_json() const;
};

struct SimulateOptions {
  ScenarioSource source;
  std::filesystem::path out_dir;
  std::size_t realizations = 1;
  bool dump_tessellation = false;
  unsigned threads = 0;
};

/// Writes points.csv, rss.csv, association.csv, coverage.pgm and summary.json
/// for realization 0 (plus mc_summary.csv when realizations > 1 and
/// tessellation.csv on request), then manifest.json listing their SHA-256.
/// Throws ConfigError or IoError.
RunManifest cmd_simulate(const SimulateOptions& options);

struct ValidateOptions {
  ScenarioSource source;
  std::size_t realizations = 200;
  unsigned threads = 0;
};

/// Minimum realization count accepted for intensity checks.
inline constexpr std::size_t kMinValidationRealizations = 50;

/// One line of the validation report.
struct ValidationCheck {
  std::string metric;
  double expected = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  /// "3sigma" or "rel2%".
  std::string rule;
  bool pass = false;
};

/// Runs the intensity suite: per-tier intensities against
/// (lambda, 2 mu sqrt(lambda), 2 p lambda, nu) at 3 standard errors, vertex
/// intensity against 2 lambda, and for a PPP macro tier also edge length
/// density against 2 sqrt(lambda) (3 standard errors) and mean cell perimeter
/// against 4 / sqrt(lambda) (2% relative). Throws ParameterError for fewer than
/// kMinValidationRealizations realizations.
std::vector<ValidationCheck> run_validation(const ValidateOptions& options);

/// Prints one line per check and returns kSuccess iff every check passes.
int cmd_validate(const ValidateOptions& options, std::ostream& out);

/// Pretty-printed scenario JSON of a preset. Throws ParameterError listing the
/// valid names for an unknown one.
std::string cmd_preset(const std::string& name);

/// Full command-line entry point (subcommands simulate, validate, preset).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hetnet::cli
