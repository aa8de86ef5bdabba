#include "hetnet/cli.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hetnet/coverage.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/output_files.hpp"
#include "hetnet/scenario_io.hpp"
#include "hetnet/statistics.hpp"

namespace hetnet::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot reopen " + path.string() + " for checksumming");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    EVP_DigestUpdate(ctx, buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

json summary_to_json(const McSummary& s) {
  auto number = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"metric", s.metric},         {"count", s.count},
          {"mean", number(s.mean)},     {"std_dev", number(s.std_dev)},
          {"std_error", number(s.std_error)}, {"ci99_low", number(s.ci_low)},
          {"ci99_high", number(s.ci_high)}};
}

std::vector<std::string> simulation_metrics(const ScenarioConfig& scenario) {
  std::vector<std::string> metrics{"tier1_intensity",          "tier2_intensity",
                                   "tier3_intensity",          "tier4_intensity",
                                   "total_intensity",          "uncovered_fraction",
                                   "tier1_strongest_fraction", "tier2_strongest_fraction",
                                   "tier3_strongest_fraction", "tier4_strongest_fraction",
                                   "total_power"};
  if (scenario.tier1.intensity > 0.0) {
    metrics.insert(metrics.end(), {"vertex_intensity", "edge_length_density"});
  }
  return metrics;
}

}  // namespace

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument("missing x");
    std::size_t used_nx = 0, used_ny = 0;
    const int nx = std::stoi(text.substr(0, x), &used_nx);
    const int ny = std::stoi(text.substr(x + 1), &used_ny);
    if (used_nx != x || used_ny != text.size() - x - 1) throw std::invalid_argument("trailing");
    return {nx, ny};
  } catch (const std::exception&) {
    throw ConfigError("--grid", "expected NXxNY, e.g. 500x500, got '" + text + "'");
  }
}

ScenarioConfig resolve_scenario(const ScenarioSource& source) {
  if (source.config_path.has_value() == source.preset.has_value()) {
    throw ConfigError("--config/--preset", "exactly one of --config and --preset is required");
  }
  ScenarioConfig scenario;
  if (source.preset) {
    try {
      scenario = make_preset(*source.preset);
    } catch (const ParameterError& e) {
      throw ConfigError("--preset", e.what());
    }
  } else {
    scenario = load_scenario(*source.config_path);
  }
  if (source.seed) scenario.seed = *source.seed;
  if (source.grid) {
    scenario.grid_nx = source.grid->first;
    scenario.grid_ny = source.grid->second;
  }
  if (source.alpha) scenario.path_loss.exponent = *source.alpha;
  if (source.threshold_db) scenario.threshold_db = *source.threshold_db;
  scenario.validate();
  return scenario;
}

json RunManifest::to_json() const {
  json files = json::array();
  for (const OutputFile& f : outputs) {
    files.push_back({{"name", f.name}, {"bytes", f.bytes}, {"sha256", f.sha256}});
  }
  return {{"config", config},
          {"seed", seed},
          {"realizations", realizations},
          {"versions", {{"hetnet", version}}},
          {"outputs", files}};
}

RunManifest cmd_simulate(const SimulateOptions& options) {
  const ScenarioConfig scenario = resolve_scenario(options.source);
  if (options.realizations < 1) throw ConfigError("--realizations", "must be at least 1");

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create " + options.out_dir.string() + ": " + ec.message());

  const NetworkRealization real = build_realization(scenario, derive_seed(scenario.seed, 0));
  const RssGrid grid = compute_rss_grid(real, scenario.grid(), scenario.path_loss);
  const CoverageReport coverage = coverage_report(grid, scenario.threshold_db, real);

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::function<void(std::ostream&)>& body) {
    write_file(options.out_dir / name, body);
    written.push_back(name);
  };

  emit("points.csv", [&](std::ostream& out) { write_points_csv(real, out); });
  emit("rss.csv", [&](std::ostream& out) { write_rss_csv(grid, out); });
  emit("association.csv", [&](std::ostream& out) { write_association_csv(grid, real, out); });
  emit("coverage.pgm",
       [&](std::ostream& out) { write_coverage_pgm(grid, scenario.threshold_db, out); });
  if (options.dump_tessellation && real.tessellation) {
    emit("tessellation.csv",
         [&](std::ostream& out) { write_tessellation_csv(*real.tessellation, out); });
  }

  const auto theory = theoretical_tier_intensities(scenario);
  json empirical = json::array();
  double empirical_total = 0.0;
  for (int t = 1; t <= kTierCount; ++t) {
    const double v = empirical_intensity(real.tier(t).points, scenario.window);
    empirical.push_back(v);
    empirical_total += v;
  }
  json summary{
      {"scenario", scenario.name},
      {"seed", scenario.seed},
      {"realizations", options.realizations},
      {"window_area", scenario.window.area()},
      {"theoretical_intensities", theory},
      {"theoretical_total_density", theoretical_total_density(scenario)},
      {"empirical_intensities", empirical},
      {"empirical_total_density", empirical_total},
      {"expected_power_density_w_per_area", expected_power_density(scenario)},
      {"expected_total_power_w", expected_power_density(scenario) * scenario.window.area()},
      {"realized_total_power_w", coverage.realized_power_w},
      {"coverage",
       {{"threshold_db", coverage.threshold_db},
        {"uncovered_fraction", coverage.uncovered_fraction},
        {"covered_fraction", coverage.covered_fraction},
        {"strongest_fraction", coverage.strongest_fraction}}},
  };

  if (options.realizations > 1) {
    const auto metrics = simulation_metrics(scenario);
    MonteCarloOptions mc;
    mc.threads = options.threads;
    const auto summaries = monte_carlo(scenario, options.realizations, metrics, mc);
    json rows = json::array();
    for (const McSummary& s : summaries) rows.push_back(summary_to_json(s));
    summary["monte_carlo"] = rows;
    emit("mc_summary.csv", [&](std::ostream& out) { write_summary_csv(summaries, out); });
  }
  emit("summary.json", [&](std::ostream& out) { out << summary.dump(2) << '\n'; });

  RunManifest manifest;
  manifest.config = scenario_to_json(scenario);
  manifest.seed = scenario.seed;
  manifest.realizations = options.realizations;
  for (const std::string& name : written) {
    const fs::path path = options.out_dir / name;
    manifest.outputs.push_back({name, fs::file_size(path), sha256_file(path)});
  }
  write_file(options.out_dir / "manifest.json",
             [&](std::ostream& out) { out << manifest.to_json().dump(2) << '\n'; });
  return manifest;
}

std::vector<ValidationCheck> run_validation(const ValidateOptions& options) {
  if (options.realizations < kMinValidationRealizations) {
    throw ParameterError("intensity checks need at least " +
                         std::to_string(kMinValidationRealizations) + " realizations, got " +
                         std::to_string(options.realizations));
  }
  const ScenarioConfig scenario = resolve_scenario(options.source);
  const auto theory = theoretical_tier_intensities(scenario);
  const double lambda = scenario.tier1.intensity;

  std::vector<std::string> metrics{"tier1_intensity", "tier2_intensity", "tier3_intensity",
                                   "tier4_intensity"};
  std::vector<double> expected(theory.begin(), theory.end());
  std::vector<std::string> rules(4, "3sigma");
  if (lambda > 0.0) {
    metrics.push_back("vertex_intensity");
    expected.push_back(2.0 * lambda);
    rules.push_back("3sigma");
    if (scenario.tier1.variant == Tier1Variant::Ppp) {
      metrics.push_back("edge_length_density");
      expected.push_back(2.0 * std::sqrt(lambda));
      rules.push_back("3sigma");
      metrics.push_back("mean_perimeter");
      expected.push_back(4.0 / std::sqrt(lambda));
      rules.push_back("rel2%");
    }
  }

  MonteCarloOptions mc;
  mc.threads = options.threads;
  const auto summaries = monte_carlo(scenario, options.realizations, metrics, mc);

  std::vector<ValidationCheck> checks;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    ValidationCheck c;
    c.metric = metrics[i];
    c.expected = expected[i];
    c.mean = summaries[i].mean;
    c.std_error = summaries[i].std_error;
    c.rule = rules[i];
    const double deviation = std::fabs(c.mean - c.expected);
    if (c.rule == "rel2%") {
      c.pass = deviation <= 0.02 * std::fabs(c.expected);
    } else {
      // A tier with zero theoretical intensity must be empty in every run.
      c.pass = c.std_error > 0.0 ? deviation <= 3.0 * c.std_error : deviation <= 1e-12;
    }
    checks.push_back(c);
  }
  return checks;
}

int cmd_validate(const ValidateOptions& options, std::ostream& out) {
  const auto checks = run_validation(options);
  bool all = true;
  out << std::setprecision(6);
  for (const ValidationCheck& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(20) << c.metric << std::right
        << " mean=" << c.mean << " se=" << c.std_error << " expected=" << c.expected
        << " rule=" << c.rule << " K=" << options.realizations << '\n';
    all = all && c.pass;
  }
  return all ? kSuccess : kValidationFailed;
}

std::string cmd_preset(const std::string& name) {
  return scenario_to_json(make_preset(name)).dump(2) + "\n";
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dependent four-tier heterogeneous cellular network simulator", "hetnet"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  ScenarioSource source;
  std::string config_path, preset_name, grid_text;
  std::uint64_t seed = 0;
  double alpha = 0.0, threshold = 0.0;
  unsigned threads = 0;

  auto add_source_flags = [&](CLI::App* sub) {
    auto* cfg = sub->add_option("--config", config_path, "Scenario JSON file");
    auto* pre = sub->add_option("--preset", preset_name, "Named preset");
    cfg->excludes(pre);
    sub->add_option("--seed", seed, "Base seed");
    sub->add_option("--grid", grid_text, "Raster size NXxNY");
    sub->add_option("--alpha", alpha, "Path loss exponent");
    sub->add_option("--threshold-db", threshold, "Coverage threshold in dB");
    sub->add_option("--threads", threads, "Worker threads (default: HETNET_THREADS or all cores)");
  };

  SimulateOptions sim;
  std::string out_dir;
  auto* simulate = app.add_subcommand("simulate", "Simulate a scenario and write all outputs");
  add_source_flags(simulate);
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--realizations", sim.realizations, "Monte Carlo realizations");
  simulate->add_flag("--dump-tessellation", sim.dump_tessellation, "Write tessellation.csv");

  ValidateOptions val;
  auto* validate = app.add_subcommand("validate", "Check empirical intensities against theory");
  add_source_flags(validate);
  validate->add_option("--realizations", val.realizations, "Monte Carlo realizations");

  std::string preset_arg;
  auto* preset = app.add_subcommand("preset", "Print a preset scenario as JSON");
  preset->add_option("name", preset_arg, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  auto fill_source = [&](CLI::App* sub) {
    if (sub->count("--config")) source.config_path = config_path;
    if (sub->count("--preset")) source.preset = preset_name;
    if (sub->count("--seed")) source.seed = seed;
    if (sub->count("--grid")) source.grid = parse_grid(grid_text);
    if (sub->count("--alpha")) source.alpha = alpha;
    if (sub->count("--threshold-db")) source.threshold_db = threshold;
  };

  try {
    if (*simulate) {
      fill_source(simulate);
      sim.source = source;
      sim.out_dir = out_dir;
      sim.threads = threads;
      const RunManifest manifest = cmd_simulate(sim);
      out << "wrote " << manifest.outputs.size() + 1 << " files to " << out_dir << '\n';
      return kSuccess;
    }
    if (*validate) {
      fill_source(validate);
      val.source = source;
      val.threads = threads;
      return cmd_validate(val, out);
    }
    if (*preset) {
      try {
        out << cmd_preset(preset_arg);
      } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
      }
      return kSuccess;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kSuccess;
}

}  // namespace hetnet::cli
