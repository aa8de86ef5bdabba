#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hetnet/hetnet_model.hpp"

namespace hetnet {

/// Aggregate of one metric over K realizations.
struct McSummary {
  std::string metric;
  std::size_t count = 0;
  double mean = 0.0;
  /// Sample standard deviation; NaN when count < 2.
  double std_dev = 0.0;
  double std_error = 0.0;
  /// 99% normal-approximation interval around the mean.
  double ci_low = 0.0;
  double ci_high = 0.0;

  bool has_spread() const { return count >= 2; }
};

/// Neumaier-compensated summary statistics of `values`.
McSummary summarize(std::string metric, std::span<const double> values);

/// count(points in window) / area.
double empirical_intensity(const PointSet& points, const Window& window);

/// Metric names understood by monte_carlo:
///   tier1_intensity .. tier4_intensity, total_intensity,
///   vertex_intensity, edge_length_density, mean_perimeter,
///   uncovered_fraction, covered_fraction,
///   tier1_strongest_fraction .. tier4_strongest_fraction,
///   tier1_covered_fraction .. tier4_covered_fraction, total_power.
const std::vector<std::string>& known_metrics();

/// Evaluates `metrics` on one realization. Coverage metrics build the RSS grid
/// of the scenario once; geometric metrics need a tessellation. Throws
/// ParameterError for unknown metric names.
std::vector<double> evaluate_metrics(const NetworkRealization& realization,
                                     std::span<const std::string> metrics);

struct MonteCarloOptions {
  /// Worker threads; 0 means default_thread_count().
  unsigned threads = 0;
};

/// Number of workers from HETNET_THREADS, else hardware concurrency.
unsigned default_thread_count();

/// Runs K realizations with seeds derive_seed(scenario.seed, k) and summarizes
/// each metric. Results do not depend on the number of threads.
std::vector<McSummary> monte_carlo(const ScenarioConfig& scenario, std::size_t realizations,
                                   std::span<const std::string> metrics,
                                   MonteCarloOptions options = {});
McSummary monte_carlo(const ScenarioConfig& scenario, std::size_t realizations,
                      const std::string& metric, MonteCarloOptions options = {});

/// Per-realization metric values, row k = realization k.
std::vector<std::vector<double>> monte_carlo_samples(const ScenarioConfig& scenario,
                                                     std::size_t realizations,
                                                     std::span<const std::string> metrics,
                                                     MonteCarloOptions options = {});

}  // namespace hetnet
