#include "hetnet/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "hetnet/coverage.hpp"
#include "hetnet/errors.hpp"

namespace hetnet {
namespace {

constexpr double kZ99 = 2.5758293035489004;

class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

int tier_suffix(const std::string& metric, const std::string& prefix, const std::string& suffix) {
  if (metric.size() != prefix.size() + 1 + suffix.size()) return 0;
  if (metric.compare(0, prefix.size(), prefix) != 0) return 0;
  if (metric.compare(prefix.size() + 1, suffix.size(), suffix) != 0) return 0;
  const char c = metric[prefix.size()];
  return (c >= '1' && c <= '4') ? c - '0' : 0;
}

bool is_coverage_metric(const std::string& m) {
  return m == "uncovered_fraction" || m == "covered_fraction" ||
         m.find("_strongest_fraction") != std::string::npos ||
         (m.find("_covered_fraction") != std::string::npos && m != "covered_fraction");
}

const Tessellation& require_tessellation(const NetworkRealization& real, const std::string& m) {
  if (!real.tessellation) {
    throw DegenerateScenarioError("metric " + m + " needs a tier-1 tessellation");
  }
  return *real.tessellation;
}

}  // namespace

McSummary summarize(std::string metric, std::span<const double> values) {
  McSummary s;
  s.metric = std::move(metric);
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.std_dev = s.std_error = s.ci_low = s.ci_high =
        std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  s.mean = sum.value() / static_cast<double>(values.size());
  if (values.size() < 2) {
    s.std_dev = s.std_error = std::numeric_limits<double>::quiet_NaN();
    s.ci_low = s.ci_high = s.mean;
    return s;
  }
  CompensatedSum squares;
  for (double v : values) squares.add((v - s.mean) * (v - s.mean));
  s.std_dev = std::sqrt(squares.value() / static_cast<double>(values.size() - 1));
  s.std_error = s.std_dev / std::sqrt(static_cast<double>(values.size()));
  s.ci_low = s.mean - kZ99 * s.std_error;
  s.ci_high = s.mean + kZ99 * s.std_error;
  return s;
}

double empirical_intensity(const PointSet& points, const Window& window) {
  std::size_t count = 0;
  for (const Point& p : points.points) {
    if (window.contains(p)) ++count;
  }
  return static_cast<double>(count) / window.area();
}

const std::vector<std::string>& known_metrics() {
  static const std::vector<std::string> names{
      "tier1_intensity",          "tier2_intensity",          "tier3_intensity",
      "tier4_intensity",          "total_intensity",          "vertex_intensity",
      "edge_length_density",      "mean_perimeter",           "uncovered_fraction",
      "covered_fraction",         "tier1_strongest_fraction", "tier2_strongest_fraction",
      "tier3_strongest_fraction", "tier4_strongest_fraction", "tier1_covered_fraction",
      "tier2_covered_fraction",   "tier3_covered_fraction",   "tier4_covered_fraction",
      "total_power"};
  return names;
}

std::vector<double> evaluate_metrics(const NetworkRealization& real,
                                     std::span<const std::string> metrics) {
  for (const std::string& m : metrics) {
    if (std::find(known_metrics().begin(), known_metrics().end(), m) == known_metrics().end()) {
      throw ParameterError("unknown metric '" + m + "'");
    }
  }
  const Window& window = real.scenario.window;
  std::optional<CoverageReport> coverage;
  if (std::any_of(metrics.begin(), metrics.end(), is_coverage_metric)) {
    const RssGrid grid = compute_rss_grid(real, real.scenario.grid(), real.scenario.path_loss);
    coverage = coverage_report(grid, real.scenario.threshold_db, real);
  }

  std::vector<double> values;
  values.reserve(metrics.size());
  for (const std::string& m : metrics) {
    double v = 0.0;
    if (int t = tier_suffix(m, "tier", "_intensity")) {
      v = empirical_intensity(real.tier(t).points, window);
    } else if (m == "total_intensity") {
      for (const TierLayer& layer : real.tiers) v += empirical_intensity(layer.points, window);
    } else if (m == "vertex_intensity") {
      v = empirical_intensity(interior_vertices(require_tessellation(real, m), window), window);
    } else if (m == "edge_length_density") {
      v = edge_length_density(require_tessellation(real, m), window);
    } else if (m == "mean_perimeter") {
      v = mean_cell_perimeter(require_tessellation(real, m), window);
    } else if (m == "uncovered_fraction") {
      v = coverage->uncovered_fraction;
    } else if (m == "covered_fraction") {
      v = coverage->covered_total();
    } else if (int s = tier_suffix(m, "tier", "_strongest_fraction")) {
      v = coverage->strongest_fraction[static_cast<std::size_t>(s - 1)];
    } else if (int c = tier_suffix(m, "tier", "_covered_fraction")) {
      v = coverage->covered_fraction[static_cast<std::size_t>(c - 1)];
    } else if (m == "total_power") {
      v = realized_total_power(real);
    }
    values.push_back(v);
  }
  return values;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("HETNET_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<double>> monte_carlo_samples(const ScenarioConfig& scenario,
                                                     std::size_t realizations,
                                                     std::span<const std::string> metrics,
                                                     MonteCarloOptions options) {
  if (realizations < 1) throw ParameterError("realization count must be at least 1");
  scenario.validate();
  for (const std::string& m : metrics) {
    if (std::find(known_metrics().begin(), known_metrics().end(), m) == known_metrics().end()) {
      throw ParameterError("unknown metric '" + m + "'");
    }
  }
  std::vector<std::vector<double>> rows(realizations);
  const unsigned threads = std::min<std::size_t>(
      options.threads == 0 ? default_thread_count() : options.threads, realizations);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= realizations) return;
      try {
        const auto real = build_realization(scenario, derive_seed(scenario.seed, k));
        rows[k] = evaluate_metrics(real, metrics);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = realizations;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<McSummary> monte_carlo(const ScenarioConfig& scenario, std::size_t realizations,
                                   std::span<const std::string> metrics,
                                   MonteCarloOptions options) {
  const auto rows = monte_carlo_samples(scenario, realizations, metrics, options);
  std::vector<McSummary> out;
  std::vector<double> column(realizations);
  for (std::size_t j = 0; j < metrics.size(); ++j) {
    for (std::size_t k = 0; k < realizations; ++k) column[k] = rows[k][j];
    out.push_back(summarize(metrics[j], column));
  }
  return out;
}

McSummary monte_carlo(const ScenarioConfig& scenario, std::size_t realizations,
                      const std::string& metric, MonteCarloOptions options) {
  const std::string metrics[] = {metric};
  return monte_carlo(scenario, realizations, std::span<const std::string>(metrics), options)
      .front();
}

}  // namespace hetnet
