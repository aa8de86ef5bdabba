#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hetnet/errors.hpp"
#include "hetnet/statistics.hpp"

using namespace hetnet;

TEST_CASE("summarize computes mean, spread and a 99 percent interval") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const McSummary s = summarize("x", xs);
  CHECK(s.metric == "x");
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.std_dev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.ci_low == doctest::Approx(2.5 - 2.5758293035489004 * s.std_error));
  CHECK(s.ci_high == doctest::Approx(2.5 + 2.5758293035489004 * s.std_error));
  CHECK(s.ci_low <= s.mean);
  CHECK(s.mean <= s.ci_high);
}

TEST_CASE("a single sample has no spread") {
  const std::vector<double> xs{0.7};
  const McSummary s = summarize("x", xs);
  CHECK(s.mean == 0.7);
  CHECK_FALSE(s.has_spread());
  CHECK(std::isnan(s.std_dev));
  CHECK(s.ci_low == doctest::Approx(0.7));
  CHECK(s.ci_high == doctest::Approx(0.7));
}

TEST_CASE("compensated mean survives cancellation") {
  std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  CHECK(summarize("x", xs).mean == 0.5);
}

TEST_CASE("empirical intensity counts points in the window") {
  const Window w = Window::square(20);
  CHECK(empirical_intensity(PointSet{}, w) == 0.0);
  PointSet pts;
  for (int i = 0; i < 80; ++i) pts.points.push_back({0.2 * i + 0.1, 3.0});
  pts.points.push_back({25.0, 3.0});
  CHECK(empirical_intensity(pts, w) == doctest::Approx(0.2));
}

TEST_CASE("unknown metric names are rejected") {
  CHECK_THROWS_AS(monte_carlo(make_preset("fig1"), 2, "tier5_intensity"), ParameterError);
}

TEST_CASE("every known metric evaluates") {
  ScenarioConfig quick = make_preset("fig1");
  quick.grid_nx = quick.grid_ny = 50;
  const NetworkRealization rq = build_realization(quick, 3);
  const auto values = evaluate_metrics(rq, known_metrics());
  REQUIRE(values.size() == known_metrics().size());
  for (double v : values) CHECK(std::isfinite(v));
}

TEST_CASE("tier-2 intensity of the fig1 preset") {
  const McSummary s = monte_carlo(make_preset("fig1"), 200, "tier2_intensity");
  CHECK(s.count == 200);
  CHECK(std::fabs(s.mean - 2.0 * std::sqrt(0.2)) < 3.0 * s.std_error);
}

TEST_CASE("total intensity of the fig1 preset is about 2.49") {
  const ScenarioConfig s = make_preset("fig1");
  const McSummary m = monte_carlo(s, 200, "total_intensity");
  CHECK(std::fabs(m.mean - theoretical_total_density(s)) < 3.0 * m.std_error);
  CHECK(m.mean == doctest::Approx(2.49).epsilon(0.02));
}

TEST_CASE("mean perimeter for unit intensity is about 4") {
  ScenarioConfig s;
  s.tier1.intensity = 1.0;
  const McSummary m = monte_carlo(s, 100, "mean_perimeter");
  CHECK(std::fabs(m.mean / 4.0 - 1.0) < 0.02);
}

TEST_CASE("standard error scales as one over root K") {
  const ScenarioConfig s = make_preset("fig2");
  const double se50 = monte_carlo(s, 50, "tier1_intensity").std_error;
  const double se200 = monte_carlo(s, 200, "tier1_intensity").std_error;
  const double se800 = monte_carlo(s, 800, "tier1_intensity").std_error;
  CHECK(se50 / se200 == doctest::Approx(2.0).epsilon(0.25));
  CHECK(se200 / se800 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("results do not depend on the number of threads") {
  ScenarioConfig s = make_preset("fig1");
  s.grid_nx = s.grid_ny = 60;
  const std::vector<std::string> metrics{"tier2_intensity", "uncovered_fraction", "total_power"};
  const auto serial = monte_carlo(s, 40, metrics, {1});
  const auto parallel = monte_carlo(s, 40, metrics, {4});
  const auto again = monte_carlo(s, 40, metrics, {3});
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    CHECK(serial[i].mean == parallel[i].mean);
    CHECK(serial[i].std_dev == parallel[i].std_dev);
    CHECK(serial[i].mean == again[i].mean);
  }
  const auto rows = monte_carlo_samples(s, 5, metrics, {2});
  REQUIRE(rows.size() == 5);
  const auto direct = evaluate_metrics(build_realization(s, derive_seed(s.seed, 3)), metrics);
  CHECK(rows[3] == direct);
}

TEST_CASE("worker exceptions reach the caller") {
  ScenarioConfig s;
  s.tier1.intensity = 1e-9;
  s.buffer_margin = 0.0;
  s.tier3.retain_prob = 1.0;
  CHECK_THROWS_AS(monte_carlo(s, 8, "tier3_intensity", {2}), DegenerateScenarioError);
}
