#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "hetnet/errors.hpp"
#include "hetnet/point_processes.hpp"
#include "hetnet/statistics.hpp"

using namespace hetnet;

namespace {

struct Sample {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
};

Sample describe(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double n = static_cast<double>(xs.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / (n - 1.0);
  return {mean, var, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("zero-intensity PPP is empty") {
  RandomStream s(1, "t");
  CHECK(sample_homogeneous_ppp(Window::square(20), 0.0, s).empty());
}

TEST_CASE("negative PPP intensity is a parameter error") {
  RandomStream s(1, "t");
  CHECK_THROWS_AS(sample_homogeneous_ppp(Window::square(1), -0.1, s), ParameterError);
}

TEST_CASE("PPP points fall inside the window") {
  const Window w(-3.0, 5.0, 2.0, 4.0);
  RandomStream s(5, "t");
  const PointSet pts = sample_homogeneous_ppp(w, 20.0, s, 4);
  CHECK(pts.tier == 4);
  CHECK(pts.size() > 0);
  for (const Point& p : pts) CHECK(w.contains(p));
}

TEST_CASE("PPP mean count is intensity times area") {
  const Window w = Window::square(20);
  std::vector<double> counts;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    RandomStream s(seed, "tier1");
    counts.push_back(static_cast<double>(sample_homogeneous_ppp(w, 0.2, s).size()));
  }
  const Sample c = describe(counts);
  CHECK(c.std_error < 0.1);
  CHECK(std::fabs(c.mean - 80.0) < 3.0 * c.std_error);
}

TEST_CASE("PPP counts on the unit square are equidispersed") {
  std::vector<double> counts;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    RandomStream s(seed, "tier1");
    counts.push_back(static_cast<double>(sample_homogeneous_ppp(Window(), 1.0, s).size()));
  }
  const Sample c = describe(counts);
  // For Poisson(1), Var(s^2) ~ (mu4 - 1) / n = 3 / n.
  CHECK(std::fabs(c.variance - 1.0) < 4.0 * std::sqrt(3.0 / 10000.0));
}

TEST_CASE("PPP counts in disjoint halves are uncorrelated Poisson variables") {
  const Window w = Window::square(20);
  const Window left(0, 10, 0, 20), right(10, 20, 0, 20);
  const int runs = 2000;
  const double mean = 0.2 * left.area();
  std::vector<double> a, b;
  for (int k = 0; k < runs; ++k) {
    RandomStream s(static_cast<std::uint64_t>(k), "halves");
    const PointSet pts = sample_homogeneous_ppp(w, 0.2, s);
    a.push_back(std::round(empirical_intensity(pts, left) * left.area()));
    b.push_back(std::round(empirical_intensity(pts, right) * right.area()));
  }
  const Sample sa = describe(a), sb = describe(b);
  double cov = 0.0;
  for (int k = 0; k < runs; ++k) cov += (a[k] - sa.mean) * (b[k] - sb.mean);
  cov /= runs - 1;
  const double corr = cov / std::sqrt(sa.variance * sb.variance);
  CHECK(std::fabs(corr) < 3.0 / std::sqrt(runs));

  // Chi-square goodness of fit of the left-half counts against Poisson(40),
  // bins merged so that every expected frequency is at least 5.
  const boost::math::poisson_distribution<> poisson(mean);
  std::vector<std::pair<int, int>> bins;  // [lo, hi] inclusive
  int lo = 0;
  for (int k = 0; k < 200; ++k) {
    const double p = boost::math::cdf(poisson, k) - (lo > 0 ? boost::math::cdf(poisson, lo - 1) : 0.0);
    const double tail = 1.0 - boost::math::cdf(poisson, k);
    if (p * runs >= 5.0 && tail * runs >= 5.0) {
      bins.push_back({lo, k});
      lo = k + 1;
    } else if (tail * runs < 5.0) {
      bins.push_back({lo, 100000});
      break;
    }
  }
  double chi2 = 0.0;
  for (const auto& [blo, bhi] : bins) {
    const double p = (bhi >= 100000 ? 1.0 : boost::math::cdf(poisson, bhi)) -
                     (blo > 0 ? boost::math::cdf(poisson, blo - 1) : 0.0);
    const double observed = static_cast<double>(std::count_if(
        a.begin(), a.end(), [&](double c) { return c >= blo && c <= bhi; }));
    const double expected = p * runs;
    chi2 += (observed - expected) * (observed - expected) / expected;
  }
  const boost::math::chi_squared_distribution<> dist(static_cast<double>(bins.size() - 1));
  CHECK(chi2 < boost::math::quantile(dist, 0.99));
}

TEST_CASE("thinning with p = 1 returns the input unchanged") {
  RandomStream s(2, "pts");
  const PointSet pts = sample_homogeneous_ppp(Window::square(10), 1.0, s, 3);
  RandomStream t(2, "thin");
  CHECK(thin(pts, 1.0, t) == pts);
}

TEST_CASE("thinning with p = 0 empties the set") {
  RandomStream s(2, "pts");
  const PointSet pts = sample_homogeneous_ppp(Window::square(10), 1.0, s, 3);
  RandomStream t(2, "thin");
  const PointSet out = thin(pts, 0.0, t);
  CHECK(out.empty());
  CHECK(out.tier == 3);
}

TEST_CASE("thinning rejects probabilities outside [0, 1]") {
  RandomStream t(2, "thin");
  CHECK_THROWS_AS(thin(PointSet{}, -0.01, t), ParameterError);
  CHECK_THROWS_AS(thin(PointSet{}, 1.01, t), ParameterError);
}

TEST_CASE("thinning keeps a binomial number of points") {
  PointSet pts;
  for (int i = 0; i < 100000; ++i) pts.points.push_back({static_cast<double>(i), 0.0});
  RandomStream t(9, "thin");
  const double kept = static_cast<double>(thin(pts, 0.3, t).size());
  const double sigma = std::sqrt(1e5 * 0.3 * 0.7);
  CHECK(std::fabs(kept - 3e4) < 3.0 * sigma);
}

TEST_CASE("thinning commutes with restriction in distribution") {
  const Window w = Window::square(20);
  const Window sub(5, 12, 3, 9);
  std::vector<double> thin_then_clip, clip_then_thin;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    RandomStream s(k, "pts");
    const PointSet pts = sample_homogeneous_ppp(w, 0.5, s);
    RandomStream t1(k, "a"), t2(k, "b");
    thin_then_clip.push_back(static_cast<double>(restrict_to(thin(pts, 0.4, t1), sub).size()));
    clip_then_thin.push_back(static_cast<double>(thin(restrict_to(pts, sub), 0.4, t2).size()));
  }
  const Sample a = describe(thin_then_clip), b = describe(clip_then_thin);
  CHECK(std::fabs(a.mean - b.mean) < 3.0 * std::hypot(a.std_error, b.std_error));
  CHECK(std::fabs(a.mean - 0.2 * sub.area()) < 3.0 * a.std_error);
}

TEST_CASE("lattice spacing matches density") {
  const double a = triangular_lattice_spacing(0.1);
  CHECK(a * a * std::numbers::sqrt3 / 2.0 == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_THROWS_AS(triangular_lattice_spacing(0.0), ParameterError);
  RandomStream s(1, "lat");
  CHECK_THROWS_AS(sample_perturbed_triangular_lattice(Window::square(5), -1.0, {}, s),
                  ParameterError);
}

TEST_CASE("unperturbed lattice reproduces exact lattice coordinates") {
  const double density = 0.1;
  const double a = triangular_lattice_spacing(density);
  const double h = a * std::numbers::sqrt3 / 2.0;
  RandomStream s(4, "lat");
  const PointSet pts =
      sample_perturbed_triangular_lattice(Window::square(20), density, {0.0}, s);
  REQUIRE(pts.size() > 10);

  double min_nn = 1e300;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      min_nn = std::min(min_nn, distance(pts.points[i], pts.points[j]));
    }
  }
  CHECK(min_nn == doctest::Approx(a).epsilon(1e-9));

  // Every difference vector is an integer combination of (a, 0) and (a/2, h).
  const Point origin = pts.points.front();
  for (const Point& p : pts) {
    const double j = (p.y - origin.y) / h;
    const double i = (p.x - origin.x - 0.5 * a * j) / a;
    CHECK(std::fabs(j - std::round(j)) < 1e-9);
    CHECK(std::fabs(i - std::round(i)) < 1e-9);
  }
}

TEST_CASE("lattice has the requested intensity") {
  const Window w = Window::square(20);
  for (double variance : {0.0, 0.04}) {
    CAPTURE(variance);
    std::vector<double> intensity;
    for (std::uint64_t k = 0; k < 2000; ++k) {
      RandomStream s(k, "lat");
      intensity.push_back(
          empirical_intensity(sample_perturbed_triangular_lattice(w, 0.1, {variance}, s), w));
    }
    const Sample c = describe(intensity);
    CHECK(std::fabs(c.mean - 0.1) < 3.0 * c.std_error);
    CHECK(std::fabs(c.mean * w.area() - 40.0) < 3.0 * c.std_error * w.area());
  }
}

TEST_CASE("matern cluster with M = 0 has no daughters") {
  RandomStream s(1, "tier4");
  const auto c = sample_matern_cluster(Window::square(20), {0.05, 0.0, 1.0}, s);
  CHECK(c.daughters.empty());
  CHECK(c.daughters.tier == 4);
}

TEST_CASE("matern cluster rejects invalid parameters") {
  RandomStream s(1, "tier4");
  CHECK_THROWS_AS(sample_matern_cluster(Window::square(20), {0.05, 10.0, 0.0}, s),
                  ParameterError);
  CHECK_THROWS_AS(sample_matern_cluster(Window::square(20), {-0.05, 10.0, 1.0}, s),
                  ParameterError);
}

TEST_CASE("matern daughter intensity is M times parent intensity") {
  const Window w = Window::square(20);
  const MaternClusterParams params{1.0 / 20.0, 10.0, 1.0};
  CHECK(params.intensity() == doctest::Approx(0.5));
  std::vector<double> counts;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    RandomStream s(k, "tier4");
    const auto c = sample_matern_cluster(w, params, s);
    for (const Point& p : c.daughters) REQUIRE(w.contains(p));
    for (const Point& p : c.parents) REQUIRE(w.expanded(1.0).contains(p));
    counts.push_back(static_cast<double>(c.daughters.size()));
  }
  const Sample c = describe(counts);
  CHECK(std::fabs(c.mean - 200.0) < 3.0 * c.std_error);
}

TEST_CASE("cox intensity evaluates the cluster kernel sum") {
  const MaternClusterParams params{0.05, 10.0, 1.0};
  CHECK(cox_intensity_at({0, 0}, PointSet{}, params) == 0.0);
  PointSet one{{{0.0, 0.0}}, 4};
  CHECK(cox_intensity_at({0, 0}, one, params) == doctest::Approx(10.0 / std::numbers::pi));
  PointSet two{{{0.3, 0.0}, {-0.2, 0.4}}, 4};
  CHECK(cox_intensity_at({0, 0}, two, params) == doctest::Approx(20.0 / std::numbers::pi));
  PointSet on_rim{{{1.0, 0.0}}, 4};
  CHECK(cox_intensity_at({0, 0}, on_rim, params) == 0.0);
}

TEST_CASE("cluster counts in test disks match the integrated cox intensity") {
  // Given the parents, daughters form a Poisson process with intensity
  // lambda_Psi, so the count in a disk D is Poisson with mean the integral of
  // lambda_Psi over D. Integral by midpoint quadrature.
  const Window w = Window::square(20);
  const MaternClusterParams params{1.0 / 20.0, 10.0, 1.0};
  const double test_radius = 1.5;
  double observed = 0.0;
  double expected = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    RandomStream s(k, "tier4");
    RandomStream place(k, "disk");
    const auto c = sample_matern_cluster(w, params, s);
    const Point centre{place.uniform(test_radius, 20 - test_radius),
                       place.uniform(test_radius, 20 - test_radius)};
    for (const Point& p : c.daughters) observed += distance(p, centre) < test_radius;
    const int n = 300;
    const double step = 2.0 * test_radius / n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Point x{centre.x - test_radius + (i + 0.5) * step,
                      centre.y - test_radius + (j + 0.5) * step};
        if (distance(x, centre) < test_radius) {
          expected += cox_intensity_at(x, c.parents, params) * step * step;
        }
      }
    }
  }
  REQUIRE(expected > 50.0);
  CHECK(std::fabs(observed - expected) < 3.0 * std::sqrt(expected));
}

TEST_CASE("samplers are deterministic per (seed, label)") {
  const Window w = Window::square(20);
  RandomStream a(77, "tier1"), b(77, "tier1");
  CHECK(sample_homogeneous_ppp(w, 0.3, a) == sample_homogeneous_ppp(w, 0.3, b));
  RandomStream c(77, "lat"), d(77, "lat");
  CHECK(sample_perturbed_triangular_lattice(w, 0.1, {0.04}, c) ==
        sample_perturbed_triangular_lattice(w, 0.1, {0.04}, d));
  RandomStream e(77, "tier4"), f(77, "tier4");
  CHECK(sample_matern_cluster(w, {0.05, 10, 1}, e).daughters ==
        sample_matern_cluster(w, {0.05, 10, 1}, f).daughters);
}
