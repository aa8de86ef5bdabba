#include "hetnet/point_processes.hpp"

#include <cmath>
#include <numbers>

#include "hetnet/errors.hpp"

namespace hetnet {

void MaternClusterParams::validate() const {
  if (!(parent_intensity >= 0.0) || !std::isfinite(parent_intensity)) {
    throw ParameterError("cluster parent intensity must be finite and non-negative");
  }
  if (!(mean_points_per_cluster >= 0.0) || !std::isfinite(mean_points_per_cluster)) {
    throw ParameterError("mean points per cluster must be finite and non-negative");
  }
  if (!(cluster_radius > 0.0) || !std::isfinite(cluster_radius)) {
    throw ParameterError("cluster radius must be positive");
  }
}

PointSet sample_homogeneous_ppp(const Window& window, double intensity, RandomStream& stream,
                                int tier) {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw ParameterError("PPP intensity must be finite and non-negative");
  }
  PointSet out;
  out.tier = tier;
  const auto count = stream.poisson(intensity * window.area());
  out.points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double x = stream.uniform(window.x_min(), window.x_max());
    const double y = stream.uniform(window.y_min(), window.y_max());
    out.points.push_back({x, y});
  }
  return out;
}

PointSet thin(const PointSet& points, double retain_prob, RandomStream& stream) {
  if (!(retain_prob >= 0.0 && retain_prob <= 1.0)) {
    throw ParameterError("retain probability must lie in [0, 1]");
  }
  if (retain_prob == 1.0) return points;
  PointSet out;
  out.tier = points.tier;
  if (retain_prob == 0.0) return out;
  for (const Point& p : points.points) {
    if (stream.bernoulli(retain_prob)) out.points.push_back(p);
  }
  return out;
}

double triangular_lattice_spacing(double density) {
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw ParameterError("lattice density must be positive");
  }
  return std::sqrt(2.0 / (std::numbers::sqrt3 * density));
}

PointSet sample_perturbed_triangular_lattice(const Window& window, double density,
                                             LatticePerturbation perturbation,
                                             RandomStream& stream, int tier) {
  const double a = triangular_lattice_spacing(density);
  if (!(perturbation.variance >= 0.0) || !std::isfinite(perturbation.variance)) {
    throw ParameterError("lattice perturbation variance must be non-negative");
  }
  const double sigma = std::sqrt(perturbation.variance);
  const double row_height = a * std::numbers::sqrt3 / 2.0;

  // Uniform point of the fundamental parallelogram spanned by (a,0), (a/2,h).
  const double s = stream.uniform();
  const double t = stream.uniform();
  const double ox = s * a + t * 0.5 * a;
  const double oy = t * row_height;

  // Gaussian tails beyond 10 sigma are below 1e-23; ignoring them is exact in practice.
  const double margin = a + 10.0 * sigma;
  const auto j_lo = static_cast<long>(std::floor((window.y_min() - margin - oy) / row_height));
  const auto j_hi = static_cast<long>(std::ceil((window.y_max() + margin - oy) / row_height));

  PointSet out;
  out.tier = tier;
  for (long j = j_lo; j <= j_hi; ++j) {
    const double row_x = ox + 0.5 * a * static_cast<double>(j);
    const double y0 = oy + row_height * static_cast<double>(j);
    const auto i_lo = static_cast<long>(std::floor((window.x_min() - margin - row_x) / a));
    const auto i_hi = static_cast<long>(std::ceil((window.x_max() + margin - row_x) / a));
    for (long i = i_lo; i <= i_hi; ++i) {
      Point p{row_x + a * static_cast<double>(i), y0};
      if (sigma > 0.0) {
        p.x += sigma * stream.normal();
        p.y += sigma * stream.normal();
      }
      if (window.contains(p)) out.points.push_back(p);
    }
  }
  return out;
}

ClusterRealization sample_matern_cluster(const Window& window, const MaternClusterParams& params,
                                         RandomStream& stream, int tier) {
  params.validate();
  const double r = params.cluster_radius;
  ClusterRealization out;
  out.parents = sample_homogeneous_ppp(window.expanded(r), params.parent_intensity, stream, tier);
  out.daughters.tier = tier;
  for (const Point& parent : out.parents.points) {
    const auto count = stream.poisson(params.mean_points_per_cluster);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double rho = r * std::sqrt(stream.uniform());
      const double phi = 2.0 * std::numbers::pi * stream.uniform();
      const Point d{parent.x + rho * std::cos(phi), parent.y + rho * std::sin(phi)};
      if (window.contains(d)) out.daughters.points.push_back(d);
    }
  }
  return out;
}

double cox_intensity_at(Point x, const PointSet& parents, const MaternClusterParams& params) {
  const double r2 = params.cluster_radius * params.cluster_radius;
  const double per_parent = params.mean_points_per_cluster / (std::numbers::pi * r2);
  double total = 0.0;
  for (const Point& y : parents.points) {
    if (squared_distance(x, y) < r2) total += per_parent;
  }
  return total;
}

}  // namespace hetnet
