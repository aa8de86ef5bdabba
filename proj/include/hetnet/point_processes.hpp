#pragma once

#include "hetnet/geometry.hpp"
#include "hetnet/random_stream.hpp"

namespace hetnet {

/// Matérn cluster process: Poisson parents, each with Poisson(M) daughters
/// uniform on the disk of radius r around the parent.
struct MaternClusterParams {
  double parent_intensity = 0.0;         // points per unit area
  double mean_points_per_cluster = 0.0;  // M
  double cluster_radius = 1.0;           // r

  /// Daughter intensity M * parent_intensity.
  double intensity() const { return mean_points_per_cluster * parent_intensity; }
  /// Throws ParameterError on negative intensities/means or r <= 0.
  void validate() const;
};

/// Per-coordinate Gaussian displacement of lattice nodes.
struct LatticePerturbation {
  double variance = 0.0;
};

struct ClusterRealization {
  /// Parents on the window grown by the cluster radius (diagnostics only).
  PointSet parents;
  /// Daughters inside the window.
  PointSet daughters;
};

PointSet sample_homogeneous_ppp(const Window& window, double intensity, RandomStream& stream,
                                int tier = 1);

/// Independent thinning. p == 1 returns the input unchanged without drawing.
PointSet thin(const PointSet& points, double retain_prob, RandomStream& stream);

/// Nearest-neighbour spacing of a triangular lattice with the given density.
double triangular_lattice_spacing(double density);

/// Triangular lattice with one axis along x, uniformly random translation, and
/// i.i.d. N(0, variance) noise on each coordinate of every node. Nodes are
/// generated beyond the window far enough that perturbation cannot pull in
/// unseen points, so the returned pattern is stationary with intensity
/// `density`.
PointSet sample_perturbed_triangular_lattice(const Window& window, double density,
                                             LatticePerturbation perturbation,
                                             RandomStream& stream, int tier = 1);

ClusterRealization sample_matern_cluster(const Window& window, const MaternClusterParams& params,
                                         RandomStream& stream, int tier = 4);

/// Conditional (Cox) intensity of the cluster process given its parents:
/// sum over parents y of M * 1(|x - y| < r) / (pi r^2).
double cox_intensity_at(Point x, const PointSet& parents, const MaternClusterParams& params);

}  // namespace hetnet
