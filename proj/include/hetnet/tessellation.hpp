#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "hetnet/geometry.hpp"
#include "hetnet/random_stream.hpp"

namespace hetnet {

/// Voronoi edge between two sites, clipped to the tessellation's bounding
/// window. `left_site` lies to the left of the directed segment a -> b.
struct Segment {
  Point a;
  Point b;
  int left_site = -1;
  int right_site = -1;

  double length() const { return distance(a, b); }
};

/// Voronoi vertex: circumcenter of a Delaunay triangle, with its three sites.
struct VoronoiVertex {
  Point position;
  std::array<int, 3> sites{};
};

/// Voronoi cell of one site. The polygon is counter-clockwise and unclipped.
struct VoronoiCell {
  std::vector<Point> polygon;
  /// False when the cell is unbounded in the diagram of the sampled sites.
  bool bounded = false;
  /// True when every circumdisk of the cell's Delaunay triangles lies inside
  /// the bounding window, i.e. no unsampled point of the process outside the
  /// window could change the cell.
  bool determined = false;

  double perimeter() const;
};

/// Immutable Voronoi diagram of a set of sites.
class Tessellation {
 public:
  /// Sites after duplicate removal; all indices refer to this set.
  const PointSet& sites() const { return sites_; }
  const std::vector<Segment>& edges() const { return edges_; }
  const std::vector<VoronoiVertex>& vertices() const { return vertices_; }
  /// One cell per site, same indexing as sites().
  const std::vector<VoronoiCell>& cells() const { return cells_; }
  const Window& bounding_window() const { return bounding_; }
  std::size_t merged_duplicates() const { return merged_duplicates_; }
  /// Absolute tolerance for equidistance checks: 1e-9 x window diameter.
  double tolerance() const { return 1e-9 * bounding_.diameter(); }

 private:
  friend Tessellation compute_voronoi(const PointSet& sites, const Window& bounding_window);

  PointSet sites_;
  std::vector<Segment> edges_;
  std::vector<VoronoiVertex> vertices_;
  std::vector<VoronoiCell> cells_;
  Window bounding_;
  std::size_t merged_duplicates_ = 0;
};

/// Voronoi diagram of `sites` clipped to `bounding_window`.
///
/// Built from an incremental Delaunay triangulation with exact predicates.
/// Co-circular configurations are resolved by a symbolic perturbation of the
/// paraboloid lifting ordered by site index, so every vertex has exactly three
/// incident sites and the output does not depend on floating-point luck.
/// Exact duplicate sites are merged (first occurrence kept) with a warning.
/// Throws DegenerateInputError for fewer than two distinct sites.
Tessellation compute_voronoi(const PointSet& sites, const Window& bounding_window);

/// Vertices strictly inside `analysis_window`, tagged as tier 3. Each one is
/// checked to be equidistant from its three sites.
PointSet interior_vertices(const Tessellation& tess, const Window& analysis_window);

/// Linear PPP of `mu` points per unit length on every edge, restricted to
/// `analysis_window`. Edges are visited in tessellation order.
PointSet sample_ppp_on_edges(const Tessellation& tess, double mu, const Window& analysis_window,
                             RandomStream& stream, int tier = 2);

/// Total edge length inside `analysis_window` divided by its area.
double edge_length_density(const Tessellation& tess, const Window& analysis_window);

/// Mean perimeter of the cells whose site lies in `analysis_window` and which
/// are bounded and determined (minus sampling). Throws
/// InsufficientWindowError when no such cell exists.
double mean_cell_perimeter(const Tessellation& tess, const Window& analysis_window);

/// Segment clipped to a closed window; false if nothing remains.
bool clip_segment(const Window& window, Point& a, Point& b);

/// Debug dump: header `ax,ay,bx,by,left_site,right_site`, one edge per row.
void write_tessellation_csv(const Tessellation& tess, std::ostream& out);

}  // namespace hetnet
