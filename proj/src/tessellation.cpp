#include "hetnet/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>

#include "format.hpp"
#include "hetnet/errors.hpp"
#include "predicates.hpp"

namespace hetnet {
namespace {

using detail::circumcenter;
using detail::incircle;
using detail::orient2d;

struct Triangle {
  std::array<int, 3> v{};  // counter-clockwise
  std::array<int, 3> n{};  // n[i] is the neighbour across the edge opposite v[i]
  bool alive = true;
};

constexpr int next(int i) { return i == 2 ? 0 : i + 1; }
constexpr int prev(int i) { return i == 0 ? 2 : i - 1; }

/// Incremental (Bowyer-Watson) Delaunay triangulation over real sites plus
/// four far-away corner points that enclose them.
class DelaunayBuilder {
 public:
  DelaunayBuilder(std::vector<Point> sites, const Window& frame)
      : points_(std::move(sites)), real_count_(static_cast<int>(points_.size())) {
    double x_lo = frame.x_min(), x_hi = frame.x_max();
    double y_lo = frame.y_min(), y_hi = frame.y_max();
    for (const Point& p : points_) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
    // Far enough that, inside the frame, every location is closer to a real
    // site than to any corner point.
    const double reach = 64.0 * std::max(x_hi - x_lo, y_hi - y_lo);
    const Point c{0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)};
    points_.push_back({c.x - reach, c.y - reach});
    points_.push_back({c.x + reach, c.y - reach});
    points_.push_back({c.x + reach, c.y + reach});
    points_.push_back({c.x - reach, c.y + reach});
    const int d = real_count_;
    triangles_.push_back({{d, d + 1, d + 2}, {-1, 1, -1}, true});
    triangles_.push_back({{d, d + 2, d + 3}, {-1, -1, 0}, true});
  }

  void insert_all() {
    for (int site : insertion_order()) insert(site);
  }

  bool is_real(int vertex) const { return vertex < real_count_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

 private:
  // Snake order over horizontal strips keeps the point-location walk short.
  // The triangulation itself is unique, so the order only affects speed.
  std::vector<int> insertion_order() const {
    std::vector<int> order(static_cast<std::size_t>(real_count_));
    std::iota(order.begin(), order.end(), 0);
    if (real_count_ < 2) return order;
    double y_lo = points_[0].y, y_hi = points_[0].y;
    for (int i = 0; i < real_count_; ++i) {
      y_lo = std::min(y_lo, points_[i].y);
      y_hi = std::max(y_hi, points_[i].y);
    }
    const int strips = std::max(1, static_cast<int>(std::sqrt(real_count_ / 2.0)));
    const double h = (y_hi - y_lo) / strips;
    auto strip_of = [&](int i) {
      if (h <= 0.0) return 0;
      return std::min(strips - 1, static_cast<int>((points_[i].y - y_lo) / h));
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const int sa = strip_of(a), sb = strip_of(b);
      if (sa != sb) return sa < sb;
      const Point& pa = points_[a];
      const Point& pb = points_[b];
      if (pa.x != pb.x) return (sa % 2 == 0) ? pa.x < pb.x : pa.x > pb.x;
      if (pa.y != pb.y) return pa.y < pb.y;
      return a < b;
    });
    return order;
  }

  // In-circle test with symbolic perturbation of the lifted coordinate: site
  // i is lifted by eps^(N - i), so the largest index dominates. The
  // determinant is linear in the lifted column, hence the first non-zero
  // cofactor in priority order decides the sign.
  int in_circle(const Triangle& t, int d) const {
    const int a = t.v[0], b = t.v[1], c = t.v[2];
    const int s = incircle(points_[a], points_[b], points_[c], points_[d]);
    if (s != 0) return s;
    std::array<int, 4> order{a, b, c, d};
    std::sort(order.begin(), order.end(), std::greater<>());
    for (int q : order) {
      int o = 0;
      if (q == d) return -1;
      if (q == a) o = orient2d(points_[d], points_[b], points_[c]);
      if (q == b) o = orient2d(points_[a], points_[d], points_[c]);
      if (q == c) o = orient2d(points_[a], points_[b], points_[d]);
      if (o != 0) return o;
    }
    return -1;
  }

  int locate(Point p) const {
    int t = last_;
    const std::size_t limit = 4 * triangles_.size() + 16;
    for (std::size_t step = 0; step < limit; ++step) {
      const Triangle& tri = triangles_[t];
      int moved = -1;
      for (int k = 0; k < 3; ++k) {
        const int i = static_cast<int>((step + k) % 3);
        const Point& a = points_[tri.v[next(i)]];
        const Point& b = points_[tri.v[prev(i)]];
        if (orient2d(a, b, p) < 0) {
          moved = tri.n[i];
          break;
        }
      }
      if (moved < 0) return t;
      t = moved;
    }
    // Walks terminate on regular triangulations; this is a safety net.
    for (std::size_t i = 0; i < triangles_.size(); ++i) {
      const Triangle& tri = triangles_[i];
      if (!tri.alive) continue;
      bool inside = true;
      for (int k = 0; k < 3 && inside; ++k) {
        inside = orient2d(points_[tri.v[next(k)]], points_[tri.v[prev(k)]], p) >= 0;
      }
      if (inside) return static_cast<int>(i);
    }
    throw std::logic_error("point location failed");
  }

  struct BoundaryEdge {
    int a, b, outside;
  };

  void insert(int site) {
    const Point p = points_[site];
    const int start = locate(p);
    ++epoch_;
    in_cavity_.resize(triangles_.size(), 0);
    tested_.resize(triangles_.size(), 0);

    cavity_.clear();
    cavity_.push_back(start);
    in_cavity_[start] = epoch_;
    tested_[start] = epoch_;
    for (std::size_t k = 0; k < cavity_.size(); ++k) {
      const Triangle& tri = triangles_[cavity_[k]];
      for (int nb : tri.n) {
        if (nb < 0 || tested_[nb] == epoch_) continue;
        tested_[nb] = epoch_;
        if (in_circle(triangles_[nb], site) > 0) {
          in_cavity_[nb] = epoch_;
          cavity_.push_back(nb);
        }
      }
    }

    boundary_.clear();
    for (int t : cavity_) {
      const Triangle& tri = triangles_[t];
      for (int i = 0; i < 3; ++i) {
        const int nb = tri.n[i];
        if (nb >= 0 && in_cavity_[nb] == epoch_) continue;
        boundary_.push_back({tri.v[next(i)], tri.v[prev(i)], nb});
      }
    }

    for (int t : cavity_) {
      triangles_[t].alive = false;
      free_.push_back(t);
    }

    created_.clear();
    for (const BoundaryEdge& e : boundary_) {
      int id = 0;
      if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
        triangles_[id] = Triangle{{e.a, e.b, site}, {-1, -1, e.outside}, true};
      } else {
        id = static_cast<int>(triangles_.size());
        triangles_.push_back(Triangle{{e.a, e.b, site}, {-1, -1, e.outside}, true});
      }
      created_.push_back(id);
      if (e.outside >= 0) {
        Triangle& out = triangles_[e.outside];
        for (int j = 0; j < 3; ++j) {
          if (out.v[next(j)] == e.b && out.v[prev(j)] == e.a) {
            out.n[j] = id;
            break;
          }
        }
      }
    }
    // New triangle (a, b, p): edge (b, p) is shared with the one starting at
    // b, edge (p, a) with the one ending at a.
    for (std::size_t i = 0; i < created_.size(); ++i) {
      Triangle& tri = triangles_[created_[i]];
      for (std::size_t j = 0; j < created_.size(); ++j) {
        if (i == j) continue;
        const Triangle& other = triangles_[created_[j]];
        if (other.v[0] == tri.v[1]) tri.n[0] = created_[j];
        if (other.v[1] == tri.v[0]) tri.n[1] = created_[j];
      }
    }
    last_ = created_.front();
  }

  std::vector<Point> points_;
  int real_count_;
  std::vector<Triangle> triangles_;
  std::vector<int> free_;
  std::vector<unsigned> in_cavity_;
  std::vector<unsigned> tested_;
  std::vector<int> cavity_;
  std::vector<BoundaryEdge> boundary_;
  std::vector<int> created_;
  unsigned epoch_ = 0;
  int last_ = 0;
};

std::vector<Point> deduplicate(const std::vector<Point>& input, std::size_t& merged) {
  std::vector<std::size_t> order(input.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (input[a].x != input[b].x) return input[a].x < input[b].x;
    if (input[a].y != input[b].y) return input[a].y < input[b].y;
    return a < b;
  });
  std::vector<bool> drop(input.size(), false);
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (input[order[k]] == input[order[k - 1]]) drop[order[k]] = true;
  }
  std::vector<Point> out;
  out.reserve(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (!drop[i]) out.push_back(input[i]);
  }
  merged = input.size() - out.size();
  return out;
}

}  // namespace

double VoronoiCell::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    total += distance(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return total;
}

bool clip_segment(const Window& window, Point& a, Point& b) {
  // Liang-Barsky.
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t0 = 0.0;
  double t1 = 1.0;
  const std::array<double, 4> p{-dx, dx, -dy, dy};
  const std::array<double, 4> q{a.x - window.x_min(), window.x_max() - a.x, a.y - window.y_min(),
                                window.y_max() - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
  }
  const auto snap = [&](Point p) {
    return Point{std::clamp(p.x, window.x_min(), window.x_max()),
                 std::clamp(p.y, window.y_min(), window.y_max())};
  };
  const Point start = t0 > 0.0 ? snap({a.x + t0 * dx, a.y + t0 * dy}) : a;
  const Point end = t1 < 1.0 ? snap({a.x + t1 * dx, a.y + t1 * dy}) : b;
  a = start;
  b = end;
  return true;
}

Tessellation compute_voronoi(const PointSet& sites, const Window& bounding_window) {
  Tessellation tess;
  tess.bounding_ = bounding_window;
  tess.sites_.tier = sites.tier;
  tess.sites_.points = deduplicate(sites.points, tess.merged_duplicates_);
  if (tess.merged_duplicates_ > 0) {
    std::clog << "hetnet: warning: merged " << tess.merged_duplicates_
              << " duplicate Voronoi site(s)\n";
  }
  if (tess.sites_.size() < 2) {
    throw DegenerateInputError("Voronoi tessellation needs at least two distinct sites");
  }

  DelaunayBuilder builder(tess.sites_.points, bounding_window);
  builder.insert_all();

  const auto& pts = builder.points();
  const auto& tris = builder.triangles();
  const double tol = tess.tolerance();

  std::vector<Point> centers(tris.size());
  std::vector<bool> all_real(tris.size(), false);
  std::vector<int> incident(tess.sites_.size(), -1);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Triangle& tri = tris[t];
    if (!tri.alive) continue;
    centers[t] = circumcenter(pts[tri.v[0]], pts[tri.v[1]], pts[tri.v[2]]);
    all_real[t] = builder.is_real(tri.v[0]) && builder.is_real(tri.v[1]) &&
                  builder.is_real(tri.v[2]);
    for (int v : tri.v) {
      if (builder.is_real(v)) incident[v] = static_cast<int>(t);
    }
    if (all_real[t] && bounding_window.contains_closed(centers[t])) {
      tess.vertices_.push_back({centers[t], tri.v});
    }
  }

  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Triangle& tri = tris[t];
    if (!tri.alive) continue;
    for (int i = 0; i < 3; ++i) {
      const int nb = tri.n[i];
      if (nb < 0 || static_cast<std::size_t>(nb) < t) continue;
      const int s = tri.v[next(i)];
      const int u = tri.v[prev(i)];
      if (!builder.is_real(s) || !builder.is_real(u)) continue;
      Point a = centers[t];
      Point b = centers[nb];
      if (distance(a, b) <= tol) continue;
      const double cross = (b.x - a.x) * (pts[s].y - a.y) - (b.y - a.y) * (pts[s].x - a.x);
      const int left = cross > 0.0 ? s : u;
      const int right = cross > 0.0 ? u : s;
      if (!clip_segment(bounding_window, a, b)) continue;
      if (distance(a, b) <= tol) continue;
      tess.edges_.push_back({a, b, left, right});
    }
  }

  tess.cells_.resize(tess.sites_.size());
  for (std::size_t s = 0; s < tess.sites_.size(); ++s) {
    VoronoiCell& cell = tess.cells_[s];
    cell.bounded = true;
    cell.determined = true;
    const int first = incident[s];
    int t = first;
    do {
      const Triangle& tri = tris[t];
      const int k = tri.v[0] == static_cast<int>(s) ? 0 : (tri.v[1] == static_cast<int>(s) ? 1 : 2);
      cell.polygon.push_back(centers[t]);
      if (!all_real[t]) {
        cell.bounded = false;
        cell.determined = false;
      } else if (!bounding_window.contains_disk(centers[t],
                                               distance(centers[t], pts[s]))) {
        cell.determined = false;
      }
      t = tri.n[next(k)];
    } while (t != first && t >= 0);
  }
  return tess;
}

PointSet interior_vertices(const Tessellation& tess, const Window& analysis_window) {
  PointSet out;
  out.tier = 3;
  const auto& sites = tess.sites().points;
  const double tol = tess.tolerance();
  for (const VoronoiVertex& v : tess.vertices()) {
    if (!analysis_window.contains_strictly(v.position)) continue;
    const double r0 = distance(v.position, sites[v.sites[0]]);
    for (int k = 1; k < 3; ++k) {
      if (std::fabs(distance(v.position, sites[v.sites[k]]) - r0) > tol) {
        throw std::logic_error("Voronoi vertex is not equidistant from its sites");
      }
    }
    out.points.push_back(v.position);
  }
  return out;
}

PointSet sample_ppp_on_edges(const Tessellation& tess, double mu, const Window& analysis_window,
                             RandomStream& stream, int tier) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw ParameterError("edge intensity mu must be finite and non-negative");
  }
  PointSet out;
  out.tier = tier;
  if (mu == 0.0) return out;
  for (const Segment& edge : tess.edges()) {
    Point a = edge.a;
    Point b = edge.b;
    if (!clip_segment(analysis_window, a, b)) continue;
    const auto count = stream.poisson(mu * distance(a, b));
    for (std::uint64_t k = 0; k < count; ++k) {
      const double u = stream.uniform();
      const Point p = a + u * (b - a);
      if (analysis_window.contains(p)) out.points.push_back(p);
    }
  }
  return out;
}

double edge_length_density(const Tessellation& tess, const Window& analysis_window) {
  double total = 0.0;
  for (const Segment& edge : tess.edges()) {
    Point a = edge.a;
    Point b = edge.b;
    if (clip_segment(analysis_window, a, b)) total += distance(a, b);
  }
  return total / analysis_window.area();
}

double mean_cell_perimeter(const Tessellation& tess, const Window& analysis_window) {
  double total = 0.0;
  std::size_t count = 0;
  const auto& sites = tess.sites().points;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const VoronoiCell& cell = tess.cells()[s];
    if (!cell.determined || !analysis_window.contains(sites[s])) continue;
    total += cell.perimeter();
    ++count;
  }
  if (count == 0) {
    throw InsufficientWindowError("no complete Voronoi cell inside the analysis window");
  }
  return total / static_cast<double>(count);
}

void write_tessellation_csv(const Tessellation& tess, std::ostream& out) {
  using detail::format_double;
  out << "ax,ay,bx,by,left_site,right_site\n";
  for (const Segment& e : tess.edges()) {
    out << format_double(e.a.x) << ',' << format_double(e.a.y) << ',' << format_double(e.b.x)
        << ',' << format_double(e.b.y) << ',' << e.left_site << ',' << e.right_site << '\n';
  }
}

}  // namespace hetnet
