#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hetnet {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

/// Axis-aligned rectangular region. Always has positive area.
class Window {
 public:
  /// Unit square.
  Window() = default;
  /// Throws ParameterError unless x_max > x_min and y_max > y_min.
  Window(double x_min, double x_max, double y_min, double y_max);

  static Window square(double side) { return {0.0, side, 0.0, side}; }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double y_min() const { return y_min_; }
  double y_max() const { return y_max_; }
  double width() const { return x_max_ - x_min_; }
  double height() const { return y_max_ - y_min_; }
  double area() const { return width() * height(); }
  double diameter() const { return std::hypot(width(), height()); }
  Point center() const { return {0.5 * (x_min_ + x_max_), 0.5 * (y_min_ + y_max_)}; }

  /// Half-open membership [x_min, x_max) x [y_min, y_max); disjoint tiles
  /// never double count a point.
  bool contains(Point p) const {
    return p.x >= x_min_ && p.x < x_max_ && p.y >= y_min_ && p.y < y_max_;
  }
  bool contains_strictly(Point p) const {
    return p.x > x_min_ && p.x < x_max_ && p.y > y_min_ && p.y < y_max_;
  }
  bool contains_closed(Point p) const {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
  }
  /// True when the closed disk lies inside the closed window.
  bool contains_disk(Point c, double radius) const {
    return c.x - radius >= x_min_ && c.x + radius <= x_max_ && c.y - radius >= y_min_ &&
           c.y + radius <= y_max_;
  }

  /// Grows every side by `margin` (which may be negative as long as the
  /// result stays non-empty).
  Window expanded(double margin) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double x_min_ = 0.0;
  double x_max_ = 1.0;
  double y_min_ = 0.0;
  double y_max_ = 1.0;
};

/// Finite collection of planar base-station locations belonging to one tier.
struct PointSet {
  std::vector<Point> points;
  int tier = 1;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  auto begin() const { return points.begin(); }
  auto end() const { return points.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;
};

/// Points of `set` that lie in `window` (half-open), tier tag preserved.
PointSet restrict_to(const PointSet& set, const Window& window);

}  // namespace hetnet
