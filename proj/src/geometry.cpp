#include "hetnet/geometry.hpp"

#include "hetnet/errors.hpp"

namespace hetnet {

Window::Window(double x_min, double x_max, double y_min, double y_max)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max)) {
    throw ParameterError("window bounds must be finite");
  }
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw ParameterError("window must have x_max > x_min and y_max > y_min");
  }
}

Window Window::expanded(double margin) const {
  return {x_min_ - margin, x_max_ + margin, y_min_ - margin, y_max_ + margin};
}

PointSet restrict_to(const PointSet& set, const Window& window) {
  PointSet out;
  out.tier = set.tier;
  for (const Point& p : set.points) {
    if (window.contains(p)) out.points.push_back(p);
  }
  return out;
}

}  // namespace hetnet
