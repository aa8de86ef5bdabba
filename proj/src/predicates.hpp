#pragma once

#include "hetnet/geometry.hpp"

namespace hetnet::detail {

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1 clockwise,
/// 0 collinear. Exact for all finite double inputs.
int orient2d(Point a, Point b, Point c);

/// Sign of the in-circle determinant: +1 when d lies strictly inside the
/// circle through the counter-clockwise triangle (a, b, c), -1 outside,
/// 0 co-circular. Exact for all finite double inputs.
int incircle(Point a, Point b, Point c, Point d);

/// Circumcenter of a non-degenerate triangle.
Point circumcenter(Point a, Point b, Point c);

}  // namespace hetnet::detail
