#pragma once

#include <span>

#include "pbclink/vec.hpp"

namespace pbclink::detail {

// Euclidean distance between the convex hull of `points` and the box
// [lo, hi] (GJK on the Minkowski difference). Returns 0 on overlap.
double hull_box_distance(std::span<const Vec3> points, const Vec3& lo, const Vec3& hi);

}  // namespace pbclink::detail
