#pragma once

#include <cmath>
#include <cstdint>

#include "pbclink/vec.hpp"

namespace pbclink::detail {

inline std::int64_t cell_index(double x, double edge) {
  return static_cast<std::int64_t>(std::floor(x / edge));
}

inline LatticeVec cell_of(const Vec3& p, const Vec3& edge) {
  return {cell_index(p.x(), edge.x()), cell_index(p.y(), edge.y()), cell_index(p.z(), edge.z())};
}

// Distance from x to the nearest lattice plane k*edge, and that k.
inline double plane_distance(double x, double edge, std::int64_t& k) {
  const double q = std::round(x / edge);
  k = static_cast<std::int64_t>(q);
  return std::fabs(x - q * edge);
}

inline double plane_coordinate(std::int64_t k, double edge) { return static_cast<double>(k) * edge; }

}  // namespace pbclink::detail
