#pragma once

#include <cmath>
#include <numbers>

#include "pbclink/gauss.hpp"
#include "pbclink/vec.hpp"

namespace pbclink::detail {

inline constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;

// Gauss integral of the segment pair p1->p2, q1->q2 from the four endpoint
// differences a = q1-p1, b = q1-p2, c = q2-p2, d = q2-p1 and their norms.
// These are the corners of the planar parallelogram {q - p}; its solid angle
// is split into the triangles (a,b,c) and (c,d,a), which share the triple
// product because d = a - b + c.
inline double parallelogram_term(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
                                 double na, double nb, double nc, double nd) {
  const double det = a.dot(b.cross(c));
  if (std::fabs(det) <= kCoplanarFactor * na * nb * nc) return 0.0;
  const double ac = a.dot(c);
  const double den1 = na * nb * nc + a.dot(b) * nc + ac * nb + b.dot(c) * na;
  const double den2 = nc * nd * na + c.dot(d) * na + ac * nd + d.dot(a) * nc;
  // Each triangle subtends 2*atan2(det, den); the sum is divided by 4π.
  return kInvTwoPi * (std::atan2(det, den1) + std::atan2(det, den2));
}

inline double contact_tolerance(double len1, double len2) { return kContactFactor * (len1 + len2); }

}  // namespace pbclink::detail
