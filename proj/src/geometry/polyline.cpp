#include "pbclink/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pbclink/errors.hpp"

namespace pbclink {

Polyline::Polyline(std::vector<Vec3> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  const std::size_t min_count = closed_ ? 3 : 2;
  if (vertices_.size() < min_count)
    throw GeometryError("polyline needs at least " + std::to_string(min_count) + " vertices");
  for (std::size_t k = 0; k < vertices_.size(); ++k) {
    if (!all_finite(vertices_[k]))
      throw GeometryError("non-finite coordinate at vertex " + std::to_string(k));
    if (k > 0 && vertices_[k] == vertices_[k - 1])
      throw GeometryError("zero-length segment at vertex " + std::to_string(k));
  }
  if (closed_ && vertices_.front() == vertices_.back())
    throw GeometryError("closed polyline repeats its first vertex");
}

Polyline Polyline::translated(const Vec3& shift) const {
  std::vector<Vec3> out(vertices_);
  for (auto& v : out) v += shift;
  Polyline p;
  p.vertices_ = std::move(out);
  p.closed_ = closed_;
  return p;
}

Polyline Polyline::reversed() const {
  Polyline p(*this);
  std::reverse(p.vertices_.begin(), p.vertices_.end());
  return p;
}

Polyline Polyline::as_open() const {
  Polyline p(*this);
  p.closed_ = false;
  return p;
}

double Polyline::extent() const {
  double best = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      best = std::max(best, (vertices_[i] - vertices_[j]).squaredNorm());
  return std::sqrt(best);
}

// Closest points between two segments (Ericson, Real-Time Collision
// Detection, 5.1.9), returning only the distance.
double segment_distance(const Segment& s1, const Segment& s2) {
  const Vec3 d1 = s1.b - s1.a;
  const Vec3 d2 = s2.b - s2.a;
  const Vec3 r = s1.a - s2.a;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a == 0.0 && e == 0.0) return r.norm();
  if (a == 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e == 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((s1.a + s * d1) - (s2.a + t * d2)).norm();
}

}  // namespace pbclink
