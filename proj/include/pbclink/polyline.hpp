#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pbclink/vec.hpp"

namespace pbclink {

/// Oriented straight segment from a to b.
struct Segment {
  Vec3 a;
  Vec3 b;

  Segment reversed() const { return {b, a}; }
  double length() const { return (b - a).norm(); }
};

/// Oriented sequence of vertices, open or closed. Vertex order defines the
/// orientation. A closed polyline stores each vertex once; the segment from
/// the last vertex back to the first is implied.
class Polyline {
 public:
  Polyline() = default;

  /// Throws GeometryError on non-finite coordinates, fewer than two vertices
  /// (three when closed), coincident consecutive vertices, or a closed
  /// polyline whose last vertex repeats the first.
  Polyline(std::vector<Vec3> vertices, bool closed);

  static Polyline open(std::vector<Vec3> vertices) { return Polyline(std::move(vertices), false); }
  static Polyline ring(std::vector<Vec3> vertices) { return Polyline(std::move(vertices), true); }

  std::span<const Vec3> vertices() const { return vertices_; }
  const Vec3& vertex(std::size_t k) const { return vertices_[k]; }
  std::size_t vertex_count() const { return vertices_.size(); }
  bool closed() const { return closed_; }
  bool empty() const { return vertices_.empty(); }

  std::size_t segment_count() const {
    if (vertices_.empty()) return 0;
    return closed_ ? vertices_.size() : vertices_.size() - 1;
  }
  Segment segment(std::size_t k) const {
    return {vertices_[k], vertices_[(k + 1) % vertices_.size()]};
  }

  Polyline translated(const Vec3& shift) const;
  Polyline reversed() const;
  Polyline as_open() const;

  /// Largest distance between any two vertices (diameter of the vertex set's hull).
  double extent() const;

  friend bool operator==(const Polyline& a, const Polyline& b) {
    return a.closed_ == b.closed_ && a.vertices_ == b.vertices_;
  }

 private:
  std::vector<Vec3> vertices_;
  bool closed_ = false;
};

/// Euclidean distance between two closed segments.
double segment_distance(const Segment& s1, const Segment& s2);

}  // namespace pbclink
