#pragma once

// Independent references for the test suites. Nothing here calls the
// solid-angle kernel, the unfolding code or the cell-set code.

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "pbclink/pbc.hpp"
#include "pbclink/polyline.hpp"
#include "pbclink/quadrature.hpp"

namespace oracle {

using pbclink::CellSet;
using pbclink::LatticeVec;
using pbclink::Polyline;
using pbclink::Segment;
using pbclink::Vec3;

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  return q.normalized().toRotationMatrix();
}

/// Linking number of two closed polygons from a generic projection: half
/// the sum of signed crossings between them.
inline double projection_linking(const Polyline& p1, const Polyline& p2, std::uint64_t seed = 99) {
  std::mt19937_64 rng(seed);
  const Eigen::Matrix3d r = random_rotation(rng);
  int total = 0;
  for (std::size_t i = 0; i < p1.segment_count(); ++i) {
    const Segment s = p1.segment(i);
    const Vec3 a = r * s.a, b = r * s.b;
    for (std::size_t j = 0; j < p2.segment_count(); ++j) {
      const Segment t = p2.segment(j);
      const Vec3 c = r * t.a, d = r * t.b;
      const Eigen::Vector2d u = (b - a).head<2>(), v = (d - c).head<2>(), w = (c - a).head<2>();
      const double den = u.x() * v.y() - u.y() * v.x();
      if (den == 0.0) continue;
      const double tt = (w.x() * v.y() - w.y() * v.x()) / den;
      const double ss = (w.x() * u.y() - w.y() * u.x()) / den;
      if (tt < 0.0 || tt > 1.0 || ss < 0.0 || ss > 1.0) continue;
      const double z1 = a.z() + tt * (b.z() - a.z());
      const double z2 = c.z() + ss * (d.z() - c.z());
      // Right-handed crossing: over strand, then under strand, turn counter-clockwise.
      const Eigen::Vector2d over = z1 > z2 ? u : v, under = z1 > z2 ? v : u;
      const double turn = over.x() * under.y() - over.y() * under.x();
      total += turn > 0.0 ? 1 : -1;
    }
  }
  return 0.5 * total;
}

/// Gauss linking of two polylines by quadrature of every segment pair.
inline double quadrature_linking(const Polyline& p1, const Polyline& p2, double tol = 1e-10) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p1.segment_count(); ++i)
    for (std::size_t j = 0; j < p2.segment_count(); ++j) sum += pbclink::quadrature_oracle(p1.segment(i), p2.segment(j), tol);
  return sum;
}

inline LatticeVec floor_cell(const Vec3& p, const Vec3& edge) {
  return {static_cast<std::int64_t>(std::floor(p.x() / edge.x())), static_cast<std::int64_t>(std::floor(p.y() / edge.y())),
          static_cast<std::int64_t>(std::floor(p.z() / edge.z()))};
}

/// Cells visited by dense samples along the polyline. For chains with no
/// vertex on a face this equals the closed-box minimal unfolding.
inline CellSet sampled_cells(const Polyline& p, const Vec3& edge, int samples_per_segment = 2000) {
  CellSet out;
  for (std::size_t k = 0; k < p.segment_count(); ++k) {
    const Segment s = p.segment(k);
    for (int i = 0; i <= samples_per_segment; ++i) {
      const double t = (i + 0.5) / (samples_per_segment + 1.0);
      out.insert(floor_cell(s.a + t * (s.b - s.a), edge));
    }
  }
  return out;
}

/// Whether the closed segment meets the closed box [lo, hi] (slab test).
inline bool segment_meets_box(const Vec3& a, const Vec3& b, const Vec3& lo, const Vec3& hi) {
  double t0 = 0.0, t1 = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double d = b[k] - a[k];
    if (d == 0.0) {
      if (a[k] < lo[k] || a[k] > hi[k]) return false;
      continue;
    }
    double e0 = (lo[k] - a[k]) / d, e1 = (hi[k] - a[k]) / d;
    if (e0 > e1) std::swap(e0, e1);
    t0 = std::max(t0, e0);
    t1 = std::min(t1, e1);
    if (t0 > t1) return false;
  }
  return true;
}

inline Vec3 cell_corner(const LatticeVec& c, const Vec3& edge) {
  return {static_cast<double>(c[0]) * edge.x(), static_cast<double>(c[1]) * edge.y(), static_cast<double>(c[2]) * edge.z()};
}

/// Offsets v in [-range, range]^3 for which `p + v*edge` touches any box of
/// `region`, by exhaustive search.
inline std::set<LatticeVec> brute_touching_offsets(const Polyline& p, const CellSet& region, const Vec3& edge,
                                                   int range) {
  std::set<LatticeVec> out;
  for (int x = -range; x <= range; ++x)
    for (int y = -range; y <= range; ++y)
      for (int z = -range; z <= range; ++z) {
        const LatticeVec v(x, y, z);
        const Vec3 shift = cell_corner(v, edge);
        bool hit = false;
        for (std::size_t k = 0; k < p.segment_count() && !hit; ++k) {
          const Segment s = p.segment(k);
          for (const auto& c : region) {
            const Vec3 lo = cell_corner(c, edge);
            if (segment_meets_box(s.a + shift, s.b + shift, lo, lo + edge)) {
              hit = true;
              break;
            }
          }
        }
        if (hit) out.insert(v);
      }
  return out;
}

// Random inputs.

inline Vec3 random_point(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

inline Polyline random_walk(std::mt19937_64& rng, std::size_t beads, const Vec3& start, double bond = 1.0,
                            bool closed = false) {
  std::vector<Vec3> v{start};
  while (v.size() < beads) v.push_back(v.back() + bond * random_unit(rng));
  return Polyline(v, closed);
}

/// Random closed polygon: points on a noisy circle, in random orientation.
inline Polyline random_loop(std::mt19937_64& rng, std::size_t n, const Vec3& centre, double radius) {
  const Eigen::Matrix3d r = random_rotation(rng);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::vector<Vec3> v;
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.4 * jitter(rng)) / static_cast<double>(n);
    const Vec3 local(radius * std::cos(phi), radius * std::sin(phi), radius * jitter(rng));
    v.push_back(centre + r * local);
  }
  return Polyline::ring(v);
}

inline double min_distance(const Polyline& a, const Polyline& b) {
  double m = INFINITY;
  for (std::size_t i = 0; i < a.segment_count(); ++i)
    for (std::size_t j = 0; j < b.segment_count(); ++j) m = std::min(m, pbclink::segment_distance(a.segment(i), b.segment(j)));
  return m;
}

}  // namespace oracle
