#include "hull_distance.hpp"

#include <array>
#include <limits>

#include <Eigen/Dense>

namespace pbclink::detail {

namespace {

struct Simplex {
  std::array<Vec3, 4> p;
  int n = 0;
};

Vec3 support_points(std::span<const Vec3> points, const Vec3& d) {
  const Vec3* best = &points[0];
  double best_dot = best->dot(d);
  for (const auto& p : points) {
    const double v = p.dot(d);
    if (v > best_dot) {
      best_dot = v;
      best = &p;
    }
  }
  return *best;
}

Vec3 support_box(const Vec3& lo, const Vec3& hi, const Vec3& d) {
  return {d.x() >= 0 ? hi.x() : lo.x(), d.y() >= 0 ? hi.y() : lo.y(), d.z() >= 0 ? hi.z() : lo.z()};
}

// Closest point of the simplex to the origin by enumerating every face and
// keeping the nearest affine projection with nonnegative barycentrics. The
// simplex is reduced to the vertices of that face.
Vec3 closest_on_simplex(Simplex& s) {
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_point = s.p[0];
  int best_mask = 1;
  for (int mask = 1; mask < (1 << s.n); ++mask) {
    std::array<int, 4> idx{};
    int m = 0;
    for (int k = 0; k < s.n; ++k)
      if (mask & (1 << k)) idx[static_cast<std::size_t>(m++)] = k;
    const Vec3& p0 = s.p[static_cast<std::size_t>(idx[0])];
    Vec3 x = p0;
    if (m > 1) {
      Eigen::Matrix<double, 3, Eigen::Dynamic> e(3, m - 1);
      for (int k = 1; k < m; ++k) e.col(k - 1) = s.p[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] - p0;
      const Eigen::MatrixXd gram = e.transpose() * e;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
      lu.setThreshold(1e-12);
      if (lu.rank() < m - 1) continue;
      const Eigen::VectorXd mu = lu.solve(-(e.transpose() * p0));
      if ((mu.array() < -1e-12).any() || mu.sum() > 1.0 + 1e-12) continue;
      x = p0 + e * mu;
    }
    const double d = x.squaredNorm();
    if (d < best) {
      best = d;
      best_point = x;
      best_mask = mask;
    }
  }
  Simplex reduced;
  for (int k = 0; k < s.n; ++k)
    if (best_mask & (1 << k)) reduced.p[static_cast<std::size_t>(reduced.n++)] = s.p[static_cast<std::size_t>(k)];
  s = reduced;
  return best_point;
}

}  // namespace

double hull_box_distance(std::span<const Vec3> points, const Vec3& lo, const Vec3& hi) {
  auto support = [&](const Vec3& d) { return Vec3(support_points(points, d) - support_box(lo, hi, -d)); };
  const double scale = std::max((hi - lo).norm(), 1.0);
  Simplex s;
  Vec3 v = points[0] - 0.5 * (lo + hi);
  for (int iter = 0; iter < 128; ++iter) {
    const double vv = v.squaredNorm();
    if (vv <= 1e-28 * scale * scale) return 0.0;
    const Vec3 w = support(-v);
    if (vv - v.dot(w) <= 1e-12 * vv) return std::sqrt(vv);
    bool seen = false;
    for (int k = 0; k < s.n; ++k) seen = seen || (s.p[static_cast<std::size_t>(k)] - w).squaredNorm() == 0.0;
    if (seen) return std::sqrt(vv);
    s.p[static_cast<std::size_t>(s.n++)] = w;
    v = closest_on_simplex(s);
    if (s.n == 4) return 0.0;  // origin inside a tetrahedron
  }
  return v.norm();
}

}  // namespace pbclink::detail
