#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace pbclink {

/// A point or displacement in 3-space, in length units.
using Vec3 = Eigen::Vector3d;

/// Integer lattice vector counting cell edges along x, y and z.
struct LatticeVec {
  std::array<std::int64_t, 3> n{0, 0, 0};

  constexpr LatticeVec() = default;
  constexpr LatticeVec(std::int64_t x, std::int64_t y, std::int64_t z) : n{x, y, z} {}

  constexpr std::int64_t operator[](int a) const { return n[static_cast<std::size_t>(a)]; }
  constexpr std::int64_t& operator[](int a) { return n[static_cast<std::size_t>(a)]; }

  friend constexpr LatticeVec operator+(LatticeVec a, const LatticeVec& b) {
    for (int k = 0; k < 3; ++k) a[k] += b[k];
    return a;
  }
  friend constexpr LatticeVec operator-(LatticeVec a, const LatticeVec& b) {
    for (int k = 0; k < 3; ++k) a[k] -= b[k];
    return a;
  }
  friend constexpr LatticeVec operator-(LatticeVec a) {
    for (int k = 0; k < 3; ++k) a[k] = -a[k];
    return a;
  }
  friend constexpr auto operator<=>(const LatticeVec&, const LatticeVec&) = default;

  /// Chebyshev (max-component) norm.
  constexpr std::int64_t chebyshev() const {
    std::int64_t m = 0;
    for (int k = 0; k < 3; ++k) {
      const std::int64_t v = n[static_cast<std::size_t>(k)] < 0 ? -n[static_cast<std::size_t>(k)]
                                                                : n[static_cast<std::size_t>(k)];
      if (v > m) m = v;
    }
    return m;
  }

  constexpr bool is_zero() const { return n[0] == 0 && n[1] == 0 && n[2] == 0; }
};

/// Displacement of a lattice vector in length units: offset ⊙ edge.
inline Vec3 lattice_shift(const LatticeVec& v, const Vec3& edge) {
  return Vec3(static_cast<double>(v[0]) * edge.x(), static_cast<double>(v[1]) * edge.y(),
              static_cast<double>(v[2]) * edge.z());
}

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

}  // namespace pbclink
