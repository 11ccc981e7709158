#include <algorithm>
#include <array>
#include <vector>

#include "hull_distance.hpp"
#include "lattice.hpp"
#include "pbclink/pbc.hpp"

namespace pbclink {

namespace {

void add_point(CellSet& out, const Vec3& p, const Vec3& edge, double tol) {
  const CellSet cells = cells_containing(p, edge, tol);
  out.insert(cells.begin(), cells.end());
}

// Splits the segment at every lattice plane it crosses and records the
// cells of the crossing points and of each piece's midpoint.
void add_segment(CellSet& out, const Vec3& p, const Vec3& q, const Vec3& edge, double tol) {
  std::vector<double> ts{0.0, 1.0};
  for (int a = 0; a < 3; ++a) {
    const double lo = std::min(p[a], q[a]);
    const double hi = std::max(p[a], q[a]);
    if (lo == hi) continue;
    const auto first = static_cast<std::int64_t>(std::floor(lo / edge[a]));
    const auto last = static_cast<std::int64_t>(std::ceil(hi / edge[a]));
    for (std::int64_t j = first; j <= last; ++j) {
      const double x = detail::plane_coordinate(j, edge[a]);
      if (lo < x && x < hi) ts.push_back((x - p[a]) / (q[a] - p[a]));
    }
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    add_point(out, p + ts[k] * (q - p), edge, tol);
    if (k + 1 < ts.size()) add_point(out, p + 0.5 * (ts[k] + ts[k + 1]) * (q - p), edge, tol);
  }
}

}  // namespace

CellSet cells_containing(const Vec3& p, const Vec3& edge, double tol) {
  std::array<std::vector<std::int64_t>, 3> axis;
  for (int a = 0; a < 3; ++a) {
    auto& ks = axis[static_cast<std::size_t>(a)];
    const std::int64_t k = detail::cell_index(p[a], edge[a]);
    ks.push_back(k);
    if (p[a] - detail::plane_coordinate(k, edge[a]) <= tol) ks.push_back(k - 1);
    if (detail::plane_coordinate(k + 1, edge[a]) - p[a] <= tol) ks.push_back(k + 1);
  }
  CellSet out;
  for (auto x : axis[0])
    for (auto y : axis[1])
      for (auto z : axis[2]) out.insert({x, y, z});
  return out;
}

CellSet minimal_unfolding(const Image& img, const Vec3& edge) {
  const double tol = kFaceFactor * edge.minCoeff();
  CellSet out;
  const Polyline& p = img.polyline;
  if (p.vertex_count() == 1) add_point(out, p.vertex(0), edge, tol);
  for (std::size_t k = 0; k < p.segment_count(); ++k) {
    const Segment s = p.segment(k);
    add_segment(out, s.a, s.b, edge, tol);
  }
  return out;
}

CellSet minimal_topological_cell(const Image& img, const Vec3& edge) {
  const double tol = kFaceFactor * edge.minCoeff();
  CellSet out = minimal_unfolding(img, edge);
  const auto verts = img.polyline.vertices();
  Vec3 lo = verts[0];
  Vec3 hi = verts[0];
  for (const auto& v : verts) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const LatticeVec c_lo = *cells_containing(lo, edge, tol).begin();
  const LatticeVec c_hi = *cells_containing(hi, edge, tol).rbegin();
  for (auto x = c_lo[0]; x <= c_hi[0]; ++x)
    for (auto y = c_lo[1]; y <= c_hi[1]; ++y)
      for (auto z = c_lo[2]; z <= c_hi[2]; ++z) {
        const LatticeVec c{x, y, z};
        if (out.contains(c)) continue;
        const Vec3 box_lo = lattice_shift(c, edge);
        if (detail::hull_box_distance(verts, box_lo, box_lo + edge) <= tol) out.insert(c);
      }
  return out;
}

std::vector<LatticeVec> intersecting_offsets(const CellSet& region, const CellSet& chain_cells) {
  // parent + v meets the region exactly when (chain_cells + v) shares a cell with it.
  std::set<LatticeVec> offsets;
  for (const auto& r : region)
    for (const auto& c : chain_cells) offsets.insert(r - c);
  return {offsets.begin(), offsets.end()};
}

std::vector<Image> images_intersecting(const CellSet& region, const Cell& cell, ChainId chain_id,
                                       const Vec3& edge) {
  const Image parent = unfold(cell, chain_id);
  const CellSet own = minimal_unfolding(parent, edge);
  std::vector<Image> out;
  for (const auto& v : intersecting_offsets(region, own)) out.push_back(parent.translated(v, edge));
  return out;
}

}  // namespace pbclink
