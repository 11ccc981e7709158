#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "pbclink/polyline.hpp"
#include "pbclink/vec.hpp"

namespace pbclink {

using ChainId = int;

/// Face snapping tolerance: 1e-9 of the shortest box edge.
inline constexpr double kFaceFactor = 1e-9;

/// A maximal piece of a chain inside the box, in wrapped coordinates.
/// Interior vertices lie strictly inside or on a face; the end points are
/// either chain ends or face points paired with the opposite face.
struct Arc {
  std::vector<Vec3> points;
};

struct BasePoint {
  std::size_t arc = 0;
  std::size_t vertex = 0;
};

struct GeneratingChain {
  ChainId id = 0;
  std::vector<Arc> arcs;
  BasePoint base;
  bool closed = false;
  /// Unwrapped coordinates the chain was built from (after face snapping and
  /// edge jitter). Empty for hand-assembled chains.
  std::optional<Polyline> source;
};

/// Orthorhombic periodic box with its generating chains.
struct Cell {
  Vec3 edge{1.0, 1.0, 1.0};
  std::vector<GeneratingChain> chains;

  const GeneratingChain& chain(ChainId id) const;
  double face_tolerance() const { return kFaceFactor * edge.minCoeff(); }
};

/// An unfolded connected copy of a generating chain. `offset` is the lattice
/// translation from the parent image (base point in the generating cell).
struct Image {
  ChainId chain_id = 0;
  LatticeVec offset;
  Polyline polyline;
  /// Arc indices in traversal order and the lattice cell each copy occupies,
  /// relative to the parent image.
  std::vector<std::size_t> arc_order;
  std::vector<LatticeVec> arc_cells;

  Image translated(const LatticeVec& v, const Vec3& edge) const;
};

using CellSet = std::set<LatticeVec>;

/// Wraps unwrapped chains into the box and splits them into arcs at face
/// crossings. Chain ids are the input positions. Vertices within the face
/// tolerance of a face are snapped onto it; vertices or crossings on a box
/// edge or corner are nudged off it with a warning on std::clog. Throws
/// DegenerateGeometry when nudging does not resolve the contact and
/// GeometryError on invalid edges.
Cell build_cell(std::span<const Polyline> raw_chains, const Vec3& edge);

/// Parent image of a chain: arcs followed along their face pairings from the
/// base-point arc. Throws NonCompactChain when an arc recurs with a nonzero
/// accumulated offset, and DegenerateGeometry when the arcs do not form one
/// connected chain.
Image unfold(const Cell& cell, ChainId chain_id);

/// Lattice cells whose closed box contains at least one point of the image.
CellSet minimal_unfolding(const Image& img, const Vec3& edge);

/// Lattice cells whose closed box meets the convex hull of the image's
/// vertices. Always a superset of minimal_unfolding.
CellSet minimal_topological_cell(const Image& img, const Vec3& edge);

/// Every lattice translate of the chain's parent image that touches the
/// closed union of `region`'s boxes, ordered by offset.
std::vector<Image> images_intersecting(const CellSet& region, const Cell& cell, ChainId chain_id,
                                       const Vec3& edge);

/// Offsets v such that parent(chain) + v touches `region`, given the
/// chain's own minimal unfolding.
std::vector<LatticeVec> intersecting_offsets(const CellSet& region, const CellSet& chain_cells);

/// Cells whose closed box contains p (up to 8 at a corner).
CellSet cells_containing(const Vec3& p, const Vec3& edge, double tol);

}  // namespace pbclink
