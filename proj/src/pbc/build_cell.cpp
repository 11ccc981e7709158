#include <algorithm>
#include <array>
#include <iostream>
#include <string>

#include "lattice.hpp"
#include "pbclink/errors.hpp"
#include "pbclink/pbc.hpp"

namespace pbclink {

namespace {

using detail::plane_coordinate;
using detail::plane_distance;

constexpr int kMaxJitterRounds = 4;
// Crossings closer than this many face tolerances to a second plane count
// as edge hits.
constexpr double kEdgeClearance = 100.0;
constexpr double kNudge = 1000.0;

struct Crossing {
  double t;
  Vec3 point;
};

// Signals a crossing on or next to a box edge or corner; the chain is
// retried with the segment end nearest the crossing nudged.
struct EdgeHit {
  std::size_t vertex;
};

// Snaps near-face vertices onto the face. A vertex near two or more faces
// sits on a box edge or corner and is moved 10 tolerances toward the centre
// of the cell its neighbour occupies.
void snap_vertices(std::vector<Vec3>& v, bool closed, const Vec3& edge, double tol, ChainId id) {
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::array<std::int64_t, 3> plane{};
    std::array<bool, 3> near{};
    int near_count = 0;
    for (int a = 0; a < 3; ++a) {
      near[static_cast<std::size_t>(a)] =
          plane_distance(v[k][a], edge[a], plane[static_cast<std::size_t>(a)]) <= tol;
      near_count += near[static_cast<std::size_t>(a)] ? 1 : 0;
    }
    if (near_count == 1) {
      for (int a = 0; a < 3; ++a)
        if (near[static_cast<std::size_t>(a)])
          v[k][a] = plane_coordinate(plane[static_cast<std::size_t>(a)], edge[a]);
    } else if (near_count > 1) {
      const std::size_t nb = k > 0 ? k - 1 : (closed ? n - 1 : 1);
      for (int a = 0; a < 3; ++a) {
        if (!near[static_cast<std::size_t>(a)]) continue;
        const double face = plane_coordinate(plane[static_cast<std::size_t>(a)], edge[a]);
        const double dir = v[nb][a] < face ? -1.0 : 1.0;
        v[k][a] = face + dir * 10.0 * tol;
      }
      std::clog << "pbclink: warning: chain " << id << " vertex " << k
                << " lies on a box edge or corner; moved off by " << 10.0 * tol << "\n";
    }
  }
}

std::vector<Crossing> crossings(const Vec3& p, const Vec3& q, const Vec3& edge, double tol,
                                std::size_t start_vertex, std::size_t end_vertex) {
  const double clearance = kEdgeClearance * tol;
  auto hit = [&](double t) { return EdgeHit{t < 0.5 ? start_vertex : end_vertex}; };
  std::vector<Crossing> out;
  for (int a = 0; a < 3; ++a) {
    const double lo = std::min(p[a], q[a]);
    const double hi = std::max(p[a], q[a]);
    if (lo == hi) continue;
    const auto first = static_cast<std::int64_t>(std::ceil(lo / edge[a])) - 1;
    const auto last = static_cast<std::int64_t>(std::floor(hi / edge[a])) + 1;
    for (std::int64_t j = first; j <= last; ++j) {
      const double x = plane_coordinate(j, edge[a]);
      if (!(lo < x && x < hi)) continue;
      const double t = (x - p[a]) / (q[a] - p[a]);
      Vec3 point = p + t * (q - p);
      point[a] = x;
      for (int b = 0; b < 3; ++b) {
        std::int64_t k = 0;
        if (b != a && plane_distance(point[b], edge[b], k) <= clearance) throw hit(t);
      }
      out.push_back({t, point});
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
  const double len = (q - p).norm();
  for (std::size_t k = 1; k < out.size(); ++k)
    if ((out[k].t - out[k - 1].t) * len <= clearance) throw hit(out[k].t);
  return out;
}

Vec3 wrap_into(const Vec3& p, const LatticeVec& c, const Vec3& edge, double tol) {
  Vec3 w = p - lattice_shift(c, edge);
  for (int a = 0; a < 3; ++a) {
    if (std::fabs(w[a]) <= tol) w[a] = 0.0;
    else if (std::fabs(w[a] - edge[a]) <= tol) w[a] = edge[a];
  }
  return w;
}

void push_unique(Arc& arc, const Vec3& p) {
  if (arc.points.empty() || arc.points.back() != p) arc.points.push_back(p);
}

struct Split {
  std::vector<Arc> arcs;
  std::vector<LatticeVec> cells;
};

Split split_into_arcs(const std::vector<Vec3>& v, bool closed, const Vec3& edge, double tol, ChainId id) {
  Split s;
  const std::size_t n = v.size();
  const std::size_t segments = closed ? n : n - 1;
  LatticeVec cur;
  bool started = false;
  for (std::size_t k = 0; k < segments; ++k) {
    const std::size_t next = (k + 1) % n;
    const Vec3& p = v[k];
    const Vec3& q = v[next];
    const auto cross = crossings(p, q, edge, tol, k, next);
    // Pieces between consecutive split parameters; each lies in one cell.
    for (std::size_t piece = 0; piece <= cross.size(); ++piece) {
      const Vec3& from = piece == 0 ? p : cross[piece - 1].point;
      const Vec3& to = piece == cross.size() ? q : cross[piece].point;
      const LatticeVec cell = detail::cell_of(0.5 * (from + to), edge);
      if (!started) {
        cur = cell;
        s.arcs.emplace_back();
        s.cells.push_back(cur);
        push_unique(s.arcs.back(), wrap_into(from, cur, edge, tol));
        started = true;
      } else if (cell != cur) {
        const LatticeVec step = cell - cur;
        if (step.chebyshev() != 1 || std::abs(step[0]) + std::abs(step[1]) + std::abs(step[2]) != 1)
          throw DegenerateGeometry("chain " + std::to_string(id) + " passes through a box edge at vertex " +
                                   std::to_string(k));
        push_unique(s.arcs.back(), wrap_into(from, cur, edge, tol));
        cur = cell;
        s.arcs.emplace_back();
        s.cells.push_back(cur);
        push_unique(s.arcs.back(), wrap_into(from, cur, edge, tol));
      }
      if (piece == cross.size()) push_unique(s.arcs.back(), wrap_into(to, cur, edge, tol));
    }
  }
  return s;
}

GeneratingChain make_chain(const Polyline& raw, ChainId id, const Vec3& edge, double tol) {
  std::vector<Vec3> v(raw.vertices().begin(), raw.vertices().end());
  const bool closed = raw.closed();
  snap_vertices(v, closed, edge, tol, id);

  Split split;
  for (int round = 0;; ++round) {
    try {
      split = split_into_arcs(v, closed, edge, tol, id);
      break;
    } catch (const EdgeHit& hit) {
      if (round >= kMaxJitterRounds)
        throw DegenerateGeometry("chain " + std::to_string(id) +
                                 " keeps crossing a box edge after jitter near vertex " +
                                 std::to_string(hit.vertex));
      const Vec3 nudge = kNudge * (round + 1) * tol * Vec3(1.0, -0.618033988749895, 0.414213562373095);
      v[hit.vertex] += nudge;
      std::clog << "pbclink: warning: chain " << id << " crosses a box edge next to vertex " << hit.vertex
                << "; vertex nudged by " << nudge.norm() << "\n";
    }
  }

  GeneratingChain chain;
  chain.id = id;
  chain.closed = closed;
  chain.source = Polyline(v, closed);
  chain.arcs = std::move(split.arcs);

  if (closed) {
    Arc& first = chain.arcs.front();
    if (chain.arcs.size() == 1) {
      // Never left the box: drop the repeated start to form a ring arc.
      if (first.points.size() > 1 && first.points.back() == first.points.front()) first.points.pop_back();
      chain.base = {0, 0};
    } else if (split.cells.back() == split.cells.front()) {
      // The closing run and the opening run share a cell: join them so that
      // every arc ends on a face.
      Arc merged = std::move(chain.arcs.back());
      chain.arcs.pop_back();
      const std::size_t base_vertex = merged.points.size() - 1;
      merged.points.insert(merged.points.end(), first.points.begin() + 1, first.points.end());
      chain.arcs.front() = std::move(merged);
      chain.base = {0, base_vertex};
    } else {
      chain.base = {0, 0};
    }
  }
  return chain;
}

}  // namespace

const GeneratingChain& Cell::chain(ChainId id) const {
  for (const auto& c : chains)
    if (c.id == id) return c;
  throw Error("no chain with id " + std::to_string(id));
}

Cell build_cell(std::span<const Polyline> raw_chains, const Vec3& edge) {
  if (!all_finite(edge) || (edge.array() <= 0.0).any()) throw GeometryError("box edges must be positive");
  Cell cell;
  cell.edge = edge;
  const double tol = cell.face_tolerance();
  cell.chains.reserve(raw_chains.size());
  for (std::size_t k = 0; k < raw_chains.size(); ++k)
    cell.chains.push_back(make_chain(raw_chains[k], static_cast<ChainId>(k), edge, tol));
  return cell;
}

}  // namespace pbclink
