#include <algorithm>
#include <optional>
#include <string>

#include "pbclink/errors.hpp"
#include "pbclink/pbc.hpp"

namespace pbclink {

namespace {

struct Link {
  std::size_t arc;
  LatticeVec step;  // cell of the successor relative to this arc's cell
};

// The face an arc end lies on, as the lattice step into the neighbouring cell.
std::optional<LatticeVec> face_step(const Vec3& p, const Vec3& edge, double tol) {
  std::optional<LatticeVec> step;
  for (int a = 0; a < 3; ++a) {
    int dir = 0;
    if (std::fabs(p[a]) <= tol) dir = -1;
    else if (std::fabs(p[a] - edge[a]) <= tol) dir = 1;
    if (dir == 0) continue;
    if (step) return std::nullopt;  // edge or corner: never paired
    LatticeVec s;
    s[a] = dir;
    step = s;
  }
  return step;
}

bool same_point(const Vec3& a, const Vec3& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

std::vector<std::optional<Link>> successors(const GeneratingChain& chain, const Vec3& edge, double tol) {
  const std::size_t n = chain.arcs.size();
  std::vector<std::optional<Link>> succ(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& end = chain.arcs[k].points.back();
    const auto step = face_step(end, edge, tol);
    if (!step) continue;
    const Vec3 target = end - lattice_shift(*step, edge);
    for (std::size_t m = 0; m < n; ++m) {
      if (same_point(chain.arcs[m].points.front(), target, tol)) {
        succ[k] = Link{m, *step};
        break;
      }
    }
  }
  return succ;
}

}  // namespace

Image Image::translated(const LatticeVec& v, const Vec3& edge) const {
  Image out(*this);
  out.offset = offset + v;
  out.polyline = polyline.translated(lattice_shift(v, edge));
  return out;
}

Image unfold(const Cell& cell, ChainId chain_id) {
  const GeneratingChain& chain = cell.chain(chain_id);
  const std::size_t n = chain.arcs.size();
  if (n == 0) throw DegenerateGeometry("chain " + std::to_string(chain_id) + " has no arcs");
  const double tol = 10.0 * cell.face_tolerance();
  const auto succ = successors(chain, cell.edge, tol);

  std::vector<std::optional<std::size_t>> pred(n);
  std::vector<LatticeVec> pred_step(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!succ[k]) continue;
    if (pred[succ[k]->arc])
      throw DegenerateGeometry("chain " + std::to_string(chain_id) + ": two arcs enter arc " +
                               std::to_string(succ[k]->arc));
    pred[succ[k]->arc] = k;
    pred_step[succ[k]->arc] = succ[k]->step;
  }

  // Walk back from the base arc to the chain start, or around a cycle.
  const std::size_t base = chain.base.arc;
  std::size_t start = base;
  LatticeVec start_cell;
  bool cycle = false;
  for (std::size_t steps = 0; pred[start]; ++steps) {
    if (steps > n) throw DegenerateGeometry("chain " + std::to_string(chain_id) + ": arc pairing loops");
    start_cell = start_cell - pred_step[start];
    start = *pred[start];
    if (start == base) {
      if (!start_cell.is_zero())
        throw NonCompactChain("chain " + std::to_string(chain_id) +
                              " returns to its base arc displaced by a lattice vector");
      cycle = true;
      break;
    }
  }

  Image img;
  img.chain_id = chain_id;
  std::vector<bool> used(n, false);
  std::size_t arc = start;
  LatticeVec at = start_cell;
  std::vector<Vec3> vertices;
  while (true) {
    if (used[arc]) {
      if (!at.is_zero() || arc != base)
        throw NonCompactChain("chain " + std::to_string(chain_id) + " revisits arc " + std::to_string(arc) +
                              " displaced by a lattice vector");
      break;
    }
    used[arc] = true;
    img.arc_order.push_back(arc);
    img.arc_cells.push_back(at);
    const Vec3 shift = lattice_shift(at, cell.edge);
    const auto& pts = chain.arcs[arc].points;
    for (std::size_t k = vertices.empty() ? 0 : 1; k < pts.size(); ++k) vertices.push_back(pts[k] + shift);
    if (!succ[arc]) break;
    at = at + succ[arc]->step;
    arc = succ[arc]->arc;
  }

  if (img.arc_order.size() != n)
    throw DegenerateGeometry("chain " + std::to_string(chain_id) + ": " + std::to_string(n - img.arc_order.size()) +
                             " arcs are not connected to the base arc");

  bool closed = cycle;
  if (cycle) {
    vertices.pop_back();  // last arc ends where the first begins
    std::rotate(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(chain.base.vertex), vertices.end());
  } else if (chain.closed) {
    if (n != 1)
      throw DegenerateGeometry("chain " + std::to_string(chain_id) + " is marked closed but its arcs do not cycle");
    closed = true;  // ring that never leaves the box
  }
  img.polyline = Polyline(std::move(vertices), closed);
  return img;
}

}  // namespace pbclink
