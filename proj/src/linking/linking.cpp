#include "pbclink/linking.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "pbclink/compensated_sum.hpp"
#include "pbclink/errors.hpp"
#include "pbclink/gauss.hpp"

namespace pbclink {

namespace {

using Kernel = double (*)(const Polyline&, const Polyline&);

Kernel kernel_for(Execution exec) {
  switch (exec) {
    case Execution::serial: return &gauss_linking_serial;
    case Execution::reference: return &gauss_linking_reference;
    case Execution::parallel: break;
  }
  return &gauss_linking;
}

struct Unfolded {
  Image image;
  CellSet cells;
};

Unfolded unfold_with_cells(const Cell& cell, ChainId id, const LatticeVec& offset = {}) {
  Image img = unfold(cell, id);
  if (!offset.is_zero()) img = img.translated(offset, cell.edge);
  CellSet cells = minimal_unfolding(img, cell.edge);
  return {std::move(img), std::move(cells)};
}

// j must be a parent image (offset zero) so that the offsets returned by
// intersecting_offsets are offsets from J's parent.
LKResult local_lk(const Unfolded& i, const Unfolded& j, const Vec3& edge, Kernel kernel) {
  LKResult out;
  out.chain_pair = {i.image.chain_id, j.image.chain_id};
  CompensatedSum sum;
  for (const auto& v : intersecting_offsets(i.cells, j.cells)) {
    const double g = kernel(i.image.polyline, j.image.polyline.translated(lattice_shift(v, edge)));
    out.contributing_images.push_back({v, g});
    sum.add(g);
  }
  out.value = sum.value();
  return out;
}

void require_distinct(ChainId i, ChainId j) {
  if (i == j) throw Error("linking of a chain with itself is not supported");
}

std::vector<LatticeVec> shell(int k) {
  std::vector<LatticeVec> out;
  for (int x = -k; x <= k; ++x)
    for (int y = -k; y <= k; ++y)
      for (int z = -k; z <= k; ++z) {
        const LatticeVec v{x, y, z};
        if (v.chebyshev() == k) out.push_back(v);
      }
  return out;
}

}  // namespace

std::string to_string(PairStatus s) {
  switch (s) {
    case PairStatus::ok: return "ok";
    case PairStatus::contact: return "contact";
    case PairStatus::degenerate_closure: return "degenerate_closure";
    case PairStatus::error: return "error";
  }
  return "error";
}

PairStatus pair_status_from_string(const std::string& s) {
  if (s == "ok") return PairStatus::ok;
  if (s == "contact") return PairStatus::contact;
  if (s == "degenerate_closure") return PairStatus::degenerate_closure;
  if (s == "error") return PairStatus::error;
  throw Error("unknown pair status '" + s + "'");
}

LKResult local_periodic_linking(const Cell& cell, ChainId i_id, ChainId j_id, const LatticeVec& i_offset) {
  require_distinct(i_id, j_id);
  return local_lk(unfold_with_cells(cell, i_id, i_offset), unfold_with_cells(cell, j_id), cell.edge,
                  &gauss_linking);
}

double periodic_linking_partial(const Cell& cell, ChainId i_id, ChainId j_id, int last_shell) {
  require_distinct(i_id, j_id);
  const Image i = unfold(cell, i_id);
  const Image j = unfold(cell, j_id);
  CompensatedSum sum;
  for (int k = 0; k <= last_shell; ++k)
    for (const auto& v : shell(k)) sum.add(gauss_linking(i.polyline, j.polyline.translated(lattice_shift(v, cell.edge))));
  return sum.value();
}

LKPResult periodic_linking_truncated(const Cell& cell, ChainId i_id, ChainId j_id, const LKPOptions& opts) {
  require_distinct(i_id, j_id);
  if (!(opts.tol > 0.0) || opts.max_shells < 1) throw Error("LK_P needs tol > 0 and max_shells >= 1");
  const Unfolded i = unfold_with_cells(cell, i_id);
  const Unfolded j = unfold_with_cells(cell, j_id);

  // Shells up to `reach` hold every image that meets the minimal unfolding.
  std::int64_t reach = 1;
  for (const auto& v : intersecting_offsets(i.cells, j.cells)) reach = std::max(reach, v.chebyshev());

  LKPResult out;
  CompensatedSum total;
  for (int k = 0; k <= opts.max_shells; ++k) {
    CompensatedSum shell_abs;
    for (const auto& v : shell(k)) {
      const double g = gauss_linking(i.image.polyline, j.image.polyline.translated(lattice_shift(v, cell.edge)));
      total.add(g);
      shell_abs.add(std::fabs(g));
    }
    out.shells_used = k;
    out.last_shell_contribution = shell_abs.value();
    if (k >= reach && out.last_shell_contribution < opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.value = total.value();
  return out;
}

double lk_lkp_diagnostic(const Cell& cell, ChainId i_id, ChainId j_id, const LKPOptions& opts) {
  const LKPResult lkp = periodic_linking_truncated(cell, i_id, j_id, opts);
  if (!lkp.converged)
    throw NotConverged("LK_P for chains " + std::to_string(i_id) + ", " + std::to_string(j_id) +
                       " did not converge within " + std::to_string(opts.max_shells) + " shells");
  return std::fabs(lkp.value - local_periodic_linking(cell, i_id, j_id).value);
}

LinkingReport pairwise_lk(const Cell& cell, Execution exec) {
  const std::size_t n = cell.chains.size();
  if (n < 2) throw Error("pairwise LK needs at least two chains");
  LinkingReport report;
  report.edge = cell.edge;
  report.chain_count = n;

  std::vector<ChainId> ids;
  for (const auto& c : cell.chains) {
    ids.push_back(c.id);
    report.bead_counts.push_back(c.source ? c.source->vertex_count() : 0);
  }
  std::sort(ids.begin(), ids.end());

  // Unfold once per chain; a chain that cannot be unfolded fails its pairs.
  std::vector<Unfolded> unfolded(n);
  std::vector<std::string> unfold_error(n);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      unfolded[k] = unfold_with_cells(cell, ids[k]);
    } catch (const Error& e) {
      unfold_error[k] = e.what();
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  report.rows.resize(pairs.size());

  const Kernel kernel = kernel_for(exec);
  const bool threads = exec == Execution::parallel && pairs.size() >= static_cast<std::size_t>(omp_get_max_threads());
  const auto count = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1) if (threads)
  for (long long p = 0; p < count; ++p) {
    const auto [a, b] = pairs[static_cast<std::size_t>(p)];
    PairRow& row = report.rows[static_cast<std::size_t>(p)];
    row.chain_i = ids[a];
    row.chain_j = ids[b];
    if (!unfold_error[a].empty() || !unfold_error[b].empty()) {
      row.status = PairStatus::error;
      row.message = unfold_error[a].empty() ? unfold_error[b] : unfold_error[a];
      continue;
    }
    try {
      const LKResult r = local_lk(unfolded[a], unfolded[b], cell.edge, kernel);
      row.value = r.value;
      row.image_count = r.contributing_images.size();
    } catch (const ContactError& e) {
      row.status = PairStatus::contact;
      row.message = e.what();
    } catch (const Error& e) {
      row.status = PairStatus::error;
      row.message = e.what();
    }
  }
  return report;
}

}  // namespace pbclink
