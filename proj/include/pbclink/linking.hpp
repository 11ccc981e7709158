#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pbclink/pbc.hpp"

namespace pbclink {

struct ImageTerm {
  LatticeVec offset;  // of the J image relative to J's parent
  double gauss = 0.0;
};

struct LKResult {
  double value = 0.0;
  std::vector<ImageTerm> contributing_images;
  std::pair<ChainId, ChainId> chain_pair{0, 0};
};

struct LKPResult {
  double value = 0.0;
  int shells_used = 0;  // index of the last shell summed
  double last_shell_contribution = 0.0;  // sum of |terms| in that shell
  bool converged = false;
};

struct LKPOptions {
  double tol = 1e-4;
  int max_shells = 12;
};

/// Local periodic linking number: Gauss linking of one image of I with every
/// image of J that meets I's minimal unfolding. The image of I is the parent
/// translated by `i_offset`.
LKResult local_periodic_linking(const Cell& cell, ChainId i_id, ChainId j_id, const LatticeVec& i_offset = {});

/// Periodic linking number truncated over Chebyshev shells of J offsets.
/// Convergence is only tested once every image that meets I's minimal
/// unfolding has been included.
LKPResult periodic_linking_truncated(const Cell& cell, ChainId i_id, ChainId j_id, const LKPOptions& opts = {});

/// Sum over shells 0..last_shell with no convergence test.
double periodic_linking_partial(const Cell& cell, ChainId i_id, ChainId j_id, int last_shell);

/// |LK_P - LK|; above 0.5 it flags a linked image outside the minimal
/// unfolding. Throws NotConverged when LK_P does not converge.
double lk_lkp_diagnostic(const Cell& cell, ChainId i_id, ChainId j_id, const LKPOptions& opts = {});

enum class PairStatus { ok, contact, degenerate_closure, error };

std::string to_string(PairStatus s);
PairStatus pair_status_from_string(const std::string& s);

struct PairRow {
  ChainId chain_i = 0;
  ChainId chain_j = 0;
  double value = 0.0;
  PairStatus status = PairStatus::ok;
  std::size_t image_count = 0;
  std::string message;
};

struct LinkingReport {
  std::string frame_id;
  Vec3 edge{1.0, 1.0, 1.0};
  std::size_t chain_count = 0;
  std::vector<std::size_t> bead_counts;
  std::vector<PairRow> rows;
};

enum class Execution {
  parallel,   // OpenMP over pairs, or over kernel rows when pairs are few
  serial,     // same kernel on one thread
  reference,  // one thread through gauss_linking_reference
};

/// LK for every unordered pair, rows ordered by (min id, max id). Per-pair
/// failures are recorded in the row status.
LinkingReport pairwise_lk(const Cell& cell, Execution exec = Execution::parallel);

}  // namespace pbclink
