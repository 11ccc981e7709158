#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pbclink/pbc.hpp"

namespace pbclink {

enum class ChainClosure {
  open,
  closed,
  mixed,  // odd-numbered chains closed
};

struct MeltSpec {
  int chain_count = 8;
  int beads_per_chain = 100;
  double bond_length = 1.0;
  Vec3 edge{10.0, 10.0, 10.0};
  std::uint64_t seed = 1;
  ChainClosure closure = ChainClosure::open;
  /// Minimum distance between bonds of different chains, over all periodic
  /// images. Zero disables the check.
  double min_separation = 0.0;
};

inline constexpr std::size_t kGenerationBudget = 10000;

/// Random melt with unwrapped fixed-bond-length chains.
///
/// Randomness comes from std::mt19937_64 seeded with spec.seed; uniforms are
/// the top 53 bits of each draw scaled by 2^-53, and directions use
/// Archimedes' projection (z uniform on [-1, 1], azimuth uniform). Open
/// chains are random walks from a uniform start. Closed chains are walks
/// whose steps are drawn from the directions that keep the first bead within
/// reach, closed by a bridge bead one bond length from both ends. Bonds too close to another chain are
/// redrawn; GenerationBudgetExceeded after kGenerationBudget redraws.
Cell generate_melt(const MeltSpec& spec);

enum class FixtureName { hopf_in_cell, fig1c_like, fig2_like, crossing_pair };

std::optional<FixtureName> fixture_from_string(std::string_view name);
std::string to_string(FixtureName name);

/// Hand-built cells:
///  - hopf_in_cell: two closed squares forming a Hopf link well inside a box
///    of edge 10; LK = +1.
///  - fig1c_like: two open chains, I crossing the +x face and J crossing the
///    +y face; exactly four images of J meet I's minimal unfolding.
///  - fig2_like: I is a closed loop through a ring of cells around an empty
///    cell, J a closed loop through that empty cell; one image of J linked
///    with I misses I's minimal unfolding, so |LK_P - LK| = 1.
///  - crossing_pair: two open chains both crossing the +x face.
Cell fixture(FixtureName name);

}  // namespace pbclink
