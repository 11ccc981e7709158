#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pbclink/errors.hpp"
#include "pbclink/synth.hpp"

namespace pbclink {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Vec3 direction() { return cap_direction(Vec3::UnitZ(), -1.0); }

  // Uniform direction u with u.axis >= min_cos; axis is a unit vector.
  Vec3 cap_direction(const Vec3& axis, double min_cos) {
    const double z = min_cos + (1.0 - min_cos) * uniform();
    const double phi = 2.0 * std::numbers::pi * uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 helper = std::fabs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = axis.cross(helper).normalized();
    const Vec3 e2 = axis.cross(e1);
    return r * std::cos(phi) * e1 + r * std::sin(phi) * e2 + z * axis;
  }

 private:
  std::mt19937_64 engine_;
};

// Bonds of already placed chains, checked under the minimum-image
// convention; bonds are shorter than half the box so the nearest image of
// a close pair is the minimum image of their midpoints.
class ContactGrid {
 public:
  ContactGrid(const Vec3& edge, double min_sep) : edge_(edge), min_sep_(min_sep) {}

  bool clear(const Segment& s) const {
    if (min_sep_ <= 0.0) return true;
    const Vec3 mid = 0.5 * (s.a + s.b);
    for (const auto& t : placed_) {
      Vec3 d = 0.5 * (t.a + t.b) - mid;
      for (int a = 0; a < 3; ++a) d[a] -= edge_[a] * std::round(d[a] / edge_[a]);
      const Vec3 shift = d - (0.5 * (t.a + t.b) - mid);
      if (segment_distance(s, {t.a + shift, t.b + shift}) < min_sep_) return false;
    }
    return true;
  }

  void add(const Polyline& p) {
    if (min_sep_ <= 0.0) return;
    for (std::size_t k = 0; k < p.segment_count(); ++k) placed_.push_back(p.segment(k));
  }

 private:
  Vec3 edge_;
  double min_sep_;
  std::vector<Segment> placed_;
};

struct Budget {
  std::size_t used = 0;
  void spend() {
    if (++used > kGenerationBudget)
      throw GenerationBudgetExceeded("rejection sampling exceeded " + std::to_string(kGenerationBudget) +
                                     " redraws");
  }
};

// Bead on the circle of points one bond from both a and b.
Vec3 bridge_bead(const Vec3& a, const Vec3& b, double bond, Rng& rng) {
  const Vec3 axis = (b - a).normalized();
  const double half = 0.5 * (b - a).norm();
  const double radius = std::sqrt(bond * bond - half * half);
  Vec3 helper = std::fabs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 e1 = axis.cross(helper).normalized();
  const Vec3 e2 = axis.cross(e1);
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return 0.5 * (a + b) + radius * (std::cos(theta) * e1 + std::sin(theta) * e2);
}

Polyline grow_chain(const MeltSpec& spec, bool closed, const ContactGrid& grid, Rng& rng, Budget& budget) {
  const auto n = static_cast<std::size_t>(spec.beads_per_chain);
  const double b = spec.bond_length;
  constexpr int kTriesPerBead = 200;
  while (true) {
    std::vector<Vec3> beads;
    beads.push_back({spec.edge.x() * rng.uniform(), spec.edge.y() * rng.uniform(), spec.edge.z() * rng.uniform()});
    const std::size_t walk_end = closed ? n - 1 : n;  // closed: last bead is the bridge
    // A closed chain must be able to get home: bead k may be at most
    // (n - k - 0.5) bonds from the first bead, so steps are drawn from the
    // cap of directions that keep that reach.
    auto step = [&](const Vec3& from, const Vec3& home, std::size_t k) -> Vec3 {
      if (!closed) return rng.direction();
      const Vec3 to_home = home - from;
      const double d = to_home.norm();
      const double reach = (static_cast<double>(n - k) - 0.5) * b;
      if (d < 1e-12 * b) return rng.direction();
      const double min_cos = (d * d + b * b - reach * reach) / (2.0 * b * d);
      if (min_cos <= -1.0) return rng.direction();
      return rng.cap_direction(to_home / d, std::min(min_cos, 1.0));
    };
    bool stuck = false;
    while (beads.size() < walk_end && !stuck) {
      const std::size_t k = beads.size();
      int tries = 0;
      while (true) {
        const Vec3 next = beads.back() + b * step(beads.back(), beads.front(), k);
        if (grid.clear({beads.back(), next})) {
          beads.push_back(next);
          break;
        }
        budget.spend();
        if (++tries >= kTriesPerBead) {
          stuck = true;
          break;
        }
      }
    }
    if (stuck) continue;
    if (closed) {
      int tries = 0;
      while (true) {
        if ((beads.back() - beads.front()).norm() < 1e-6 * b) {
          budget.spend();
          stuck = true;
          break;
        }
        const Vec3 bridge = bridge_bead(beads.back(), beads.front(), b, rng);
        if (grid.clear({beads.back(), bridge}) && grid.clear({bridge, beads.front()})) {
          beads.push_back(bridge);
          break;
        }
        budget.spend();
        if (++tries >= kTriesPerBead) {
          stuck = true;
          break;
        }
      }
      if (stuck) continue;
    }
    return Polyline(std::move(beads), closed);
  }
}

void validate(const MeltSpec& spec) {
  if (spec.chain_count < 1) throw Error("melt needs at least one chain");
  if (spec.beads_per_chain < 3) throw Error("chains need at least three beads");
  if (!(spec.bond_length > 0.0)) throw Error("bond length must be positive");
  if (!all_finite(spec.edge) || (spec.edge.array() <= 0.0).any()) throw Error("box edges must be positive");
  if (!(spec.bond_length < 0.5 * spec.edge.minCoeff())) throw Error("bond length must be below half the shortest edge");
  if (!(spec.min_separation >= 0.0)) throw Error("minimum separation must be nonnegative");
}

}  // namespace

Cell generate_melt(const MeltSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  ContactGrid grid(spec.edge, spec.min_separation);
  Budget budget;
  std::vector<Polyline> chains;
  for (int c = 0; c < spec.chain_count; ++c) {
    const bool closed = spec.closure == ChainClosure::closed || (spec.closure == ChainClosure::mixed && c % 2 == 1);
    chains.push_back(grow_chain(spec, closed, grid, rng, budget));
    grid.add(chains.back());
  }
  return build_cell(chains, spec.edge);
}

}  // namespace pbclink
