#include "pbclink/synth.hpp"

#include <vector>

namespace pbclink {

namespace {

Cell hopf_in_cell() {
  const Vec3 c(5.0, 5.0, 5.0);
  const std::vector<Polyline> chains{
      Polyline::ring({c + Vec3(1, 1, 0), c + Vec3(-1, 1, 0), c + Vec3(-1, -1, 0), c + Vec3(1, -1, 0)}),
      Polyline::ring({c + Vec3(0, 0, -1), c + Vec3(0, 0, 1), c + Vec3(2, 0, 1), c + Vec3(2, 0, -1)}),
  };
  return build_cell(chains, {10.0, 10.0, 10.0});
}

// I spans cells x = 0..1, J spans y = 0..1, at different heights; the
// images of J meeting I's cells sit at offsets (0,0,0), (0,-1,0),
// (1,0,0), (1,-1,0).
Cell fig1c_like() {
  const std::vector<Polyline> chains{
      Polyline::open({{2.0, 4.5, 3.0}, {7.0, 5.5, 7.5}, {13.0, 5.0, 2.5}, {18.0, 5.2, 7.0}}),
      Polyline::open({{5.0, 2.0, 5.0}, {4.5, 8.0, 2.0}, {5.5, 13.0, 8.0}, {5.0, 18.0, 4.0}}),
  };
  return build_cell(chains, {10.0, 10.0, 10.0});
}

// I loops at z = 5 through the eleven cells around cell (1,1,0), two cells
// thick on the -x side. J has one vertical side through (1,1,0) and the
// other through (3,1,0), joined above and below I's layer. J misses I's
// cells but links I; the image J - (2,0,0), whose far side would cancel
// it, runs through the thick side.
Cell fig2_like() {
  const std::vector<Polyline> chains{
      Polyline::ring({{-4.0, 4.0, 5.0},
                      {6.0, 3.5, 5.6},
                      {16.0, 4.3, 4.4},
                      {26.0, 4.0, 5.0},
                      {26.6, 14.0, 5.6},
                      {26.2, 24.0, 4.5},
                      {26.0, 26.0, 5.0},
                      {16.0, 26.5, 5.5},
                      {6.0, 25.6, 4.6},
                      {-4.0, 26.0, 5.0},
                      {-4.4, 19.0, 5.5},
                      {-4.0, 13.0, 5.0},
                      {7.0, 13.0, 5.0},
                      {7.0, 8.0, 5.0}}),
      Polyline::ring({{15.0, 15.0, -3.0},
                      {15.3, 15.2, 6.0},
                      {15.0, 15.0, 13.0},
                      {25.0, 17.0, 14.0},
                      {35.5, 15.0, 12.5},
                      {35.2, 14.8, 4.0},
                      {35.5, 15.0, -3.0},
                      {24.0, 12.0, -4.5}}),
  };
  return build_cell(chains, {10.0, 10.0, 10.0});
}

Cell crossing_pair() {
  const std::vector<Polyline> chains{
      Polyline::open({{7.0, 4.0, 5.0}, {9.0, 4.5, 5.5}, {11.0, 4.0, 5.0}, {13.0, 4.2, 4.8}}),
      Polyline::open({{8.0, 6.0, 3.0}, {9.5, 5.5, 6.0}, {10.5, 6.5, 6.5}, {12.0, 6.0, 4.0}}),
  };
  return build_cell(chains, {10.0, 10.0, 10.0});
}

}  // namespace

std::optional<FixtureName> fixture_from_string(std::string_view name) {
  if (name == "hopf_in_cell") return FixtureName::hopf_in_cell;
  if (name == "fig1c_like") return FixtureName::fig1c_like;
  if (name == "fig2_like") return FixtureName::fig2_like;
  if (name == "crossing_pair") return FixtureName::crossing_pair;
  return std::nullopt;
}

std::string to_string(FixtureName name) {
  switch (name) {
    case FixtureName::hopf_in_cell: return "hopf_in_cell";
    case FixtureName::fig1c_like: return "fig1c_like";
    case FixtureName::fig2_like: return "fig2_like";
    case FixtureName::crossing_pair: return "crossing_pair";
  }
  return "unknown";
}

Cell fixture(FixtureName name) {
  switch (name) {
    case FixtureName::hopf_in_cell: return hopf_in_cell();
    case FixtureName::fig1c_like: return fig1c_like();
    case FixtureName::fig2_like: return fig2_like();
    case FixtureName::crossing_pair: return crossing_pair();
  }
  return hopf_in_cell();
}

}  // namespace pbclink
