#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pbclink/errors.hpp"
#include "pbclink/gauss.hpp"
#include "pbclink/quadrature.hpp"

using namespace pbclink;

namespace {

Polyline hopf_square() { return Polyline::ring({{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}}); }
Polyline hopf_rectangle() { return Polyline::ring({{0, 0, -1}, {0, 0, 1}, {2, 0, 1}, {2, 0, -1}}); }

Segment random_segment(std::mt19937_64& rng) {
  return {oracle::random_point(rng), oracle::random_point(rng)};
}

// Random segment pair at least 1e-3 apart.
std::pair<Segment, Segment> random_pair(std::mt19937_64& rng) {
  while (true) {
    Segment s1 = random_segment(rng), s2 = random_segment(rng);
    if (segment_distance(s1, s2) > 1e-3) return {s1, s2};
  }
}

}  // namespace

TEST_CASE("polyline validation") {
  CHECK_THROWS_AS(Polyline::open({{0, 0, 0}}), GeometryError);
  CHECK_THROWS_AS(Polyline::ring({{0, 0, 0}, {1, 0, 0}}), GeometryError);
  CHECK_THROWS_AS(Polyline::open({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}), GeometryError);
  CHECK_THROWS_AS(Polyline::open({{0, 0, 0}, {NAN, 0, 0}}), GeometryError);
  CHECK_THROWS_AS(Polyline::ring({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 0, 0}}), GeometryError);
  const Polyline p = Polyline::ring({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  CHECK(p.segment_count() == 3);
  CHECK(p.segment(2).b == p.vertex(0));
  CHECK(Polyline::open({{0, 0, 0}, {1, 0, 0}}).segment_count() == 1);
}

TEST_CASE("segment distance") {
  CHECK(segment_distance({{0, 0, 0}, {1, 0, 0}}, {{0.5, 1, 0}, {0.5, 1, 5}}) == doctest::Approx(1.0));
  CHECK(segment_distance({{0, 0, 0}, {1, 0, 0}}, {{2, 0, 0}, {3, 0, 0}}) == doctest::Approx(1.0));
  CHECK(segment_distance({{0, 0, 0}, {1, 0, 0}}, {{0.5, -1, 0}, {0.5, 1, 0}}) == 0.0);
}

TEST_CASE("parallel offset segments give zero") {
  const Segment s1{{0, 0, 0}, {1, 0, 0}}, s2{{0, 0, 5}, {1, 0, 5}};
  CHECK(gauss_segment_pair(s1, s2) == 0.0);
  CHECK(std::fabs(quadrature_oracle(s1, s2, 1e-9)) < 1e-9);
}

TEST_CASE("skew perpendicular pair matches quadrature") {
  const Segment s1{{0, 0, 0}, {1, 0, 0}}, s2{{0.5, -0.5, 0.3}, {0.5, 0.5, 0.3}};
  const double q = quadrature_oracle(s1, s2, 1e-9);
  const double v = gauss_segment_pair(s1, s2);
  CHECK(std::fabs(v - q) < 1e-7);
  CHECK(std::fabs(v) > 0.1);
}

TEST_CASE("segment pair antisymmetry and range") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    auto [s1, s2] = random_pair(rng);
    const double v = gauss_segment_pair(s1, s2);
    CHECK(std::fabs(v) < 0.5);
    CHECK(std::fabs(gauss_segment_pair(s1.reversed(), s2) + v) <= 1e-15);
    CHECK(std::fabs(gauss_segment_pair(s1, s2.reversed()) + v) <= 1e-15);
  }
}

TEST_CASE("segment pair matches quadrature on random pairs") {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    auto [s1, s2] = random_pair(rng);
    worst = std::max(worst, std::fabs(gauss_segment_pair(s1, s2) - quadrature_oracle(s1, s2, 1e-9)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("contact is an error") {
  const Segment s1{{0, 0, 0}, {1, 0, 0}};
  CHECK_THROWS_AS(gauss_segment_pair(s1, {{0.5, -1, 0}, {0.5, 1, 0}}), ContactError);
  CHECK_THROWS_AS(gauss_segment_pair(s1, {{1, 0, 0}, {1, 1, 1}}), ContactError);
  CHECK_THROWS_AS(quadrature_oracle(s1, {{0.5, -1, 0}, {0.5, 1, 0}}, 1e-9), ContactError);
  CHECK_NOTHROW(gauss_segment_pair(s1, {{0.5, -1, 1e-6}, {0.5, 1, 1e-6}}));

  const Polyline a = Polyline::open({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  const Polyline b = Polyline::open({{5, 5, 5}, {1.5, -1, 0}, {1.5, 1, 0}});
  try {
    gauss_linking(a, b);
    FAIL("expected ContactError");
  } catch (const ContactError& e) {
    REQUIRE(e.segments());
    CHECK(e.segments()->first == 1);
    CHECK(e.segments()->second == 1);
  }
  CHECK_THROWS_AS(gauss_linking_reference(a, b), ContactError);
  CHECK_THROWS_AS(gauss_linking_serial(a, b), ContactError);
}

TEST_CASE("hopf link") {
  const double v = gauss_linking(hopf_square(), hopf_rectangle());
  CHECK(std::fabs(std::fabs(v) - 1.0) < 1e-9);
  CHECK(v == doctest::Approx(oracle::projection_linking(hopf_square(), hopf_rectangle())));
  CHECK(v == doctest::Approx(oracle::quadrature_linking(hopf_square(), hopf_rectangle())).epsilon(1e-8));
  CHECK(std::fabs(gauss_linking(hopf_square(), hopf_rectangle().translated({10, 0, 0}))) < 1e-6);
  CHECK(gauss_linking(hopf_square().reversed(), hopf_rectangle()) == doctest::Approx(-v).epsilon(1e-12));
}

TEST_CASE("distant open walks barely link") {
  std::mt19937_64 rng(3);
  const Polyline a = oracle::random_walk(rng, 50, {0, 0, 0});
  const Polyline b0 = oracle::random_walk(rng, 50, {0, 0, 0});
  const double radius = std::max(a.extent(), b0.extent());
  const Polyline b = b0.translated(Vec3(100.0 * radius, 0, 0));
  const double v = gauss_linking(a, b);
  CHECK(std::fabs(v) < 0.01);
  CHECK(std::fabs(v - oracle::quadrature_linking(a, b)) < 1e-7);
}

TEST_CASE("open walks match quadrature") {
  std::mt19937_64 rng(4);
  const Polyline a = oracle::random_walk(rng, 20, {0, 0, 0});
  const Polyline b = oracle::random_walk(rng, 20, {0.7, 0.3, 0.2});
  if (oracle::min_distance(a, b) > 1e-3) CHECK(std::fabs(gauss_linking(a, b) - oracle::quadrature_linking(a, b)) < 1e-6);
}

TEST_CASE("polyline symmetry, antisymmetry and rigid motion") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const Polyline a = oracle::random_walk(rng, 30, {0, 0, 0});
    const Polyline b = oracle::random_walk(rng, 30, oracle::random_point(rng, 2.0));
    if (oracle::min_distance(a, b) < 1e-3) continue;
    const double v = gauss_linking(a, b);
    const double scale = std::max(std::fabs(v), 1e-3);
    CHECK(std::fabs(gauss_linking(b, a) - v) <= 1e-12 * scale);
    CHECK(std::fabs(gauss_linking(a.reversed(), b) + v) <= 1e-12 * scale);
    CHECK(std::fabs(gauss_linking(a, b.reversed()) + v) <= 1e-12 * scale);

    const Eigen::Matrix3d r = oracle::random_rotation(rng);
    const Vec3 t = oracle::random_point(rng, 50.0);
    auto move = [&](const Polyline& p) {
      std::vector<Vec3> v2;
      for (const auto& x : p.vertices()) v2.push_back(r * x + t);
      return Polyline(v2, p.closed());
    };
    CHECK(std::fabs(gauss_linking(move(a), move(b)) - v) < 1e-9);
  }
}

TEST_CASE("closed polygons link in integers") {
  std::mt19937_64 rng(6);
  int linked = 0, tested = 0;
  while (tested < 200) {
    const Polyline a = oracle::random_loop(rng, 12, {0, 0, 0}, 1.0);
    const Polyline b = oracle::random_loop(rng, 12, oracle::random_point(rng, 1.0), 1.0);
    if (oracle::min_distance(a, b) < 1e-3) continue;
    ++tested;
    const double v = gauss_linking(a, b);
    CHECK(std::fabs(v - std::round(v)) < 1e-6);
    CHECK(std::round(v) == oracle::projection_linking(a, b));
    if (std::round(v) != 0.0) ++linked;
  }
  CHECK(linked > 10);
}

TEST_CASE("parallel, serial and reference kernels agree") {
  std::mt19937_64 rng(7);
  const Polyline a = oracle::random_walk(rng, 300, {0, 0, 0});
  const Polyline b = oracle::random_walk(rng, 300, {1.3, 0.2, -0.4});
  REQUIRE(oracle::min_distance(a, b) > 1e-6);
  const double par = gauss_linking(a, b);
  CHECK(par == gauss_linking_serial(a, b));
  CHECK(std::fabs(par - gauss_linking_reference(a, b)) < 1e-12);
}

TEST_CASE("close_chain") {
  const Polyline l = Polyline::open({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  const Polyline t = close_chain(l);
  CHECK(t.closed());
  CHECK(t.vertex_count() == 3);
  CHECK(t.segment(2).a == Vec3(1, 1, 0));
  CHECK(t.segment(2).b == Vec3(0, 0, 0));
  CHECK_THROWS_AS(close_chain(t), DegenerateClosure);
  CHECK_THROWS_AS(close_chain(Polyline::open({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 0, 1e-12}})), DegenerateClosure);
}

TEST_CASE("closing a nearly closed chain barely changes its linking") {
  const Polyline square = hopf_square();
  for (double gap : {1e-3, 1e-4}) {
    const double extent = 2.0 * std::sqrt(2.0);
    const double g = gap * extent;
    const Polyline open = Polyline::open({{0, 0, -1}, {0, 0, 1}, {2, 0, 1}, {2, 0, -1}, {g, 0, -1}});
    const double before = gauss_linking(square, open);
    const double after = gauss_linking(square, close_chain(open));
    CHECK(std::fabs(before - after) < 0.05);
    CHECK(std::fabs(std::fabs(after) - 1.0) < 1e-9);
  }
}

TEST_CASE("quadrature budget") {
  QuadratureOptions opts;
  opts.tol = 1e-14;
  opts.max_intervals = 2;
  CHECK_THROWS_AS(quadrature_oracle({{0, 0, 0}, {1, 0, 0}}, {{0.5, -0.5, 1e-3}, {0.5, 0.5, 1e-3}}, opts), NoConvergence);
}
