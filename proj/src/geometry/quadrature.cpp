#include "pbclink/quadrature.hpp"

#include <numbers>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pbclink/errors.hpp"
#include "pbclink/gauss.hpp"

namespace pbclink {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Piece {
  double lo, hi, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

// 15-point Kronrod estimate on [lo, hi] with the embedded 7-point Gauss rule
// as error estimate. Even nonzero Kronrod indices are the Gauss nodes.
Piece rule_on(const auto& f, double lo, double hi) {
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f0 = f(mid);
  double kronrod = f0 * wk[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(mid + half * x[i]) + f(mid - half * x[i]);
    kronrod += pair * wk[i];
    if (i % 2 == 0) gauss += pair * wg[i / 2];
  }
  gauss += f0 * wg[0];
  return {lo, hi, half * kronrod, half * std::abs(kronrod - gauss)};
}

// Globally adaptive bisection on [0, 1]: always split the piece with the
// largest error estimate until the summed estimate drops below tol.
template <class F>
double adaptive(const F& f, double tol, std::size_t budget) {
  std::priority_queue<Piece> heap;
  heap.push(rule_on(f, 0.0, 1.0));
  double value = heap.top().value;
  double error = heap.top().error;
  std::size_t pieces = 1;
  while (error > tol) {
    if (pieces >= budget) throw NoConvergence("quadrature interval budget exhausted");
    const Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Piece left = rule_on(f, worst.lo, mid);
    const Piece right = rule_on(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++pieces;
    if (error <= tol) {
      // Re-add from scratch so drift from the running updates cannot
      // masquerade as convergence.
      auto copy = heap;
      value = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        value += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return value;
}

}  // namespace

double quadrature_oracle(const Segment& s1, const Segment& s2, const QuadratureOptions& opts) {
  const double eps = kContactFactor * (s1.length() + s2.length());
  if (segment_distance(s1, s2) <= eps) throw ContactError("segments touch within contact tolerance");

  const Vec3 d1 = s1.b - s1.a;
  const Vec3 d2 = s2.b - s2.a;
  const Vec3 cross = d1.cross(d2);
  const double scale = 0.25 * std::numbers::inv_pi;
  // Inner integrals carry a tenth of the budget; each feeds one outer node.
  const double inner_tol = 0.1 * opts.tol;
  const double outer_tol = 0.9 * opts.tol;

  auto outer = [&](double t) {
    const Vec3 g1 = s1.a + t * d1;
    auto inner = [&](double s) {
      const Vec3 r = g1 - (s2.a + s * d2);
      const double n = r.norm();
      return scale * cross.dot(r) / (n * n * n);
    };
    return adaptive(inner, inner_tol, opts.max_intervals);
  };
  return adaptive(outer, outer_tol, opts.max_intervals);
}

double quadrature_oracle(const Segment& s1, const Segment& s2, double tol) {
  QuadratureOptions opts;
  opts.tol = tol;
  return quadrature_oracle(s1, s2, opts);
}

}  // namespace pbclink
