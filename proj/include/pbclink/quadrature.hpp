#pragma once

#include <cstddef>

#include "pbclink/polyline.hpp"

namespace pbclink {

struct QuadratureOptions {
  double tol = 1e-9;  // absolute
  std::size_t max_intervals = 4000;  // per one-dimensional integral
};

/// Nested adaptive Gauss-Kronrod quadrature of the Gauss linking integrand
/// over a segment pair. Independent of the solid-angle kernel; used to check
/// it. Throws NoConvergence when an interval budget is exhausted and
/// ContactError under the same condition as gauss_segment_pair.
double quadrature_oracle(const Segment& s1, const Segment& s2, double tol);
double quadrature_oracle(const Segment& s1, const Segment& s2, const QuadratureOptions& opts);

}  // namespace pbclink
