#pragma once

#include <cstddef>

#include "pbclink/polyline.hpp"

namespace pbclink {

/// Contact tolerance for a segment pair: 1e-9 times the summed lengths.
inline constexpr double kContactFactor = 1e-9;

/// Relative threshold under which the triple product of a segment pair is
/// treated as zero (coplanar configuration, no solid angle).
inline constexpr double kCoplanarFactor = 1e-14;

/// Exact Gauss double integral over one pair of oriented straight segments,
/// evaluated as the signed solid angle of the parallelogram {q - p} over 4π.
/// The result lies in (-1/2, 1/2). Throws ContactError when the segments are
/// within the contact tolerance.
double gauss_segment_pair(const Segment& s1, const Segment& s2);

/// Gauss linking number of two polylines, including closing segments.
///
/// Rows (segments of p1) are distributed over OpenMP threads. Each row is
/// summed with compensated summation and the row totals are combined in row
/// order, so the value does not depend on the thread count. Throws
/// ContactError carrying the lowest offending (row, column) segment pair.
double gauss_linking(const Polyline& p1, const Polyline& p2);

/// The row kernel of gauss_linking on the calling thread only. Bitwise equal
/// to gauss_linking.
double gauss_linking_serial(const Polyline& p1, const Polyline& p2);

/// Serial reference: one compensated accumulator over all segment pairs in
/// row-major order, each pair evaluated by gauss_segment_pair.
double gauss_linking_reference(const Polyline& p1, const Polyline& p2);

/// Marks an open polyline closed; the implied closing segment joins the last
/// vertex back to the first. Throws DegenerateClosure for already-closed input
/// or when the end points coincide within the contact tolerance.
Polyline close_chain(const Polyline& p);

}  // namespace pbclink
