#include <limits>
#include <string>
#include <vector>

#include "pbclink/compensated_sum.hpp"
#include "pbclink/errors.hpp"
#include "pbclink/gauss.hpp"
#include "solid_angle.hpp"

namespace pbclink {

namespace {

constexpr std::size_t kNoContact = std::numeric_limits<std::size_t>::max();

// Row i of the segment-pair matrix. The endpoint differences of p2's vertices
// against both endpoints of segment i are formed once and shared by the two
// segments meeting at each vertex.
struct RowScratch {
  std::vector<Vec3> r0, r1;  // q_j - p_i, q_j - p_{i+1}
  std::vector<double> n0, n1;

  explicit RowScratch(std::size_t m) : r0(m), r1(m), n0(m), n1(m) {}
};

double row_sum(const Segment& s1, const std::vector<Vec3>& q, const std::vector<double>& len2,
               RowScratch& w, std::size_t& contact_col) {
  const std::size_t m = q.size();
  for (std::size_t j = 0; j < m; ++j) {
    w.r0[j] = q[j] - s1.a;
    w.r1[j] = q[j] - s1.b;
    w.n0[j] = w.r0[j].norm();
    w.n1[j] = w.r1[j].norm();
  }
  const double len1 = s1.length();
  CompensatedSum sum;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const Vec3& a = w.r0[j];
    const Vec3& b = w.r1[j];
    const Vec3& c = w.r1[j + 1];
    const Vec3& d = w.r0[j + 1];
    const double eps = detail::contact_tolerance(len1, len2[j]);
    // Midpoint separation minus half lengths bounds the segment distance from below.
    const double lower = 0.25 * (a + b + c + d).norm() - 0.5 * (len1 + len2[j]);
    if (lower <= eps && segment_distance(s1, {q[j], q[j + 1]}) <= eps) {
      contact_col = j;
      return 0.0;
    }
    sum.add(detail::parallelogram_term(a, b, c, d, w.n0[j], w.n1[j], w.n1[j + 1], w.n0[j + 1]));
  }
  return sum.value();
}

double row_kernel(const Polyline& p1, const Polyline& p2, bool threads) {
  const std::size_t n1 = p1.segment_count();
  const std::size_t n2 = p2.segment_count();
  if (n1 == 0 || n2 == 0) return 0.0;

  // p2's vertices in traversal order with the closing vertex repeated.
  std::vector<Vec3> q(p2.vertices().begin(), p2.vertices().end());
  if (p2.closed()) q.push_back(q.front());
  std::vector<double> len2(n2);
  for (std::size_t j = 0; j < n2; ++j) len2[j] = (q[j + 1] - q[j]).norm();

  std::vector<double> rows(n1, 0.0);
  std::vector<std::size_t> contact(n1, kNoContact);
  const auto rows_signed = static_cast<long long>(n1);

#pragma omp parallel if (threads && n1 * n2 > 4096)
  {
    RowScratch scratch(q.size());
#pragma omp for schedule(dynamic, 8)
    for (long long i = 0; i < rows_signed; ++i) {
      const auto row = static_cast<std::size_t>(i);
      rows[row] = row_sum(p1.segment(row), q, len2, scratch, contact[row]);
    }
  }

  CompensatedSum total;
  for (std::size_t i = 0; i < n1; ++i) {
    if (contact[i] != kNoContact)
      throw ContactError("polylines touch at segment pair (" + std::to_string(i) + ", " +
                             std::to_string(contact[i]) + ")",
                         std::make_pair(i, contact[i]));
    total.add(rows[i]);
  }
  return total.value();
}

}  // namespace

double gauss_linking(const Polyline& p1, const Polyline& p2) { return row_kernel(p1, p2, true); }

double gauss_linking_serial(const Polyline& p1, const Polyline& p2) { return row_kernel(p1, p2, false); }

}  // namespace pbclink
