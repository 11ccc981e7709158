#include <string>

#include "pbclink/compensated_sum.hpp"
#include "pbclink/errors.hpp"
#include "pbclink/gauss.hpp"
#include "solid_angle.hpp"

namespace pbclink {

double gauss_segment_pair(const Segment& s1, const Segment& s2) {
  const double eps = detail::contact_tolerance(s1.length(), s2.length());
  if (segment_distance(s1, s2) <= eps) throw ContactError("segments touch within contact tolerance");
  const Vec3 a = s2.a - s1.a;
  const Vec3 b = s2.a - s1.b;
  const Vec3 c = s2.b - s1.b;
  const Vec3 d = s2.b - s1.a;
  return detail::parallelogram_term(a, b, c, d, a.norm(), b.norm(), c.norm(), d.norm());
}

double gauss_linking_reference(const Polyline& p1, const Polyline& p2) {
  CompensatedSum sum;
  const std::size_t n1 = p1.segment_count();
  const std::size_t n2 = p2.segment_count();
  for (std::size_t i = 0; i < n1; ++i) {
    const Segment s1 = p1.segment(i);
    for (std::size_t j = 0; j < n2; ++j) {
      try {
        sum.add(gauss_segment_pair(s1, p2.segment(j)));
      } catch (const ContactError&) {
        throw ContactError("polylines touch at segment pair (" + std::to_string(i) + ", " +
                               std::to_string(j) + ")",
                           std::make_pair(i, j));
      }
    }
  }
  return sum.value();
}

Polyline close_chain(const Polyline& p) {
  if (p.closed()) throw DegenerateClosure("chain is already closed");
  if (p.vertex_count() < 3) throw DegenerateClosure("closing needs at least three vertices");
  const Vec3& first = p.vertices().front();
  const Vec3& last = p.vertices().back();
  const double gap = (last - first).norm();
  const double eps = detail::contact_tolerance(p.segment(0).length(),
                                               p.segment(p.segment_count() - 1).length());
  if (gap <= eps) throw DegenerateClosure("chain end points coincide");
  return Polyline::ring(std::vector<Vec3>(p.vertices().begin(), p.vertices().end()));
}

}  // namespace pbclink
