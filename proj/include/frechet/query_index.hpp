#pragma once

// Preprocessed longest-prefix queries for planar curves.
//
// A curve P is preprocessed into two balanced trees over its edges and
// vertices: every angle-tree node stores the minimal angular arc enclosing
// its edges' direction angles, every hull-tree node stores the convex hull
// of its vertices. A longest eps-prefix query against a segment then runs
// in O(log^2 n): the monotone range comes from the angle tree, the first
// and last ball crossings from exponential searches over the (monotone)
// vertex projections, and the first cylinder-wall exit from extreme-point
// probes of O(log n) canonical hulls. Plane only.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "frechet/freespace.hpp"
#include "frechet/geometry.hpp"
#include "frechet/greedy.hpp"

namespace frechet {

/// Call-local instrumentation: tree nodes touched plus probe steps.
struct NodeVisitCounter {
  std::size_t visits = 0;
};

namespace detail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Angle-space slack for the conservative arc-in-halfcircle test; leaves
// always re-check the raw dot product, so this only trades pruning for
// descent near perpendicular directions.
inline constexpr double kArcMargin = 1e-9;

inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

inline double circ_dist(double a, double b) {
  const double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace detail

/// Angular arc as center + half-width; half_width < 0 encodes empty,
/// half_width = pi the full circle.
struct AngleArc {
  double center = 0.0;
  double half_width = -1.0;

  bool empty() const { return half_width < 0.0; }

  static AngleArc single(double angle) {
    return AngleArc{detail::wrap_angle(angle), 0.0};
  }

  bool contains(double angle) const {
    return !empty() && detail::circ_dist(angle, center) <= half_width + 1e-12;
  }

  double start() const { return detail::wrap_angle(center - half_width); }
  double width() const { return 2.0 * half_width; }

  /// Smallest arc covering both operands (caps at the full circle).
  static AngleArc merge(const AngleArc& a, const AngleArc& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const double off_ab = detail::wrap_angle(b.start() - a.start());
    const double off_ba = detail::wrap_angle(a.start() - b.start());
    const double width_a = std::max(a.width(), off_ab + b.width());
    const double width_b = std::max(b.width(), off_ba + a.width());
    double start, width;
    if (width_a <= width_b) {
      start = a.start();
      width = width_a;
    } else {
      start = b.start();
      width = width_b;
    }
    if (width >= 2.0 * detail::kPi)
      return AngleArc{0.0, detail::kPi};
    return AngleArc{detail::wrap_angle(start + width / 2.0), width / 2.0};
  }

  /// Whole arc strictly inside the open half-circle centered at phi.
  bool within_halfcircle(double phi) const {
    return !empty() && detail::circ_dist(center, phi) + half_width <
                           detail::kPi / 2.0 - detail::kArcMargin;
  }
};

namespace detail {

struct AngleNode {
  std::uint32_t lo = 0, hi = 0;  // edge range [lo, hi)
  std::int32_t left = -1, right = -1;
  AngleArc arc;
};

struct HullNode {
  std::uint32_t lo = 0, hi = 0;  // vertex range [lo, hi)
  std::int32_t left = -1, right = -1;
  std::vector<std::uint32_t> hull;  // CCW, starting at the lexicographic min
  std::vector<double> lifted;       // monotone lift of the edge angles
};

inline double cross(double ox, double oy, double ax, double ay, double bx,
                    double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

// Strict convex hull (no collinear points) of the given vertex indices,
// which must arrive sorted lexicographically. Returns CCW order starting
// at the smallest point.
inline std::vector<std::uint32_t> convex_hull_sorted(
    const PolygonalCurve& P, const std::vector<std::uint32_t>& sorted) {
  const auto x = [&](std::uint32_t i) { return P.vertex(i)[0]; };
  const auto y = [&](std::uint32_t i) { return P.vertex(i)[1]; };
  std::vector<std::uint32_t> pts;
  pts.reserve(sorted.size());
  for (std::uint32_t i : sorted) {
    if (!pts.empty() && x(pts.back()) == x(i) && y(pts.back()) == y(i))
      continue;  // duplicate coordinates
    pts.push_back(i);
  }
  const std::size_t k = pts.size();
  if (k <= 2) return pts;
  std::vector<std::uint32_t> hull(2 * k);
  std::size_t h = 0;
  for (std::size_t i = 0; i < k; ++i) {  // lower chain
    while (h >= 2 && cross(x(hull[h - 2]), y(hull[h - 2]), x(hull[h - 1]),
                           y(hull[h - 1]), x(pts[i]), y(pts[i])) <= 0.0)
      --h;
    hull[h++] = pts[i];
  }
  for (std::size_t i = k - 1, base = h + 1; i-- > 0;) {  // upper chain
    while (h >= base && cross(x(hull[h - 2]), y(hull[h - 2]), x(hull[h - 1]),
                              y(hull[h - 1]), x(pts[i]), y(pts[i])) <= 0.0)
      --h;
    hull[h++] = pts[i];
  }
  hull.resize(h - 1);
  return hull;
}

// Monotone lift of the hull's edge direction angles (strictly increasing,
// total less than 2 pi plus the start angle).
inline std::vector<double> lift_hull_angles(const PolygonalCurve& P,
                                            const std::vector<std::uint32_t>& hull) {
  const std::size_t h = hull.size();
  std::vector<double> lifted(h);
  if (h < 2) return lifted;
  double prev = 0.0;
  for (std::size_t i = 0; i < h; ++i) {
    PointView a = P.vertex(hull[i]);
    PointView b = P.vertex(hull[(i + 1) % h]);
    const double ang = std::atan2(b[1] - a[1], b[0] - a[0]);
    if (i == 0) {
      lifted[0] = ang;
    } else {
      double step = wrap_angle(ang - prev);
      if (step == 0.0) step = 1e-15;
      lifted[i] = lifted[i - 1] + step;
    }
    prev = ang;
  }
  return lifted;
}

// Max of dot(vertex, dir) over a strictly convex CCW hull. Binary search on
// the lifted edge angles; small hulls fall back to a scan.
inline double hull_extreme_dot(const PolygonalCurve& P, const HullNode& node,
                               double dx, double dy,
                               NodeVisitCounter* counter) {
  const auto& hull = node.hull;
  const std::size_t h = hull.size();
  auto value = [&](std::size_t i) {
    PointView p = P.vertex(hull[i]);
    return p[0] * dx + p[1] * dy;
  };
  if (h <= 32) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h; ++i) best = std::max(best, value(i));
    if (counter) counter->visits += 1;
    return best;
  }
  const auto& lifted = node.lifted;
  const double phi = std::atan2(dy, dx);
  // Rising edges have direction angle in (phi - pi/2, phi + pi/2); the
  // maximum sits right after the cyclically last rising edge.
  double tau = phi + kPi / 2.0;
  tau = lifted[0] + wrap_angle(tau - lifted[0]);  // lift into [A0, A0 + 2pi)
  std::size_t steps = 0;
  auto count_step = [&]() { ++steps; };

  auto first_at_least = [&](double target) -> std::size_t {
    std::size_t lo = 0, hi = lifted.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      count_step();
      if (lifted[mid] >= target)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };

  // Candidates: the cyclic anchor (covers a rising run that wraps past the
  // end of the lift) and the vertex right after the last genuinely rising
  // edge below tau.
  double best = value(0);
  const std::size_t i1 = first_at_least(tau);
  if (i1 > 0 && lifted[i1 - 1] > tau - kPi)
    best = std::max(best, value(i1 % h));
  if (counter) counter->visits += steps + 1;
  return best;
}

}  // namespace detail

/// Balanced tree over edge direction angles.
class AngleTree {
 public:
  AngleTree() = default;

  static AngleTree build(const PolygonalCurve& P) {
    AngleTree t;
    const std::size_t edges = P.size() - 1;
    t.nodes_.reserve(2 * edges);
    t.build_node(P, 0, static_cast<std::uint32_t>(edges));
    return t;
  }

  const std::vector<detail::AngleNode>& nodes() const { return nodes_; }
  std::vector<detail::AngleNode>& mutable_nodes() { return nodes_; }

  /// First edge index >= from whose direction is not strictly ahead along
  /// phi's half-circle, tested at leaves with the raw dot product.
  std::optional<std::size_t> first_violation(const PolygonalCurve& P,
                                             std::size_t from, double phi,
                                             NodeVisitCounter* counter) const {
    if (nodes_.empty()) return std::nullopt;
    const double ux = std::cos(phi), uy = std::sin(phi);
    return search(P, 0, from, phi, ux, uy, counter);
  }

 private:
  std::int32_t build_node(const PolygonalCurve& P, std::uint32_t lo,
                          std::uint32_t hi) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(detail::AngleNode{lo, hi, -1, -1, {}});
    if (hi - lo == 1) {
      PointView a = P.vertex(lo);
      PointView b = P.vertex(lo + 1);
      nodes_[id].arc = AngleArc::single(std::atan2(b[1] - a[1], b[0] - a[0]));
      return id;
    }
    const std::uint32_t mid = lo + (hi - lo) / 2;
    const std::int32_t l = build_node(P, lo, mid);
    const std::int32_t r = build_node(P, mid, hi);
    nodes_[id].left = l;
    nodes_[id].right = r;
    nodes_[id].arc = AngleArc::merge(nodes_[l].arc, nodes_[r].arc);
    return id;
  }

  std::optional<std::size_t> search(const PolygonalCurve& P, std::int32_t id,
                                    std::size_t from, double phi, double ux,
                                    double uy,
                                    NodeVisitCounter* counter) const {
    const auto& node = nodes_[id];
    if (counter) ++counter->visits;
    if (node.hi <= from) return std::nullopt;
    if (node.lo >= from && node.arc.within_halfcircle(phi)) return std::nullopt;
    if (node.hi - node.lo == 1) {
      PointView a = P.vertex(node.lo);
      PointView b = P.vertex(node.lo + 1);
      const double ex = b[0] - a[0], ey = b[1] - a[1];
      const double dot = ex * ux + ey * uy;
      if (dot > kDirTol * std::sqrt(ex * ex + ey * ey)) return std::nullopt;
      return node.lo;
    }
    if (auto hit = search(P, node.left, from, phi, ux, uy, counter))
      return hit;
    return search(P, node.right, from, phi, ux, uy, counter);
  }

  std::vector<detail::AngleNode> nodes_;
};

/// Balanced tree of convex hulls over vertex ranges.
class HullTree {
 public:
  HullTree() = default;

  static HullTree build(const PolygonalCurve& P) {
    HullTree t;
    t.nodes_.reserve(2 * P.size());
    std::vector<std::uint32_t> scratch;
    t.build_node(P, 0, static_cast<std::uint32_t>(P.size()), scratch);
    return t;
  }

  const std::vector<detail::HullNode>& nodes() const { return nodes_; }
  std::vector<detail::HullNode>& mutable_nodes() { return nodes_; }

  /// Smallest vertex index in [lo, hi) whose signed distance to the line
  /// through `origin` with unit normal (nx, ny) exceeds `bound` in absolute
  /// value. Canonical nodes are probed with extreme-point queries and only
  /// violating subtrees are descended.
  std::optional<std::size_t> first_outside_slab(
      const PolygonalCurve& P, std::size_t lo, std::size_t hi, double nx,
      double ny, double offset, double bound,
      NodeVisitCounter* counter) const {
    if (nodes_.empty() || lo >= hi) return std::nullopt;
    return search(P, 0, lo, hi, nx, ny, offset, bound, counter);
  }

 private:
  std::int32_t build_node(const PolygonalCurve& P, std::uint32_t lo,
                          std::uint32_t hi,
                          std::vector<std::uint32_t>& sorted_out) {
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(detail::HullNode{lo, hi, -1, -1, {}, {}});
    if (hi - lo == 1) {
      sorted_out.assign(1, lo);
      nodes_[id].hull.assign(1, lo);
      return id;
    }
    const std::uint32_t mid = lo + (hi - lo) / 2;
    std::vector<std::uint32_t> left_sorted, right_sorted;
    const std::int32_t l = build_node(P, lo, mid, left_sorted);
    const std::int32_t r = build_node(P, mid, hi, right_sorted);
    nodes_[id].left = l;
    nodes_[id].right = r;
    sorted_out.resize(left_sorted.size() + right_sorted.size());
    auto key = [&](std::uint32_t i) {
      return std::make_pair(P.vertex(i)[0], P.vertex(i)[1]);
    };
    std::merge(left_sorted.begin(), left_sorted.end(), right_sorted.begin(),
               right_sorted.end(), sorted_out.begin(),
               [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    nodes_[id].hull = detail::convex_hull_sorted(P, sorted_out);
    nodes_[id].lifted = detail::lift_hull_angles(P, nodes_[id].hull);
    return id;
  }

  bool violates(const PolygonalCurve& P, const detail::HullNode& node,
                double nx, double ny, double offset, double bound,
                NodeVisitCounter* counter) const {
    const double hi = detail::hull_extreme_dot(P, node, nx, ny, counter);
    if (hi - offset > bound) return true;
    const double lo = -detail::hull_extreme_dot(P, node, -nx, -ny, counter);
    return lo - offset < -bound;
  }

  std::optional<std::size_t> search(const PolygonalCurve& P, std::int32_t id,
                                    std::size_t lo, std::size_t hi, double nx,
                                    double ny, double offset, double bound,
                                    NodeVisitCounter* counter) const {
    const auto& node = nodes_[id];
    if (counter) ++counter->visits;
    if (node.hi <= lo || node.lo >= hi) return std::nullopt;
    const bool inside = node.lo >= lo && node.hi <= hi;
    if (inside) {
      if (!violates(P, node, nx, ny, offset, bound, counter))
        return std::nullopt;
      if (node.hi - node.lo == 1) return node.lo;
    } else if (node.hi - node.lo == 1) {
      PointView p = P.vertex(node.lo);
      const double perp = p[0] * nx + p[1] * ny - offset;
      return std::fabs(perp) > bound ? std::optional<std::size_t>(node.lo)
                                     : std::nullopt;
    }
    if (auto hit =
            search(P, node.left, lo, hi, nx, ny, offset, bound, counter))
      return hit;
    return search(P, node.right, lo, hi, nx, ny, offset, bound, counter);
  }

  std::vector<detail::HullNode> nodes_;
};

/// Preprocessed planar curve supporting logarithmic longest-prefix queries.
class QueryIndex {
 public:
  explicit QueryIndex(PolygonalCurve curve)
      : curve_(validated(std::move(curve))),
        angle_tree_(AngleTree::build(curve_)),
        hull_tree_(HullTree::build(curve_)) {}

  QueryIndex(PolygonalCurve curve, AngleTree at, HullTree ht)
      : curve_(std::move(curve)),
        angle_tree_(std::move(at)),
        hull_tree_(std::move(ht)) {}

  const PolygonalCurve& curve() const { return curve_; }
  const AngleTree& angle_tree() const { return angle_tree_; }
  const HullTree& hull_tree() const { return hull_tree_; }

 private:
  static PolygonalCurve validated(PolygonalCurve curve) {
    if (curve.dim() != 2)
      throw std::invalid_argument("query index supports the plane only");
    if (curve.size() < 2)
      throw std::invalid_argument("query index needs >= 2 vertices");
    return curve;
  }

  PolygonalCurve curve_;
  AngleTree angle_tree_;
  HullTree hull_tree_;
};

/// Builds the index; d = 2, n >= 2 required.
inline QueryIndex build_index(const PolygonalCurve& P) {
  if (P.dim() != 2)
    throw std::invalid_argument("query index supports the plane only");
  if (P.size() < 2) throw std::invalid_argument("need n >= 2");
  return QueryIndex(P);
}

namespace detail {

// Virtual vertex sequence covering P[start, lambda]: index 0 is P(start),
// middle indices are the real vertices strictly inside, the last index is
// P(lambda).
struct RangeWalk {
  const PolygonalCurve* curve;
  double start_param, end_param;
  Point start_point, end_point;
  std::size_t first_vertex;  // 1-based number of first vertex > start
  std::size_t last_vertex;   // 1-based number of last vertex < end
  std::size_t count;         // number of virtual vertices

  RangeWalk(const PolygonalCurve& P, double start, double end)
      : curve(&P),
        start_param(start),
        end_param(end),
        start_point(P.point_at(start)),
        end_point(P.point_at(end)) {
    first_vertex = static_cast<std::size_t>(std::floor(start)) + 1;
    last_vertex = static_cast<std::size_t>(std::ceil(end)) - 1;
    if (end <= start || last_vertex < first_vertex) {
      first_vertex = 1;
      last_vertex = 0;  // empty middle
      count = (end > start) ? 2 : 1;
    } else {
      count = last_vertex - first_vertex + 3;
    }
  }

  double param(std::size_t k) const {
    if (k == 0) return start_param;
    if (k == count - 1) return end_param;
    return static_cast<double>(first_vertex + k - 1);
  }

  PointView point(std::size_t k) const {
    if (k == 0) return start_point.view();
    if (k == count - 1) return end_point.view();
    return curve->vertex(first_vertex + k - 2);
  }
};

// First virtual vertex k >= 0 with projection >= target; projections are
// strictly increasing over the walk. Exponential then binary search.
inline std::size_t first_projection_at_least(
    const RangeWalk& walk, double ux, double uy, double ox, double oy,
    double target, NodeVisitCounter* counter) {
  auto proj = [&](std::size_t k) {
    PointView p = walk.point(k);
    if (counter) ++counter->visits;
    return (p[0] - ox) * ux + (p[1] - oy) * uy;
  };
  if (proj(0) >= target) return 0;
  std::size_t lo = 0, hi = 1;
  while (hi < walk.count && proj(hi) < target) {
    lo = hi;
    hi = std::min(walk.count, hi * 2);
    if (lo == hi) break;
  }
  if (hi >= walk.count) {
    if (proj(walk.count - 1) < target) return walk.count;
    hi = walk.count - 1;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (proj(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace detail

/// First point of P[start, lambda] inside B(center, eps), assuming the
/// range is monotone with respect to the axis through `axis_origin` with
/// unit direction (ux, uy). O(log n).
inline std::optional<CurveParam> first_intersection(
    const QueryIndex& ix, CurveParam start, CurveParam lambda,
    PointView center, double eps, PointView axis_origin, double ux, double uy,
    NodeVisitCounter* counter = nullptr) {
  const PolygonalCurve& P = ix.curve();
  const double eps_c = eps + 0.5 * kTol;
  detail::RangeWalk walk(P, start, lambda);
  if (distance(walk.start_point, center) <= eps_c) return start;
  if (walk.count == 1) return std::nullopt;

  const double s_c =
      (center[0] - axis_origin[0]) * ux + (center[1] - axis_origin[1]) * uy;
  const std::size_t k = detail::first_projection_at_least(
      walk, ux, uy, axis_origin[0], axis_origin[1], s_c - eps_c, counter);
  if (k >= walk.count) return std::nullopt;

  // Scan edges through the projection slab of the ball.
  for (std::size_t e = (k == 0 ? 0 : k - 1); e + 1 < walk.count; ++e) {
    PointView a = walk.point(e);
    if (counter) ++counter->visits;
    const double pa = (a[0] - axis_origin[0]) * ux + (a[1] - axis_origin[1]) * uy;
    if (pa > s_c + eps_c) break;
    auto hit = detail::ball_segment_interval_views(center, eps_c, a,
                                                   walk.point(e + 1));
    if (hit) {
      const double g = detail::map_edge_param(hit->lo, walk.param(e),
                                              walk.param(e + 1));
      return std::max(g, start);
    }
  }
  return std::nullopt;
}

/// Last point of P[start, lambda] inside B(center, eps); same assumptions.
inline std::optional<CurveParam> last_intersection(
    const QueryIndex& ix, CurveParam start, CurveParam lambda,
    PointView center, double eps, PointView axis_origin, double ux, double uy,
    NodeVisitCounter* counter = nullptr) {
  const PolygonalCurve& P = ix.curve();
  const double eps_c = eps + 0.5 * kTol;
  detail::RangeWalk walk(P, start, lambda);
  if (walk.count == 1) {
    if (distance(walk.start_point, center) <= eps_c) return start;
    return std::nullopt;
  }
  const double s_c =
      (center[0] - axis_origin[0]) * ux + (center[1] - axis_origin[1]) * uy;
  std::size_t k = detail::first_projection_at_least(
      walk, ux, uy, axis_origin[0], axis_origin[1],
      s_c + eps_c + 1e-12 * std::max(1.0, std::fabs(s_c)), counter);
  if (k == 0) return std::nullopt;  // the whole range lies past the ball
  // Walk backward from the edge crossing the far plane (or the range end).
  std::size_t e = (k >= walk.count ? walk.count - 1 : k) - 1;
  for (;; --e) {
    PointView b = walk.point(e + 1);
    if (counter) ++counter->visits;
    const double pb = (b[0] - axis_origin[0]) * ux + (b[1] - axis_origin[1]) * uy;
    if (pb < s_c - eps_c) break;
    auto hit = detail::ball_segment_interval_views(center, eps_c,
                                                   walk.point(e), b);
    if (hit) {
      const double g = detail::map_edge_param(hit->hi, walk.param(e),
                                              walk.param(e + 1));
      return std::min(g, lambda);
    }
    if (e == 0) break;
  }
  return std::nullopt;
}

/// Longest parameter lambda such that every edge of P[start, lambda] has
/// strictly positive projection onto the direction angle phi. O(log n).
inline CurveParam longest_monotone_prefix(const QueryIndex& ix,
                                          CurveParam start, double phi,
                                          NodeVisitCounter* counter = nullptr) {
  const PolygonalCurve& P = ix.curve();
  const double n = static_cast<double>(P.size());
  if (start >= n) return n;
  const std::size_t e0 = static_cast<std::size_t>(std::floor(start - 1.0));
  const auto bad = ix.angle_tree().first_violation(P, e0, phi, counter);
  if (!bad) return n;
  return std::max(start, static_cast<double>(*bad + 1));
}

/// Direction-angle form taking the query segment.
inline CurveParam longest_monotone_prefix(const QueryIndex& ix,
                                          CurveParam start, const Segment& q,
                                          NodeVisitCounter* counter = nullptr) {
  const auto d = q.direction();
  return longest_monotone_prefix(ix, start, std::atan2(d[1], d[0]), counter);
}

/// First point of P[start, lambda] farther than eps from the supporting
/// line of e (a side-wall exit of the cylinder); far-cap exits are left to
/// the caller's case analysis. O(log^2 n).
inline std::optional<CurveParam> cylinder_intersection(
    const QueryIndex& ix, CurveParam start, CurveParam lambda,
    const Segment& e, double eps, NodeVisitCounter* counter = nullptr) {
  const PolygonalCurve& P = ix.curve();
  const double eps_c = eps + 0.5 * kTol;
  const auto dvec = e.direction();
  const double len = std::sqrt(dvec[0] * dvec[0] + dvec[1] * dvec[1]);
  const double nx = -dvec[1] / len, ny = dvec[0] / len;
  const double offset = e.start[0] * nx + e.start[1] * ny;
  auto perp = [&](PointView p) { return p[0] * nx + p[1] * ny - offset; };

  detail::RangeWalk walk(P, start, lambda);
  if (std::fabs(perp(walk.start_point)) > eps_c) return start;

  // First real vertex outside the slab, via canonical hulls.
  std::optional<std::size_t> bad;
  if (walk.last_vertex >= walk.first_vertex) {
    bad = ix.hull_tree().first_outside_slab(
        P, walk.first_vertex - 1, walk.last_vertex, nx, ny, offset, eps_c,
        counter);
  }

  PointView prev = walk.start_point.view();
  double prev_param = start;
  PointView next;
  double next_param;
  if (bad) {
    next = P.vertex(*bad);
    next_param = static_cast<double>(*bad + 1);
    if (*bad + 1 > walk.first_vertex) {
      prev = P.vertex(*bad - 1);
      prev_param = static_cast<double>(*bad);
    }
  } else {
    if (walk.count == 1 || std::fabs(perp(walk.end_point)) <= eps_c)
      return std::nullopt;
    next = walk.end_point.view();
    next_param = lambda;
    if (walk.last_vertex >= walk.first_vertex) {
      prev = P.vertex(walk.last_vertex - 1);
      prev_param = static_cast<double>(walk.last_vertex);
    }
  }

  const double a = perp(prev);
  const double b = perp(next);
  double t;
  if (b > eps_c)
    t = (eps_c - a) / (b - a);
  else
    t = (-eps_c - a) / (b - a);
  t = std::clamp(t, 0.0, 1.0);
  return prev_param + t * (next_param - prev_param);
}

/// Longest eps-prefix of P[start, n] with respect to the query segment,
/// combining the monotone range, the ball crossings and the cylinder exit.
/// O(log^2 n). Requires l_P > 2 eps and |seg| > (1 + sqrt(2)) eps.
inline std::optional<CurveParam> longest_eps_prefix_query(
    const QueryIndex& ix, CurveParam start, const Segment& seg, double eps,
    NodeVisitCounter* counter = nullptr) {
  const PolygonalCurve& P = ix.curve();
  if (seg.dim() != 2) throw std::invalid_argument("planar queries only");
  const double slack = 1e-12 * std::max(1.0, eps);
  if (!(P.min_edge_length() > 2.0 * eps + slack))
    throw PreconditionError("preprocessed curve edges not longer than 2 eps");
  if (!(seg.length() > (1.0 + std::sqrt(2.0)) * eps + slack))
    throw PreconditionError("query segment not longer than (1+sqrt(2)) eps");

  const Point start_point = P.point_at(start);
  if (distance(start_point, seg.start) > eps + kTol) return std::nullopt;

  const auto dvec = seg.direction();
  const double len = std::sqrt(dvec[0] * dvec[0] + dvec[1] * dvec[1]);
  const double ux = dvec[0] / len, uy = dvec[1] / len;

  const CurveParam lambda =
      longest_monotone_prefix(ix, start, std::atan2(uy, ux), counter);
  const auto alpha = first_intersection(ix, start, lambda, seg.end, eps,
                                        seg.start, ux, uy, counter);
  if (!alpha) return std::nullopt;
  const auto beta = last_intersection(ix, start, lambda, seg.end, eps,
                                      seg.start, ux, uy, counter);
  if (!beta) return std::nullopt;  // cannot happen once alpha exists
  const auto r = cylinder_intersection(ix, start, lambda, seg, eps, counter);

  if (!r) return std::min(lambda, *beta);
  if (*r < *alpha || lambda < *alpha) return std::nullopt;
  if ((*alpha < *r && *r < *beta) || (*alpha < lambda && lambda < *beta))
    return std::min(*r, lambda);
  return *beta;
}

/// Full decision against a query curve: Alg-1 chaining with indexed prefix
/// queries. O(m log^2 n). Requires l_P > 2 eps and l_Q > (1 + sqrt(2)) eps.
inline Decision decide_query(const QueryIndex& ix, const PolygonalCurve& Q,
                             double eps,
                             NodeVisitCounter* counter = nullptr) {
  const PolygonalCurve& P = ix.curve();
  if (Q.dim() != 2) throw std::invalid_argument("planar queries only");
  if (Q.size() < 2)
    throw std::invalid_argument("query curve needs >= 2 vertices");
  if (!check_preconditions(P, Q, eps, EdgeLengthMode::Strict))
    throw PreconditionError("edge-length precondition (strict) fails");

  MatchingWitness witness;
  witness.gammas.reserve(Q.size());
  CurveParam gamma = 1.0;
  witness.gammas.push_back(gamma);
  for (std::size_t j = 0; j + 1 < Q.size(); ++j) {
    const Segment seg(Point(Q.vertex(j)), Point(Q.vertex(j + 1)));
    auto next = longest_eps_prefix_query(ix, gamma, seg, eps, counter);
    if (!next) return Decision{};
    gamma = *next;
    witness.gammas.push_back(gamma);
  }
  if (gamma < static_cast<double>(P.size())) return Decision{};
  return Decision{std::move(witness)};
}

// ---------------------------------------------------------------------------
// Serialization: magic "FLEIDX1", little-endian scalars, vertex array, then
// both trees in preorder (their vectors are already stored in preorder).

namespace detail {

inline void put_bytes(std::ostream& os, const void* data, std::size_t size) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(buf, buf + sizeof(T));
  put_bytes(os, buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!is) throw std::runtime_error("truncated index file");
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(buf, buf + sizeof(T));
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace detail

inline constexpr char kIndexMagic[8] = "FLEIDX1";  // 7 chars + NUL

inline void save_index(const QueryIndex& ix, std::ostream& os) {
  detail::put_bytes(os, kIndexMagic, 7);
  const PolygonalCurve& P = ix.curve();
  detail::put_le<std::uint64_t>(os, P.size());
  detail::put_le<std::uint64_t>(os, P.dim());
  for (double c : P.flat()) detail::put_le<double>(os, c);

  const auto& an = ix.angle_tree().nodes();
  detail::put_le<std::uint64_t>(os, an.size());
  for (const auto& node : an) {
    detail::put_le<std::uint32_t>(os, node.lo);
    detail::put_le<std::uint32_t>(os, node.hi);
    detail::put_le<std::int32_t>(os, node.left);
    detail::put_le<std::int32_t>(os, node.right);
    detail::put_le<double>(os, node.arc.center);
    detail::put_le<double>(os, node.arc.half_width);
  }
  const auto& hn = ix.hull_tree().nodes();
  detail::put_le<std::uint64_t>(os, hn.size());
  for (const auto& node : hn) {
    detail::put_le<std::uint32_t>(os, node.lo);
    detail::put_le<std::uint32_t>(os, node.hi);
    detail::put_le<std::int32_t>(os, node.left);
    detail::put_le<std::int32_t>(os, node.right);
    detail::put_le<std::uint64_t>(os, node.hull.size());
    for (std::uint32_t idx : node.hull) detail::put_le<std::uint32_t>(os, idx);
  }
}

inline QueryIndex load_index(std::istream& is) {
  char magic[7];
  is.read(magic, 7);
  if (!is || std::memcmp(magic, kIndexMagic, 7) != 0)
    throw std::runtime_error("unrecognized index format (expected FLEIDX1)");
  const auto n = detail::get_le<std::uint64_t>(is);
  const auto d = detail::get_le<std::uint64_t>(is);
  if (d != 2) throw std::runtime_error("index dimension must be 2");
  if (n < 2) throw std::runtime_error("index needs >= 2 vertices");
  std::vector<double> flat(n * d);
  for (auto& c : flat) c = detail::get_le<double>(is);
  PolygonalCurve curve(std::move(flat), d);

  AngleTree at;
  const auto acount = detail::get_le<std::uint64_t>(is);
  at.mutable_nodes().resize(acount);
  for (auto& node : at.mutable_nodes()) {
    node.lo = detail::get_le<std::uint32_t>(is);
    node.hi = detail::get_le<std::uint32_t>(is);
    node.left = detail::get_le<std::int32_t>(is);
    node.right = detail::get_le<std::int32_t>(is);
    node.arc.center = detail::get_le<double>(is);
    node.arc.half_width = detail::get_le<double>(is);
  }
  HullTree ht;
  const auto hcount = detail::get_le<std::uint64_t>(is);
  ht.mutable_nodes().resize(hcount);
  for (auto& node : ht.mutable_nodes()) {
    node.lo = detail::get_le<std::uint32_t>(is);
    node.hi = detail::get_le<std::uint32_t>(is);
    node.left = detail::get_le<std::int32_t>(is);
    node.right = detail::get_le<std::int32_t>(is);
    const auto size = detail::get_le<std::uint64_t>(is);
    node.hull.resize(size);
    for (auto& idx : node.hull) idx = detail::get_le<std::uint32_t>(is);
    node.lifted = detail::lift_hull_angles(curve, node.hull);
  }
  return QueryIndex(std::move(curve), std::move(at), std::move(ht));
}

inline void save_index_file(const QueryIndex& ix, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  save_index(ix, os);
  if (!os) throw std::runtime_error("failed writing " + path);
}

inline QueryIndex load_index_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return load_index(is);
}

}  // namespace frechet
