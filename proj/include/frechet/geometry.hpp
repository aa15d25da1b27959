#pragma once

// Points, segments and polygonal curves in R^d, plus the primitive
// predicates the rest of the library is built from.
//
// A curve with n vertices is parametrized continuously over [1, n]:
// integer t addresses vertex t, and t = i + lambda with 0 < lambda < 1
// interpolates linearly along the edge from vertex i to vertex i + 1.
// Segments reuse the same convention over [1, 2].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frechet/errors.hpp"

namespace frechet {

/// Absolute slack for every distance-vs-threshold comparison. All predicates
/// of the form ||.|| <= eps are evaluated as ||.|| <= eps + kTol.
inline constexpr double kTol = 1e-9;

/// Slack for projection sign tests (monotone-direction checks).
inline constexpr double kDirTol = 1e-12;

/// Parameter on a curve, in [1, n] for a curve with n vertices.
using CurveParam = double;

/// Lightweight read-only view of one point's coordinates.
using PointView = std::span<const double>;

inline double squared_distance(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

inline double distance(PointView a, PointView b) {
  return std::sqrt(squared_distance(a, b));
}

inline double dot(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm(PointView a) { return std::sqrt(dot(a, a)); }

/// A point in R^d with finite coordinates.
struct Point {
  std::vector<double> coords;

  Point() = default;
  Point(std::initializer_list<double> values) : coords(values) { validate(); }
  explicit Point(std::vector<double> values) : coords(std::move(values)) {
    validate();
  }
  explicit Point(PointView view) : coords(view.begin(), view.end()) {
    validate();
  }

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t k) const { return coords[k]; }
  double& operator[](std::size_t k) { return coords[k]; }
  operator PointView() const { return coords; }
  PointView view() const { return coords; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords == b.coords;
  }

 private:
  void validate() const {
    if (coords.empty()) throw std::invalid_argument("point needs >= 1 coordinate");
    for (double c : coords) {
      if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
    }
  }
};

/// Oriented line segment with distinct endpoints, parametrized over [1, 2].
struct Segment {
  Point start;
  Point end;

  Segment(Point s, Point e) : start(std::move(s)), end(std::move(e)) {
    if (start.dim() != end.dim())
      throw std::invalid_argument("segment endpoint dimensions differ");
    if (start == end) throw std::invalid_argument("zero-length segment");
  }

  std::size_t dim() const { return start.dim(); }

  double length() const { return distance(start, end); }

  /// Vector from start to end.
  std::vector<double> direction() const {
    std::vector<double> d(start.dim());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = end[k] - start[k];
    return d;
  }

  /// Point at parameter t in [1, 2].
  Point at(double t) const {
    const double lambda = t - 1.0;
    std::vector<double> c(start.dim());
    for (std::size_t k = 0; k < c.size(); ++k)
      c[k] = (1.0 - lambda) * start[k] + lambda * end[k];
    return Point(std::move(c));
  }
};

/// Closed parameter interval. Used for free-space intervals and
/// ball/segment intersections.
struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return lo <= t && t <= hi; }
};

/// Polygonal curve in R^d. Vertices are stored flat (row-major) and are
/// immutable after construction; no two consecutive vertices coincide, so
/// the minimum edge length is positive (and +inf for a single vertex).
class PolygonalCurve {
 public:
  explicit PolygonalCurve(const std::vector<Point>& vertices) {
    if (vertices.empty()) throw std::invalid_argument("curve needs >= 1 vertex");
    dim_ = vertices.front().dim();
    coords_.reserve(vertices.size() * dim_);
    for (const Point& p : vertices) {
      if (p.dim() != dim_) throw std::invalid_argument("mixed vertex dimensions");
      coords_.insert(coords_.end(), p.coords.begin(), p.coords.end());
    }
    size_ = vertices.size();
    finish_construction();
  }

  PolygonalCurve(std::vector<double> flat_coords, std::size_t dim)
      : coords_(std::move(flat_coords)), dim_(dim) {
    if (dim_ == 0 || coords_.empty() || coords_.size() % dim_ != 0)
      throw std::invalid_argument("flat coordinate array does not match dimension");
    size_ = coords_.size() / dim_;
    finish_construction();
  }

  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }
  std::size_t edge_count() const { return size_ - 1; }

  /// 0-based vertex access; vertex(i) is the point at parameter i + 1.
  PointView vertex(std::size_t i) const {
    return PointView(coords_.data() + i * dim_, dim_);
  }

  PointView front() const { return vertex(0); }
  PointView back() const { return vertex(size_ - 1); }

  /// Shortest edge length; +inf for a single-vertex curve.
  double min_edge_length() const { return min_edge_len_; }

  const std::vector<double>& flat() const { return coords_; }

  /// Point at parameter t in [1, n].
  Point point_at(CurveParam t) const {
    check_param(t);
    if (size_ == 1) return Point(vertex(0));
    std::size_t edge;
    double lambda;
    locate(t, edge, lambda);
    PointView a = vertex(edge);
    PointView b = vertex(edge + 1);
    std::vector<double> c(dim_);
    for (std::size_t k = 0; k < dim_; ++k)
      c[k] = (1.0 - lambda) * a[k] + lambda * b[k];
    return Point(std::move(c));
  }

  /// 0-based index of the edge containing parameter t (the last edge for
  /// t = n), plus the fraction along it.
  void locate(CurveParam t, std::size_t& edge, double& lambda) const {
    edge = static_cast<std::size_t>(
        std::min(std::floor(t - 1.0), static_cast<double>(size_ - 2)));
    lambda = (t - 1.0) - static_cast<double>(edge);
  }

  /// Subcurve from parameter a to b (a <= b). A degenerate range yields a
  /// single-point curve.
  PolygonalCurve subcurve(CurveParam a, CurveParam b) const {
    check_param(a);
    check_param(b);
    if (a > b) throw std::invalid_argument("subcurve requires a <= b");
    std::vector<Point> verts;
    verts.push_back(point_at(a));
    if (b > a) {
      // Interior vertices have integer parameters strictly between a and b.
      for (std::size_t i = static_cast<std::size_t>(std::floor(a)) + 1;
           static_cast<double>(i) < b; ++i) {
        Point v(vertex(i - 1));
        if (!(v == verts.back())) verts.push_back(std::move(v));
      }
      Point last = point_at(b);
      if (!(last == verts.back())) verts.push_back(std::move(last));
    }
    return PolygonalCurve(verts);
  }

 private:
  void finish_construction() {
    if (size_ == 1) {
      min_edge_len_ = std::numeric_limits<double>::infinity();
    } else {
      min_edge_len_ = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < size_; ++i) {
        if (std::equal(vertex(i).begin(), vertex(i).end(), vertex(i + 1).begin()))
          throw std::invalid_argument("duplicate consecutive vertex " +
                                      std::to_string(i + 2));
        min_edge_len_ = std::min(min_edge_len_, distance(vertex(i), vertex(i + 1)));
      }
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
    }
  }

  void check_param(CurveParam t) const {
    if (!(t >= 1.0) || !(t <= static_cast<double>(size_)))
      throw std::out_of_range("curve parameter outside [1, n]");
  }

  std::vector<double> coords_;
  std::size_t dim_ = 0;
  std::size_t size_ = 0;
  double min_edge_len_ = 0.0;
};

namespace detail {

// Distance from x to the segment (a, b) given as raw views.
inline double distance_point_to_segment_views(PointView x, PointView a,
                                              PointView b) {
  double len2 = 0.0, proj = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = b[k] - a[k];
    len2 += d * d;
    proj += (x[k] - a[k]) * d;
  }
  if (len2 <= 0.0) return distance(x, a);
  const double s = std::clamp(proj / len2, 0.0, 1.0);
  double dist2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double c = (1.0 - s) * a[k] + s * b[k] - x[k];
    dist2 += c * c;
  }
  return std::sqrt(dist2);
}

// Sub-interval of the segment (a, b), in its [1, 2] parameter range, whose
// points lie within eps of p. Solves the quadratic |a + s(b-a) - p|^2 <= eps^2
// over s in [0, 1].
inline std::optional<ParamInterval> ball_segment_interval_views(PointView p,
                                                                double eps,
                                                                PointView a,
                                                                PointView b) {
  double len2 = 0.0, proj = 0.0, off2 = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = b[k] - a[k];
    const double w = p[k] - a[k];
    len2 += d * d;
    proj += w * d;
    off2 += w * w;
  }
  if (len2 <= 0.0) {
    // Degenerate edge (only possible for clipped sub-edges); treat as point.
    if (off2 <= eps * eps) return ParamInterval{1.0, 1.0};
    return std::nullopt;
  }
  const double disc = proj * proj - len2 * (off2 - eps * eps);
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double s_lo = (proj - root) / len2;
  const double s_hi = (proj + root) / len2;
  if (s_hi < 0.0 || s_lo > 1.0) return std::nullopt;
  return ParamInterval{1.0 + std::max(0.0, s_lo), 1.0 + std::min(1.0, s_hi)};
}

}  // namespace detail

/// Euclidean distance from x to the closest point of e.
inline double distance_point_to_segment(PointView x, const Segment& e) {
  return detail::distance_point_to_segment_views(x, e.start, e.end);
}

/// Sub-interval of e's parameter range [1, 2] whose points lie within eps
/// of p; absent when the ball misses the segment.
inline std::optional<ParamInterval> ball_segment_interval(PointView p,
                                                          double eps,
                                                          const Segment& e) {
  return detail::ball_segment_interval_views(p, eps, e.start, e.end);
}

/// Max over t of ||P(t) - q||; attained at a vertex of P.
inline double frechet_curve_to_point(const PolygonalCurve& P, PointView q) {
  double worst = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
    worst = std::max(worst, distance(P.vertex(i), q));
  return worst;
}

/// Whether P is monotone within the eps-cylinder of e: endpoints in the
/// end balls, every vertex within eps of e, and every edge with strictly
/// positive projection onto e's direction (a perpendicular edge meets a
/// perpendicular hyperplane in a whole sub-segment, which already breaks
/// monotonicity).
inline bool is_eps_monotone(const PolygonalCurve& P, const Segment& e,
                            double eps) {
  if (P.dim() != e.dim())
    throw std::invalid_argument("dimension mismatch");
  const double bound = eps + kTol;
  if (distance(P.front(), e.start) > bound) return false;
  if (distance(P.back(), e.end) > bound) return false;
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (distance_point_to_segment(P.vertex(i), e) > bound) return false;
  }
  const std::vector<double> dir = e.direction();
  const double dir_norm = norm(dir);
  for (std::size_t i = 0; i + 1 < P.size(); ++i) {
    PointView a = P.vertex(i);
    PointView b = P.vertex(i + 1);
    double proj = 0.0, len2 = 0.0;
    for (std::size_t k = 0; k < P.dim(); ++k) {
      const double d = b[k] - a[k];
      proj += d * dir[k];
      len2 += d * d;
    }
    if (proj <= kDirTol * std::sqrt(len2) * dir_norm) return false;
  }
  return true;
}

}  // namespace frechet
