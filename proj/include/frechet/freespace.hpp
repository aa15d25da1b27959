#pragma once

// Free-space reachability over full curve pairs and over single rows.
//
// decide_alt_godau is the classical quadratic-time decision procedure; it
// makes no assumption on edge lengths and serves as the reference for the
// fast algorithms. longest_eps_prefix_row propagates reachability across a
// single row of cells (one curve against one segment) and is the engine of
// the greedy decision. exact_frechet computes the distance exactly by
// binary search over exhaustively enumerated critical values.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frechet/critical_values.hpp"
#include "frechet/geometry.hpp"

namespace frechet {

/// Call-local instrumentation: number of free-space cells examined.
struct WorkCounter {
  std::size_t cells = 0;
};

namespace detail {

// Maps u in [1, 2] affinely onto [lo, hi], snapping the endpoints so that
// chained interval comparisons stay exact.
inline double map_edge_param(double u, double lo, double hi) {
  if (u <= 1.0) return lo;
  if (u >= 2.0) return hi;
  return lo + (u - 1.0) * (hi - lo);
}

}  // namespace detail

/// Largest s such that the sub-curve of P from `start` to s stays within
/// Fréchet distance eps of the segment e, via reachability propagation
/// across the single row of cells P x e. Returns nullopt when no prefix
/// exists (including when P(start) is farther than eps from e's start).
/// The partial edge P[start, ceil(start)] acts as a first short edge. The
/// scan stops as soon as reachability dies; `work`, when given, accumulates
/// the number of cells examined.
inline std::optional<CurveParam> longest_eps_prefix_row(
    const PolygonalCurve& P, CurveParam start, const Segment& e, double eps,
    WorkCounter* work = nullptr) {
  if (P.dim() != e.dim()) throw std::invalid_argument("dimension mismatch");
  if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
  if (!(start >= 1.0) || !(start <= static_cast<double>(P.size())))
    throw std::out_of_range("start outside [1, n]");

  const double bound = eps + kTol;
  const Point start_point = P.point_at(start);
  if (distance(start_point, e.start) > bound) return std::nullopt;

  if (P.size() == 1 || start >= static_cast<double>(P.size())) {
    // Single-point remainder: matches the whole segment iff both ends fit.
    if (distance(start_point, e.end) <= bound) return start;
    return std::nullopt;
  }

  // Virtual vertex 0 sits at `start`; virtual vertex r >= 1 is the real
  // vertex with 0-based index base + r.
  const std::size_t base =
      static_cast<std::size_t>(std::floor(start - 1.0));
  const std::size_t edges = P.size() - 1 - base;
  auto vparam = [&](std::size_t r) -> double {
    return r == 0 ? start : static_cast<double>(base + r + 1);
  };
  auto vpoint = [&](std::size_t r) -> PointView {
    return r == 0 ? start_point.view() : P.vertex(base + r);
  };

  // Left frontier on e's parameter range [1, 2]; the start column is
  // reachable from (start, 1) upward.
  std::optional<ParamInterval> left =
      ball_segment_interval(start_point, bound, e);
  if (!left) left = ParamInterval{1.0, 1.0};
  left->lo = 1.0;

  bool bottom_alive = true;  // prefix of P still inside B(e.start, eps)
  std::optional<CurveParam> best;

  for (std::size_t r = 0; r < edges; ++r) {
    if (work) ++work->cells;
    const double t_lo = vparam(r);
    const double t_hi = vparam(r + 1);
    PointView a = vpoint(r);
    PointView b = vpoint(r + 1);

    // Top boundary: points of this edge within eps of e's end. Reachable in
    // full whenever the cell is entered at all (the bottom chain starts at
    // the cell's left corner, so its filter is vacuous here). The crossing
    // radius carries half the comparison slack: enough to see a tangent
    // configuration at a critical value, while staying strictly inside the
    // feasibility cushion so the returned prefix re-verifies cleanly.
    if (left || bottom_alive) {
      auto top = detail::ball_segment_interval_views(e.end, eps + 0.5 * kTol,
                                                     a, b);
      if (top) {
        const double g_hi = detail::map_edge_param(top->hi, t_lo, t_hi);
        if (!best || g_hi > *best) best = g_hi;
      }
    }

    // Bottom boundary: stays alive while the free interval under e.start
    // spans the whole edge.
    bool next_bottom = false;
    if (bottom_alive) {
      auto bot = detail::ball_segment_interval_views(e.start, bound, a, b);
      if (bot && bot->lo <= 1.0)
        next_bottom = (detail::map_edge_param(bot->hi, t_lo, t_hi) >= t_hi);
    }

    // Right boundary becomes the next column's left frontier.
    std::optional<ParamInterval> next_left =
        ball_segment_interval(b, bound, e);
    if (next_left && !bottom_alive) {
      if (left) {
        next_left->lo = std::max(next_left->lo, left->lo);
        if (next_left->lo > next_left->hi) next_left.reset();
      } else {
        next_left.reset();
      }
    }

    left = next_left;
    bottom_alive = next_bottom;
    if (!left && !bottom_alive) break;
  }
  return best;
}

/// Longest eps-prefix of the whole curve with respect to e.
inline std::optional<CurveParam> longest_eps_prefix_row(
    const PolygonalCurve& P, const Segment& e, double eps,
    WorkCounter* work = nullptr) {
  return longest_eps_prefix_row(P, 1.0, e, eps, work);
}

namespace detail {

// Reachable interval on one outgoing cell boundary. `pass` is the boundary
// from which the whole free interval is reachable; `filtered` only admits
// points at or beyond its own lower end.
inline std::optional<ParamInterval> propagate(
    const std::optional<ParamInterval>& free,
    const std::optional<ParamInterval>& pass,
    const std::optional<ParamInterval>& filtered) {
  if (!free) return std::nullopt;
  if (pass) return free;
  if (!filtered) return std::nullopt;
  ParamInterval out = *free;
  out.lo = std::max(out.lo, filtered->lo);
  if (out.lo > out.hi) return std::nullopt;
  return out;
}

}  // namespace detail

/// Classical free-space decision: true iff the Fréchet distance between P
/// and Q is at most eps (within kTol). No edge-length assumption; O(nm)
/// time and O(n) memory.
inline bool decide_alt_godau(const PolygonalCurve& P, const PolygonalCurve& Q,
                             double eps, WorkCounter* work = nullptr) {
  if (P.dim() != Q.dim()) throw std::invalid_argument("dimension mismatch");
  if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
  const double bound = eps + kTol;

  if (distance(P.front(), Q.front()) > bound) return false;
  if (distance(P.back(), Q.back()) > bound) return false;
  if (P.size() == 1) return frechet_curve_to_point(Q, P.front()) <= bound;
  if (Q.size() == 1) return frechet_curve_to_point(P, Q.front()) <= bound;

  const std::size_t pn = P.size();
  const std::size_t qn = Q.size();

  // bottom[i]: reachable interval on the current horizontal grid line
  // within P-edge i (global P parameters).
  std::vector<std::optional<ParamInterval>> bottom(pn - 1);
  bool chain = true;  // bottom line of the diagram, contiguous from (1,1)
  for (std::size_t i = 0; i < pn - 1 && chain; ++i) {
    auto f = detail::ball_segment_interval_views(Q.vertex(0), bound,
                                                 P.vertex(i), P.vertex(i + 1));
    const double t_lo = static_cast<double>(i + 1);
    const double t_hi = static_cast<double>(i + 2);
    if (!f || f->lo > 1.0) break;
    const double g_hi = detail::map_edge_param(f->hi, t_lo, t_hi);
    bottom[i] = ParamInterval{t_lo, g_hi};
    chain = (g_hi >= t_hi);
  }

  bool left_chain = true;  // left boundary of the diagram
  std::optional<ParamInterval> final_right;

  for (std::size_t j = 0; j < qn - 1; ++j) {
    const double u_lo = static_cast<double>(j + 1);
    const double u_hi = static_cast<double>(j + 2);
    PointView qa = Q.vertex(j);
    PointView qb = Q.vertex(j + 1);

    // Reachable part of the diagram's left boundary within this row.
    std::optional<ParamInterval> left;
    if (left_chain) {
      auto f = detail::ball_segment_interval_views(P.vertex(0), bound, qa, qb);
      if (f && f->lo <= 1.0) {
        left = ParamInterval{u_lo, detail::map_edge_param(f->hi, u_lo, u_hi)};
        left_chain = (left->hi >= u_hi);
      } else {
        left_chain = false;
      }
    }

    for (std::size_t i = 0; i < pn - 1; ++i) {
      if (work) ++work->cells;
      const double t_lo = static_cast<double>(i + 1);
      const double t_hi = static_cast<double>(i + 2);

      std::optional<ParamInterval> free_top;
      if (auto f = detail::ball_segment_interval_views(
              Q.vertex(j + 1), bound, P.vertex(i), P.vertex(i + 1))) {
        free_top = ParamInterval{detail::map_edge_param(f->lo, t_lo, t_hi),
                                 detail::map_edge_param(f->hi, t_lo, t_hi)};
      }
      std::optional<ParamInterval> free_right;
      if (auto f = detail::ball_segment_interval_views(P.vertex(i + 1), bound,
                                                       qa, qb)) {
        free_right = ParamInterval{detail::map_edge_param(f->lo, u_lo, u_hi),
                                   detail::map_edge_param(f->hi, u_lo, u_hi)};
      }

      std::optional<ParamInterval> reach_top =
          detail::propagate(free_top, left, bottom[i]);
      std::optional<ParamInterval> reach_right =
          detail::propagate(free_right, bottom[i], left);

      bottom[i] = reach_top;
      left = reach_right;
    }
    final_right = left;
  }

  if (final_right && final_right->hi >= static_cast<double>(qn)) return true;
  if (bottom[pn - 2] && bottom[pn - 2]->hi >= static_cast<double>(pn))
    return true;
  return false;
}

/// All candidate values for the Fréchet distance between P and Q: the two
/// endpoint distances, every vertex-to-edge distance both ways (a free
/// interval is born), and for each vertex pair of one curve against each
/// edge of the other the distance at which a monotone passage closes (the
/// bisector hits the edge's supporting line). Size O(n^2 m + n m^2).
inline CriticalValueSet enumerate_all_critical_values(
    const PolygonalCurve& P, const PolygonalCurve& Q) {
  if (P.dim() != Q.dim()) throw std::invalid_argument("dimension mismatch");
  if (P.size() < 2 || Q.size() < 2)
    throw std::invalid_argument("need n, m >= 2");
  const std::size_t d = P.dim();
  std::vector<double> raw;

  raw.push_back(distance(P.front(), Q.front()));
  raw.push_back(distance(P.back(), Q.back()));

  auto vertex_edge = [&](const PolygonalCurve& A, const PolygonalCurve& B) {
    for (std::size_t i = 0; i < A.size(); ++i) {
      for (std::size_t j = 0; j + 1 < B.size(); ++j) {
        raw.push_back(detail::distance_point_to_segment_views(
            A.vertex(i), B.vertex(j), B.vertex(j + 1)));
      }
    }
  };
  vertex_edge(P, Q);
  vertex_edge(Q, P);

  // Monotonicity events: for vertices u, v of one curve and an edge (a, b)
  // of the other, the point z on the edge's line equidistant from u and v,
  // clamped to the edge. Over-enumeration is harmless; the decision filters.
  auto bisector_events = [&](const PolygonalCurve& A, const PolygonalCurve& B) {
    for (std::size_t i = 0; i < A.size(); ++i) {
      for (std::size_t j = i + 1; j < A.size(); ++j) {
        PointView u = A.vertex(i);
        PointView v = A.vertex(j);
        for (std::size_t k = 0; k + 1 < B.size(); ++k) {
          PointView a = B.vertex(k);
          PointView b = B.vertex(k + 1);
          double denom = 0.0, num = 0.0;
          for (std::size_t c = 0; c < d; ++c) {
            const double dir = b[c] - a[c];
            const double vu = v[c] - u[c];
            denom += dir * vu;
            num += (0.5 * (u[c] + v[c]) - a[c]) * vu;
          }
          if (denom == 0.0) continue;  // edge parallel to the bisector
          const double s = std::clamp(num / denom, 0.0, 1.0);
          double dist2 = 0.0;
          for (std::size_t c = 0; c < d; ++c) {
            const double w = a[c] + s * (b[c] - a[c]) - u[c];
            dist2 += w * w;
          }
          raw.push_back(std::sqrt(dist2));
        }
      }
    }
  };
  bisector_events(P, Q);
  bisector_events(Q, P);

  return CriticalValueSet::from_raw(std::move(raw));
}

/// Exact Fréchet distance: the smallest enumerated critical value for which
/// decide_alt_godau succeeds. Intentionally quadratic; the correctness
/// reference, not the product.
inline double exact_frechet(const PolygonalCurve& P, const PolygonalCurve& Q) {
  if (P.dim() != Q.dim()) throw std::invalid_argument("dimension mismatch");
  if (P.size() == 1) return frechet_curve_to_point(Q, P.front());
  if (Q.size() == 1) return frechet_curve_to_point(P, Q.front());

  const CriticalValueSet cands = enumerate_all_critical_values(P, Q);
  std::size_t lo = 0, hi = cands.size() - 1;
  if (decide_alt_godau(P, Q, cands[lo])) return cands[lo];
  if (!decide_alt_godau(P, Q, cands[hi]))
    throw std::logic_error("critical value enumeration incomplete");
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (decide_alt_godau(P, Q, cands[mid]))
      hi = mid;
    else
      lo = mid;
  }
  return cands[hi];
}

}  // namespace frechet
