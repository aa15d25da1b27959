#pragma once

// Exact optimization and linear-time approximation of the Fréchet distance
// for curves with long edges.
//
// optimize() runs the greedy decision at eps0 = min(l_P/2, l_Q/(1+sqrt(d))),
// collects the critical values a piecewise orthogonal matching of width
// below eps0 can attain (O(n+m) of them), and binary-searches those with the
// greedy decision. approximate() chains minimum prefixes instead and returns
// a value within a factor sqrt(d) of the true distance whenever that
// distance is below min(l_P/(2 sqrt(d)), l_Q/(2d)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frechet/critical_values.hpp"
#include "frechet/freespace.hpp"
#include "frechet/geometry.hpp"
#include "frechet/greedy.hpp"

namespace frechet {

/// Decision threshold of the exact optimizer.
inline double epsilon0_opt(const PolygonalCurve& P, const PolygonalCurve& Q) {
  const double sd = std::sqrt(static_cast<double>(P.dim()));
  return std::min(P.min_edge_length() / 2.0,
                  Q.min_edge_length() / (1.0 + sd));
}

/// Decision threshold of the approximation algorithm.
inline double epsilon0_approx(const PolygonalCurve& P,
                              const PolygonalCurve& Q) {
  const double d = static_cast<double>(P.dim());
  return std::min(P.min_edge_length() / (2.0 * std::sqrt(d)),
                  Q.min_edge_length() / (2.0 * d));
}

namespace detail {

// First parameter at or after `from` whose point lies within eps of center;
// walks edges forward. Returns a negative value when there is none.
inline double first_ball_entry(const PolygonalCurve& P, double from,
                               PointView center, double eps) {
  if (P.size() == 1 || from >= static_cast<double>(P.size())) {
    return distance(P.point_at(from), center) <= eps + kTol ? from : -1.0;
  }
  const std::size_t first_edge =
      static_cast<std::size_t>(std::floor(from - 1.0));
  for (std::size_t i = first_edge; i + 1 < P.size(); ++i) {
    auto hit = ball_segment_interval_views(center, eps + kTol, P.vertex(i),
                                           P.vertex(i + 1));
    if (!hit) continue;
    const double lo = static_cast<double>(i + 1);
    const double hi = static_cast<double>(i + 2);
    if (map_edge_param(hit->hi, lo, hi) < from) continue;
    return std::max(map_edge_param(hit->lo, lo, hi), from);
  }
  return -1.0;
}

}  // namespace detail

/// Candidate values for the distance, given the prefix chain `gammas`
/// produced by a Yes decision at eps0. For every segment of Q, vertices of
/// the stretch of P an optimal orthogonal matching can use contribute their
/// segment distance (plus the endpoint distance when they project outside
/// the tangent slab), and the segment's far vertex contributes its distance
/// to each edge it may be matched on. eps0 itself is always included.
inline CriticalValueSet critical_values_restricted(
    const PolygonalCurve& P, const PolygonalCurve& Q, double eps0,
    const MatchingWitness& gammas) {
  if (P.size() < 2 || Q.size() < 2)
    throw std::invalid_argument("need n, m >= 2");
  if (gammas.gammas.size() != Q.size())
    throw std::invalid_argument("witness length mismatch");
  const std::size_t d = P.dim();
  const std::size_t m = Q.size();
  const auto& g = gammas.gammas;

  // alpha[i]: first entry of P[gamma_i, n] into the eps0-ball of Q's
  // vertex i+1 (0-based); alpha[0] = 1 by convention.
  std::vector<double> alpha(m, 1.0);
  for (std::size_t i = 1; i < m; ++i) {
    const double a =
        detail::first_ball_entry(P, g[i - 1], Q.vertex(i), eps0);
    if (a < 0.0 || a > g[i] + kTol)
      throw std::logic_error("prefix chain misses its own end ball");
    alpha[i] = a;
  }

  std::vector<double> raw;
  raw.push_back(eps0);
  for (std::size_t i = 1; i < m; ++i) {
    PointView qa = Q.vertex(i - 1);
    PointView qb = Q.vertex(i);
    std::vector<double> dir(d);
    for (std::size_t k = 0; k < d; ++k) dir[k] = qb[k] - qa[k];
    const double len = norm(dir);

    // Vertices of P[alpha_{i-1}, gamma_i].
    const std::size_t j_lo =
        static_cast<std::size_t>(std::ceil(alpha[i - 1]));
    const std::size_t j_hi = static_cast<std::size_t>(std::floor(g[i]));
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
      PointView p = P.vertex(j - 1);
      const double seg_dist =
          detail::distance_point_to_segment_views(p, qa, qb);
      raw.push_back(seg_dist);
      double proj = 0.0;
      for (std::size_t k = 0; k < d; ++k) proj += (p[k] - qa[k]) * dir[k];
      proj /= len;
      if (proj < eps0) raw.push_back(distance(p, qa));
      if (proj > len - eps0) raw.push_back(distance(p, qb));
    }

    // Edges of P[alpha_i, gamma_i] against Q's vertex i.
    const std::size_t e_lo =
        static_cast<std::size_t>(std::floor(alpha[i]));
    const std::size_t e_hi = static_cast<std::size_t>(
        std::min(std::ceil(g[i]) - 1.0, static_cast<double>(P.size() - 1)));
    for (std::size_t k = e_lo; k <= e_hi && k >= 1; ++k) {
      raw.push_back(detail::distance_point_to_segment_views(
          qb, P.vertex(k - 1), P.vertex(k)));
    }
  }
  // The distance is at most eps0 here, so larger candidates are noise from
  // the over-enumeration; they would also fall outside the edge-length
  // hypothesis of the decisions that probe them.
  std::erase_if(raw, [&](double v) { return v > eps0 + kTol; });
  return CriticalValueSet::from_raw(std::move(raw));
}

/// Result of the exact optimizer: either the distance, or the verdict that
/// it is at least the threshold eps0.
struct OptimizeResult {
  std::optional<double> distance;
  double threshold = 0.0;

  bool above_threshold() const { return !distance.has_value(); }
};

/// Exact Fréchet distance whenever it is below epsilon0_opt(P, Q);
/// otherwise reports AboveThreshold. O((n+m) log(n+m)).
inline OptimizeResult optimize(const PolygonalCurve& P,
                               const PolygonalCurve& Q,
                               WorkCounter* work = nullptr) {
  if (P.size() < 2 || Q.size() < 2)
    throw std::invalid_argument("need n, m >= 2");
  const double eps0 = epsilon0_opt(P, Q);

  const Decision at_eps0 =
      decide_greedy(P, Q, eps0, EdgeLengthMode::NonStrict, work);
  if (!at_eps0.yes()) return OptimizeResult{std::nullopt, eps0};
  const auto& g = at_eps0.witness->gammas;

  // A non-monotone piece pins the distance to eps0 exactly.
  for (std::size_t i = 1; i < Q.size(); ++i) {
    const Segment seg(Point(Q.vertex(i - 1)), Point(Q.vertex(i)));
    if (!is_eps_monotone(P.subcurve(g[i - 1], g[i]), seg, eps0))
      return OptimizeResult{eps0, eps0};
  }

  const CriticalValueSet cands =
      critical_values_restricted(P, Q, eps0, *at_eps0.witness);
  auto decide = [&](double c) {
    return decide_greedy(P, Q, c, EdgeLengthMode::NonStrict, work).yes();
  };
  std::size_t lo = 0, hi = cands.size() - 1;
  if (decide(cands[lo])) return OptimizeResult{cands[lo], eps0};
  if (!decide(cands[hi]))
    throw std::logic_error("restricted critical values miss the distance");
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (decide(cands[mid]))
      hi = mid;
    else
      lo = mid;
  }
  return OptimizeResult{cands[hi], eps0};
}

/// Longest prefix attaining the minimum Fréchet distance to a segment.
struct PrefixOutcome {
  CurveParam gamma = 1.0;
  double eps_piece = 0.0;
};

namespace detail {

// Minimum prefix of P[start, n] with respect to e. l_P is passed by the
// caller because chained calls start mid-edge, which must not count as a
// short first edge.
inline PrefixOutcome minimum_prefix_from(const PolygonalCurve& P,
                                         CurveParam start, const Segment& e,
                                         double min_edge_len,
                                         WorkCounter* work = nullptr) {
  const double sd = std::sqrt(static_cast<double>(P.dim()));
  const double eps_probe =
      std::min(min_edge_len / 2.0, e.length() / (2.0 * sd));
  const auto probe = longest_eps_prefix_row(P, start, e, eps_probe, work);
  if (!probe)
    throw AssumptionViolation(
        "no prefix exists at the probe radius; the caller must ensure the "
        "start point lies within it");

  const Point start_point = P.point_at(start);
  double running = distance(start_point, e.start);
  double best = std::numeric_limits<double>::infinity();

  if (*probe <= start) {
    best = std::max(running, distance(start_point, e.end));
  } else {
    const std::size_t base =
        static_cast<std::size_t>(std::floor(start - 1.0));
    const std::size_t edges = P.size() - 1 - base;
    for (std::size_t r = 0; r < edges; ++r) {
      const double t_lo = r == 0 ? start : static_cast<double>(base + r + 1);
      if (t_lo >= *probe) break;
      PointView a = r == 0 ? start_point.view() : P.vertex(base + r);
      PointView b = P.vertex(base + r + 1);
      const double to_end = detail::distance_point_to_segment_views(
          e.end, a, b);
      best = std::min(best, std::max(running, to_end));
      running = std::max(running,
                         detail::distance_point_to_segment_views(b, e.start,
                                                                 e.end));
    }
  }

  // The minimum is attained at a tangency; the row's crossing slack makes
  // the final scan see it.
  const auto gamma = longest_eps_prefix_row(P, start, e, best, work);
  if (!gamma)
    throw AssumptionViolation("minimum prefix radius admits no prefix");
  return PrefixOutcome{*gamma, best};
}

}  // namespace detail

/// Minimum prefix of the whole curve with respect to e.
inline PrefixOutcome minimum_prefix(const PolygonalCurve& P,
                                    const Segment& e) {
  return detail::minimum_prefix_from(P, 1.0, e, P.min_edge_length());
}

/// Result of the approximation: a value in [dist, sqrt(d) * dist], or
/// DontKnow when the decision at the probe threshold fails.
struct ApproxResult {
  std::optional<double> value;
  double threshold = 0.0;
  bool band_guaranteed = false;

  bool dont_know() const { return !value.has_value(); }
};

/// Linear-time sqrt(d)-approximation via chained minimum prefixes.
inline ApproxResult approximate(const PolygonalCurve& P,
                                const PolygonalCurve& Q,
                                WorkCounter* work = nullptr) {
  if (P.size() < 2 || Q.size() < 2)
    throw std::invalid_argument("need n, m >= 2");
  const double eps0 = epsilon0_approx(P, Q);
  if (!decide_greedy(P, Q, eps0, EdgeLengthMode::NonStrict, work).yes())
    return ApproxResult{std::nullopt, eps0, false};

  const double lp = P.min_edge_length();
  const double n = static_cast<double>(P.size());
  double s = 1.0;
  double eps = 0.0;
  for (std::size_t i = 1; i < Q.size(); ++i) {
    const Segment seg(Point(Q.vertex(i - 1)), Point(Q.vertex(i)));
    const PrefixOutcome piece =
        detail::minimum_prefix_from(P, s, seg, lp, work);
    eps = std::max(eps, piece.eps_piece);
    s = piece.gamma;
  }
  if (s < n)
    eps = std::max(eps, frechet_curve_to_point(P.subcurve(s, n),
                                               Q.vertex(Q.size() - 1)));
  const double sd = std::sqrt(static_cast<double>(P.dim()));
  return ApproxResult{eps, eps0, eps <= sd * eps0 + kTol};
}

}  // namespace frechet
