#pragma once

// Seeded generator for long-edge curve pairs. P is a bounded-turn random
// walk; Q perturbs a coarsened copy of P so that both Yes and No instances
// occur at the target eps. Edge lengths are repaired upward where the
// perturbation would break the requested mode's hypothesis.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frechet/geometry.hpp"
#include "frechet/greedy.hpp"

namespace frechet {

struct GenSpec {
  std::size_t n = 10;          // vertex count
  std::size_t d = 2;           // dimension
  double min_edge = 2.5;       // per-step edge length range
  double max_edge = 4.0;
  double turn_cap = 0.4;       // max heading change per step, radians
  std::uint64_t seed = 1;
};

namespace detail {

inline std::vector<double> random_unit_vector(std::size_t d,
                                              std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(d);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& c : v) {
      c = gauss(rng);
      n2 += c * c;
    }
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c *= inv;
  return v;
}

// Rotates `dir` by `angle` toward a random perpendicular direction.
inline void rotate_heading(std::vector<double>& dir, double angle,
                           std::mt19937_64& rng) {
  if (dir.size() == 1 || angle == 0.0) return;
  std::vector<double> w = random_unit_vector(dir.size(), rng);
  double proj = 0.0;
  for (std::size_t k = 0; k < dir.size(); ++k) proj += w[k] * dir[k];
  double n2 = 0.0;
  for (std::size_t k = 0; k < dir.size(); ++k) {
    w[k] -= proj * dir[k];
    n2 += w[k] * w[k];
  }
  if (n2 < 1e-12) return;  // rare degenerate draw; keep heading
  const double inv = 1.0 / std::sqrt(n2);
  const double c = std::cos(angle), s = std::sin(angle);
  double out2 = 0.0;
  for (std::size_t k = 0; k < dir.size(); ++k) {
    dir[k] = c * dir[k] + s * inv * w[k];
    out2 += dir[k] * dir[k];
  }
  // Renormalize: rounding in the near-parallel Gram-Schmidt otherwise
  // compounds across many steps.
  const double out_inv = 1.0 / std::sqrt(out2);
  for (auto& v : dir) v *= out_inv;
}

inline double required_edge(double eps, std::size_t d, EdgeLengthMode mode,
                            bool for_q) {
  const double sd = std::sqrt(static_cast<double>(d));
  double bound = 0.0;
  switch (mode) {
    case EdgeLengthMode::Strict:
    case EdgeLengthMode::NonStrict:
      bound = for_q ? (1.0 + sd) * eps : 2.0 * eps;
      break;
    case EdgeLengthMode::OneSidedLong:
      bound = for_q ? 4.0 * eps : 0.0;
      break;
  }
  return bound;
}

}  // namespace detail

/// Deterministic-in-seed random walk with per-step edge length in
/// [min_edge, max_edge] and heading change at most turn_cap.
inline PolygonalCurve gen_walk(const GenSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("walk needs >= 2 vertices");
  if (spec.d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(spec.min_edge > 0.0) || spec.min_edge > spec.max_edge)
    throw std::invalid_argument("need 0 < min_edge <= max_edge");
  if (spec.turn_cap < 0.0 || spec.turn_cap > 1.5707963267948966)
    throw std::invalid_argument("turn_cap outside [0, pi/2]");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> length(spec.min_edge, spec.max_edge);
  std::uniform_real_distribution<double> turn(0.0, spec.turn_cap);

  std::vector<double> flat;
  flat.reserve(spec.n * spec.d);
  std::vector<double> pos(spec.d, 0.0);
  flat.insert(flat.end(), pos.begin(), pos.end());
  std::vector<double> heading = detail::random_unit_vector(spec.d, rng);
  for (std::size_t i = 1; i < spec.n; ++i) {
    detail::rotate_heading(heading, turn(rng), rng);
    const double len = length(rng);
    for (std::size_t k = 0; k < spec.d; ++k) pos[k] += len * heading[k];
    flat.insert(flat.end(), pos.begin(), pos.end());
  }
  return PolygonalCurve(std::move(flat), spec.d);
}

/// Generates a (P, Q) pair satisfying the mode's edge-length hypothesis at
/// eps. Q samples evenly spaced vertices of P and displaces each by a
/// random vector whose magnitude scale is drawn from [0, 2 eps], then short
/// Q edges are stretched up to the required length.
inline std::pair<PolygonalCurve, PolygonalCurve> gen_long_edge_pair(
    const GenSpec& spec_P, const GenSpec& spec_Q, double eps,
    EdgeLengthMode mode) {
  if (spec_P.d != spec_Q.d) throw std::invalid_argument("dimension mismatch");
  if (eps <= 0.0) throw std::invalid_argument("eps must be > 0");
  const std::size_t d = spec_P.d;

  const double need_p = detail::required_edge(eps, d, mode, false);
  const double need_q = detail::required_edge(eps, d, mode, true);
  const bool strict = (mode != EdgeLengthMode::NonStrict);
  if (strict ? !(spec_P.min_edge > need_p) : !(spec_P.min_edge >= need_p))
    throw std::invalid_argument("spec_P.min_edge too short for mode");
  if (strict ? !(spec_Q.min_edge > need_q) : !(spec_Q.min_edge >= need_q))
    throw std::invalid_argument("spec_Q.min_edge too short for mode");

  PolygonalCurve P = gen_walk(spec_P);

  std::mt19937_64 rng(spec_Q.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double scale = unit(rng) * 2.0 * eps;

  const std::size_t m = spec_Q.n;
  if (m < 2) throw std::invalid_argument("Q needs >= 2 vertices");
  std::vector<std::vector<double>> q(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double pos = static_cast<double>(j) *
                       static_cast<double>(P.size() - 1) /
                       static_cast<double>(m - 1);
    PointView v = P.vertex(static_cast<std::size_t>(std::llround(pos)));
    std::vector<double> c(v.begin(), v.end());
    std::vector<double> dir = detail::random_unit_vector(d, rng);
    const double mag = scale * unit(rng);
    for (std::size_t k = 0; k < d; ++k) c[k] += mag * dir[k];
    q[j] = std::move(c);
  }

  // Stretch edges that fell below the mode's requirement for Q.
  const double repair = need_q <= 0.0
                            ? spec_Q.min_edge
                            : need_q * (1.0 + 1e-6);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    std::vector<double> delta(d);
    double len2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      delta[k] = q[j + 1][k] - q[j][k];
      len2 += delta[k] * delta[k];
    }
    const double len = std::sqrt(len2);
    if (len >= repair) continue;
    if (len < 1e-12) {
      delta = detail::random_unit_vector(d, rng);
      for (std::size_t k = 0; k < d; ++k)
        q[j + 1][k] = q[j][k] + repair * delta[k];
    } else {
      const double f = repair / len;
      for (std::size_t k = 0; k < d; ++k)
        q[j + 1][k] = q[j][k] + f * delta[k];
    }
  }

  std::vector<double> flat;
  flat.reserve(m * d);
  for (auto& c : q) flat.insert(flat.end(), c.begin(), c.end());
  PolygonalCurve Q(std::move(flat), d);

  if (!check_preconditions(P, Q, eps, mode))
    throw std::logic_error("generated pair misses its own precondition");
  return {std::move(P), std::move(Q)};
}

}  // namespace frechet
