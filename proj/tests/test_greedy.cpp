#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <thread>
#include <vector>

#include "frechet/generate.hpp"
#include "frechet/greedy.hpp"
#include "oracle_helpers.hpp"

using namespace frechet;
using testutil::make_curve;
using testutil::make_segment;

namespace {

// Mode-respecting random pair; nullopt when the instance sits within the
// comparison tolerance of the eps decision boundary.
std::optional<std::pair<PolygonalCurve, PolygonalCurve>> stable_pair(
    std::uint64_t seed, double eps, EdgeLengthMode mode, std::size_t d,
    std::size_t max_n) {
  GenSpec sp, sq;
  sp.d = sq.d = d;
  sp.seed = seed;
  sq.seed = seed ^ 0x5bf03635ULL;
  sp.n = 4 + seed % (max_n - 3);
  sq.n = 3 + (seed / 7) % (sp.n < 8 ? 4 : sp.n / 2);
  sp.turn_cap = 0.15 + 0.5 * static_cast<double>((seed / 3) % 100) / 100.0;
  sq.turn_cap = sp.turn_cap;
  if (mode == EdgeLengthMode::OneSidedLong) {
    sp.min_edge = 0.3 * eps;
    sp.max_edge = 3.0 * eps;
    sq.min_edge = 4.2 * eps;
    sq.max_edge = 7.0 * eps;
  } else {
    sp.min_edge = 2.1 * eps;
    sp.max_edge = 4.0 * eps;
    sq.min_edge = 2.8 * eps;  // above (1 + sqrt(3)) eps
    sq.max_edge = 5.0 * eps;
  }
  auto pair = gen_long_edge_pair(sp, sq, eps, mode);
  if (decide_alt_godau(pair.first, pair.second, eps - 2e-9) !=
      decide_alt_godau(pair.first, pair.second, eps + 2e-9))
    return std::nullopt;
  return pair;
}

double first_ball_entry(const PolygonalCurve& P, double from, PointView center,
                        double eps) {
  const std::size_t first_edge =
      static_cast<std::size_t>(std::floor(from - 1.0));
  for (std::size_t i = first_edge; i + 1 < P.size(); ++i) {
    auto hit = detail::ball_segment_interval_views(
        center, eps + kTol, P.vertex(i), P.vertex(i + 1));
    if (!hit) continue;
    const double lo = static_cast<double>(i + 1);
    const double hi = static_cast<double>(i + 2);
    const double g = detail::map_edge_param(hit->lo, lo, hi);
    if (detail::map_edge_param(hit->hi, lo, hi) < from) continue;
    return std::max(g, from);
  }
  return -1.0;
}

}  // namespace

TEST_CASE("edge-length precondition checks") {
  // l in the first coordinate makes min_edge explicit.
  const auto with_min_edge = [](double l) {
    return make_curve({{0, 0}, {l, 0}});
  };
  const double eps = 1.0;
  CHECK(check_preconditions(with_min_edge(10), with_min_edge(10), eps,
                            EdgeLengthMode::Strict));
  CHECK_FALSE(check_preconditions(with_min_edge(2), with_min_edge(3), eps,
                                  EdgeLengthMode::Strict));
  CHECK(check_preconditions(with_min_edge(2), with_min_edge(3), eps,
                            EdgeLengthMode::NonStrict));
  CHECK(check_preconditions(with_min_edge(0.1), with_min_edge(5), eps,
                            EdgeLengthMode::OneSidedLong));
  CHECK_FALSE(check_preconditions(with_min_edge(0.1), with_min_edge(3.9), eps,
                                  EdgeLengthMode::OneSidedLong));
}

TEST_CASE("greedy decision on parallel lines") {
  const auto P = make_curve({{0, 0}, {10, 0}});
  const auto near = make_curve({{0, 0.5}, {10, 0.5}});
  const auto d = decide_greedy(P, near, 1.0, EdgeLengthMode::Strict);
  REQUIRE(d.yes());
  REQUIRE(d.witness->gammas.size() == 2);
  CHECK(d.witness->gammas[0] == Catch::Approx(1.0));
  CHECK(d.witness->gammas[1] == Catch::Approx(2.0));

  const auto far = make_curve({{0, 3}, {10, 3}});
  CHECK_FALSE(decide_greedy(P, far, 1.0, EdgeLengthMode::Strict).yes());
}

TEST_CASE("precondition violations raise a distinct error") {
  const auto P = make_curve({{0, 0}, {1.5, 0}, {3, 0}});
  const auto Q = make_curve({{0, 0}, {3, 0}});
  CHECK_THROWS_AS(decide_greedy(P, Q, 1.0, EdgeLengthMode::Strict),
                  PreconditionError);
  CHECK_THROWS_AS(decide_greedy(P, Q, 1.0, EdgeLengthMode::OneSidedLong),
                  PreconditionError);
}

TEST_CASE("greedy verdict equals the oracle on long-edge instances") {
  const EdgeLengthMode modes[] = {EdgeLengthMode::Strict,
                                  EdgeLengthMode::NonStrict,
                                  EdgeLengthMode::OneSidedLong};
  for (EdgeLengthMode mode : modes) {
    int yes = 0, no = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const std::size_t d = 2 + seed % 2;
      auto pair = stable_pair(seed, 1.0, mode, d, 25);
      if (!pair) continue;
      const auto& [P, Q] = *pair;
      const bool oracle = decide_alt_godau(P, Q, 1.0);
      const bool greedy = decide_greedy(P, Q, 1.0, mode).yes();
      CHECK(greedy == oracle);
      (oracle ? yes : no) += 1;
    }
    INFO("mode " << to_string(mode));
    CHECK(yes > 10);
    CHECK(no > 10);
  }
}

TEST_CASE("witness pieces are valid and maximal") {
  int witnesses = 0;
  for (std::uint64_t seed = 500; seed <= 700; ++seed) {
    auto pair = stable_pair(seed, 1.0, EdgeLengthMode::Strict, 2, 20);
    if (!pair) continue;
    const auto& [P, Q] = *pair;
    const auto d = decide_greedy(P, Q, 1.0, EdgeLengthMode::Strict);
    if (!d.yes()) continue;
    ++witnesses;
    const auto& g = d.witness->gammas;
    REQUIRE(g.size() == Q.size());
    CHECK(g.front() == 1.0);
    CHECK(g.back() == Catch::Approx(static_cast<double>(P.size())));
    const double n = static_cast<double>(P.size());
    for (std::size_t i = 1; i < g.size(); ++i) {
      CHECK(g[i - 1] <= g[i]);
      const auto piece = P.subcurve(g[i - 1], g[i]);
      const auto seg = make_curve({Point(Q.vertex(i - 1)), Point(Q.vertex(i))});
      CHECK(decide_alt_godau(piece, seg, 1.0));
      if (g[i] < n) {
        const double h = 1e-4 * (n - g[i]);
        CHECK_FALSE(decide_alt_godau(P.subcurve(g[i - 1], g[i] + h), seg, 1.0));
      }
    }
  }
  CHECK(witnesses > 30);
}

TEST_CASE("total row-scan work stays linear") {
  for (std::uint64_t seed = 900; seed <= 1000; ++seed) {
    auto pair = stable_pair(seed, 1.0, EdgeLengthMode::Strict, 2, 40);
    if (!pair) continue;
    const auto& [P, Q] = *pair;
    WorkCounter work;
    decide_greedy(P, Q, 1.0, EdgeLengthMode::Strict, &work);
    CHECK(work.cells <= P.size() + 2 * Q.size());
  }
}

TEST_CASE("cutting property: the first prefix never hurts") {
  int checked = 0;
  for (std::uint64_t seed = 1200; seed <= 1500; ++seed) {
    auto pair = stable_pair(seed, 1.0, EdgeLengthMode::Strict, 2, 20);
    if (!pair) continue;
    const auto& [P, Q] = *pair;
    if (!decide_alt_godau(P, Q, 1.0)) continue;
    ++checked;
    const Segment first(Point(Q.vertex(0)), Point(Q.vertex(1)));
    auto gamma2 = longest_eps_prefix_row(P, first, 1.0);
    REQUIRE(gamma2);
    const auto tailP = P.subcurve(*gamma2, static_cast<double>(P.size()));
    const auto tailQ = Q.subcurve(2.0, static_cast<double>(Q.size()));
    CHECK(decide_alt_godau(tailP, tailQ, 1.0));
  }
  CHECK(checked > 30);
}

TEST_CASE("prefix tails stay near the end ball") {
  testutil::Rng rng(59);
  int sqrt_checked = 0, ball3_checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t d = 2 + rng.index(0, 1);
    const bool long_edges = trial % 2 == 0;
    const double eps = rng.uniform(0.4, 1.5);
    const double seg_len = rng.uniform(2.05, 6.0) * eps;

    std::vector<double> flat;
    std::vector<double> pos(d, 0.0);
    pos[0] = rng.uniform(-0.9, 0.9) * eps;
    if (d > 1) pos[1] = rng.uniform(-0.4, 0.4) * eps;
    flat.insert(flat.end(), pos.begin(), pos.end());
    const std::size_t n = 4 + rng.index(0, 5);
    for (std::size_t i = 1; i < n; ++i) {
      const double len = (long_edges ? rng.uniform(2.05, 4.0)
                                     : rng.uniform(0.15, 3.0)) *
                         eps;
      std::vector<double> dir(d);
      dir[0] = 1.0;
      for (std::size_t k = 1; k < d; ++k) dir[k] = rng.uniform(-0.8, 0.8);
      double norm2 = 0.0;
      for (double c : dir) norm2 += c * c;
      const double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t k = 0; k < d; ++k) pos[k] += len * inv * dir[k];
      flat.insert(flat.end(), pos.begin(), pos.end());
    }
    PolygonalCurve P(std::move(flat), d);
    if (long_edges && !(P.min_edge_length() > 2.0 * eps)) continue;

    std::vector<double> e1(d, 0.0), e2(d, 0.0);
    e2[0] = seg_len;
    const Segment e{Point(e1), Point(e2)};

    auto gamma = longest_eps_prefix_row(P, e, eps);
    if (!gamma) continue;
    const double alpha = first_ball_entry(P, 1.0, e.end, eps);
    if (alpha < 0.0 || alpha > *gamma) continue;

    const double radius =
        (long_edges ? std::sqrt(static_cast<double>(d)) : 3.0) * eps;
    const double worst = testutil::sampled_max_distance_to_point(
        P, alpha, *gamma, e.end, 600);
    CHECK(worst <= radius + 1e-6);
    (long_edges ? sqrt_checked : ball3_checked) += 1;
  }
  CHECK(sqrt_checked > 40);
  CHECK(ball3_checked > 40);
}

TEST_CASE("one-dimensional curves work end to end") {
  int yes = 0, no = 0;
  for (std::uint64_t seed = 3000; seed < 3120; ++seed) {
    auto pair = stable_pair(seed, 1.0, EdgeLengthMode::Strict, 1, 18);
    if (!pair) continue;
    const auto& [P, Q] = *pair;
    REQUIRE(P.dim() == 1);
    const bool oracle = decide_alt_godau(P, Q, 1.0);
    CHECK(decide_greedy(P, Q, 1.0, EdgeLengthMode::Strict).yes() == oracle);
    (oracle ? yes : no) += 1;
  }
  CHECK(yes + no > 60);

  const auto A = make_curve({{0}, {10}});
  const auto B = make_curve({{0.5}, {9.5}});
  CHECK(decide_alt_godau(A, B, 0.5));
  CHECK(decide_greedy(A, B, 0.5, EdgeLengthMode::Strict).yes());
  CHECK(exact_frechet(A, B) == Catch::Approx(0.5));
}

TEST_CASE("concurrent decisions agree with sequential ones") {
  std::vector<std::pair<PolygonalCurve, PolygonalCurve>> instances;
  std::vector<bool> expected;
  for (std::uint64_t seed = 2000; instances.size() < 32; ++seed) {
    auto pair = stable_pair(seed, 1.0, EdgeLengthMode::Strict, 2, 30);
    if (!pair) continue;
    expected.push_back(
        decide_greedy(pair->first, pair->second, 1.0, EdgeLengthMode::Strict)
            .yes());
    instances.push_back(std::move(*pair));
  }
  std::vector<char> results(instances.size(), 2);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < instances.size(); i += 4) {
        results[i] = decide_greedy(instances[i].first, instances[i].second,
                                   1.0, EdgeLengthMode::Strict)
                         .yes()
                         ? 1
                         : 0;
      }
    });
  }
  for (auto& t : workers) t.join();
  for (std::size_t i = 0; i < instances.size(); ++i)
    CHECK(results[i] == (expected[i] ? 1 : 0));
}

TEST_CASE("short-edge counterexamples exist and long-edge ones do not") {
  auto found = fig8_counterexample_search(1.0, 30000, 42);
  REQUIRE(found);
  const auto& [P, Q] = *found;
  const double hi = (1.0 + std::sqrt(2.0)) * 1.0;
  CHECK(P.min_edge_length() >= 2.0 - 1e-12);
  CHECK(Q.min_edge_length() >= 2.0 - 1e-12);
  for (std::size_t i = 0; i + 1 < P.size(); ++i)
    CHECK(distance(P.vertex(i), P.vertex(i + 1)) <= hi + 1e-12);
  const bool oracle = decide_alt_godau(P, Q, 1.0);
  const bool greedy = detail::decide_greedy_unchecked(P, Q, 1.0).yes();
  CHECK(greedy != oracle);

  CHECK_FALSE(fig8_counterexample_search(1.0, 0, 42));
}
