#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "frechet/freespace.hpp"
#include "oracle_helpers.hpp"

using namespace frechet;
using testutil::make_curve;
using testutil::make_segment;

namespace {

PolygonalCurve random_curve(testutil::Rng& rng, std::size_t n, double span) {
  std::vector<Point> pts;
  pts.push_back(Point{rng.uniform(-span, span), rng.uniform(-span, span)});
  for (std::size_t i = 1; i < n; ++i) {
    Point p{rng.uniform(-span, span), rng.uniform(-span, span)};
    while (p == pts.back())
      p = Point{rng.uniform(-span, span), rng.uniform(-span, span)};
    pts.push_back(p);
  }
  return PolygonalCurve(pts);
}

}  // namespace

TEST_CASE("free-space decision on straight-line pairs") {
  const auto P = make_curve({{0, 0}, {10, 0}});
  CHECK(decide_alt_godau(P, P, 0.0));
  const auto Q = make_curve({{0, 3}, {10, 3}});
  CHECK_FALSE(decide_alt_godau(P, Q, 1.0));
  CHECK(decide_alt_godau(P, Q, 3.0));
  CHECK_FALSE(decide_alt_godau(P, Q, 3.0 - 1e-6));
}

TEST_CASE("decision handles single-vertex curves") {
  const auto point = make_curve({{0, 0}});
  const auto path = make_curve({{0, 1}, {2, 0}, {0, -1}});
  CHECK(decide_alt_godau(point, path, 2.24));
  CHECK_FALSE(decide_alt_godau(point, path, 1.99));
  CHECK(decide_alt_godau(point, point, 0.0));
}

TEST_CASE("decision is monotone in eps and symmetric") {
  testutil::Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto P = random_curve(rng, 2 + rng.index(0, 6), 4.0);
    const auto Q = random_curve(rng, 2 + rng.index(0, 6), 4.0);
    const double eps = rng.uniform(0.0, 6.0);
    const bool at_eps = decide_alt_godau(P, Q, eps);
    CHECK(decide_alt_godau(Q, P, eps) == at_eps);
    if (at_eps) {
      CHECK(decide_alt_godau(P, Q, eps + rng.uniform(0.0, 3.0)));
    } else {
      CHECK_FALSE(decide_alt_godau(P, Q, eps * rng.uniform(0.0, 1.0)));
    }
  }
}

TEST_CASE("critical values cover the distance") {
  const auto P = make_curve({{0, 0}, {10, 0}});
  const auto Q1 = make_curve({{0, 1}, {10, 1}});
  CHECK(enumerate_all_critical_values(P, Q1).contains(1.0, 1e-12));

  const auto Q3 = make_curve({{0, 3}, {10, 3}});
  const auto set = enumerate_all_critical_values(P, Q3);
  double smallest_yes = -1.0;
  for (double v : set.values()) {
    if (v > 0.0 && decide_alt_godau(P, Q3, v)) {
      smallest_yes = v;
      break;
    }
  }
  CHECK(smallest_yes == Catch::Approx(3.0));
}

TEST_CASE("exact distance is an enumerated critical value") {
  testutil::Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto P = random_curve(rng, 2 + rng.index(0, 10), 5.0);
    const auto Q = random_curve(rng, 2 + rng.index(0, 10), 5.0);
    const double exact = exact_frechet(P, Q);
    CHECK(enumerate_all_critical_values(P, Q).contains(exact, 1e-9));
  }
}

TEST_CASE("exact distance basics") {
  const auto P = make_curve({{0, 0}, {4, 1}, {7, -2}});
  CHECK(exact_frechet(P, P) == Catch::Approx(0.0).margin(1e-12));
  const auto A = make_curve({{0, 0}, {10, 0}});
  const auto B = make_curve({{0, 0.5}, {10, 0.5}});
  CHECK(exact_frechet(A, B) == Catch::Approx(0.5));
}

TEST_CASE("exact distance agrees with continuous bisection") {
  testutil::Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto P = random_curve(rng, 8, 5.0);
    const auto Q = random_curve(rng, 8, 5.0);
    const double v = exact_frechet(P, Q);
    CHECK_FALSE(decide_alt_godau(P, Q, v - 1e-6));
    CHECK(decide_alt_godau(P, Q, v + 1e-6));
    const double bis = testutil::bisect_frechet(P, Q);
    CHECK(std::abs(bis - v) <= 2e-9);
  }
}

TEST_CASE("exact distance dominates simple lower bounds") {
  testutil::Rng rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const auto P = random_curve(rng, 2 + rng.index(0, 8), 5.0);
    const auto Q = random_curve(rng, 2 + rng.index(0, 8), 5.0);
    const double v = exact_frechet(P, Q);
    CHECK(v + 1e-9 >= distance(P.front(), Q.front()));
    CHECK(v + 1e-9 >= distance(P.back(), Q.back()));
    // Hausdorff-style bound: each vertex must be matched somewhere.
    double hausdorff = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j + 1 < Q.size(); ++j)
        best = std::min(best, detail::distance_point_to_segment_views(
                                  P.vertex(i), Q.vertex(j), Q.vertex(j + 1)));
      if (Q.size() == 1) best = distance(P.vertex(i), Q.front());
      hausdorff = std::max(hausdorff, best);
    }
    CHECK(v + 1e-9 >= hausdorff);
  }
}

TEST_CASE("single-row longest prefix on straight lines") {
  const auto P = make_curve({{0, 0}, {10, 0}});
  auto s = longest_eps_prefix_row(P, make_segment({0, 0}, {4, 0}), 1.0);
  REQUIRE(s);
  CHECK(*s == Catch::Approx(1.5));

  CHECK_FALSE(longest_eps_prefix_row(P, make_segment({0, 3}, {4, 3}), 1.0));

  const auto S = make_curve({{0, 0}, {4, 0}});
  auto full = longest_eps_prefix_row(S, make_segment({0, 0}, {4, 0}), 0.5);
  REQUIRE(full);
  CHECK(*full == Catch::Approx(2.0));
}

TEST_CASE("prefix endpoint lies on the end ball or at n") {
  testutil::Rng rng(41);
  int present = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto P = random_curve(rng, 2 + rng.index(0, 8), 4.0);
    const auto e = make_segment(
        Point{rng.uniform(-4, 4), rng.uniform(-4, 4)},
        Point{rng.uniform(-4, 4), rng.uniform(-4, 4)});
    const double eps = rng.uniform(0.2, 4.0);
    auto s = longest_eps_prefix_row(P, e, eps);
    if (!s) continue;
    ++present;
    const double n = static_cast<double>(P.size());
    if (*s < n) {
      const double r = distance(P.point_at(*s), e.end);
      CHECK(r == Catch::Approx(eps).margin(1e-6));
    }
  }
  CHECK(present > 20);
}

TEST_CASE("single-row prefix agrees with the candidate oracle") {
  testutil::Rng rng(43);
  int checked = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto P = random_curve(rng, 2 + rng.index(0, 8), 4.0);
    const auto e = make_segment(
        Point{rng.uniform(-4, 4), rng.uniform(-4, 4)},
        Point{rng.uniform(-4, 4), rng.uniform(-4, 4)});
    const double eps = rng.uniform(0.2, 4.0);
    const double start =
        trial % 3 == 0 ? rng.uniform(1.0, static_cast<double>(P.size())) : 1.0;
    auto fast = longest_eps_prefix_row(P, start, e, eps);
    auto slow = testutil::prefix_oracle(P, start, e, eps);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      ++checked;
      CHECK(*fast == Catch::Approx(*slow).margin(1e-9));
    }
  }
  CHECK(checked > 60);
}
