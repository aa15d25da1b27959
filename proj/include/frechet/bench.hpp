#pragma once

// Timing harness contrasting the linear greedy decision with the quadratic
// free-space decision. One CSV row per algorithm and size; fixed schema
// "algo,n,m,ns,result,work"; median of the timed repetitions after one
// discarded warm-up.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "frechet/freespace.hpp"
#include "frechet/generate.hpp"
#include "frechet/greedy.hpp"

namespace frechet {

inline constexpr char kBenchHeader[] = "algo,n,m,ns,result,work";

struct BenchRecord {
  std::string algo;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t ns = 0;
  std::string result;
  std::size_t work = 0;
};

inline std::ostream& operator<<(std::ostream& out, const BenchRecord& rec) {
  return out << rec.algo << ',' << rec.n << ',' << rec.m << ',' << rec.ns
             << ',' << rec.result << ',' << rec.work;
}

namespace detail {

template <typename F>
std::uint64_t median_time_ns(F&& body, std::size_t reps) {
  using clock = std::chrono::steady_clock;
  body();  // warm-up, discarded
  std::vector<std::uint64_t> times;
  times.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto begin = clock::now();
    body();
    const auto end = clock::now();
    times.push_back(static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin)
            .count()));
  }
  auto mid = times.begin() + times.size() / 2;
  std::nth_element(times.begin(), mid, times.end());
  return *mid;
}

// Yes-leaning long-edge pair of n vertices each; retries seeds so that the
// greedy decision walks the whole curve rather than bailing out early.
inline std::pair<PolygonalCurve, PolygonalCurve> bench_instance(
    std::size_t n, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    GenSpec sp, sq;
    sp.d = sq.d = 2;
    sp.n = sq.n = n;
    sp.min_edge = 2.1;
    sp.max_edge = 4.0;
    sp.turn_cap = 0.3;
    sq = sp;
    sq.min_edge = 2.5;  // above (1 + sqrt(2)) eps
    sq.max_edge = 4.5;
    sp.seed = seed + attempt * 7919;
    sq.seed = sp.seed ^ 0x6d2b79f5ULL;
    auto pair = gen_long_edge_pair(sp, sq, 1.0, EdgeLengthMode::Strict);
    if (detail::decide_greedy_unchecked(pair.first, pair.second, 1.0).yes())
      return pair;
  }
  throw std::runtime_error("no decidable benchmark instance found");
}

}  // namespace detail

/// Benchmarks decide_greedy on each size (m = n), and decide_alt_godau on
/// the sizes where n*m fits in 2^24 cells. Emits CSV to `out`.
inline void run_bench(const std::vector<std::size_t>& sizes, std::size_t reps,
                      std::uint64_t seed, std::ostream& out) {
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw std::invalid_argument("sizes must be ascending");
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");

  out << kBenchHeader << '\n';
  for (std::size_t n : sizes) {
    const auto [P, Q] = detail::bench_instance(n, seed);

    bool verdict = false;
    WorkCounter greedy_work;
    const std::uint64_t greedy_ns = detail::median_time_ns(
        [&] {
          greedy_work = WorkCounter{};
          verdict = decide_greedy(P, Q, 1.0, EdgeLengthMode::Strict,
                                  &greedy_work)
                        .yes();
        },
        reps);
    out << BenchRecord{"greedy", P.size(), Q.size(), greedy_ns,
                       verdict ? "yes" : "no", greedy_work.cells}
        << '\n';

    if (P.size() * Q.size() <= (std::size_t{1} << 24)) {
      bool oracle = false;
      WorkCounter oracle_work;
      const std::uint64_t oracle_ns = detail::median_time_ns(
          [&] {
            oracle_work = WorkCounter{};
            oracle = decide_alt_godau(P, Q, 1.0, &oracle_work);
          },
          reps);
      out << BenchRecord{"oracle", P.size(), Q.size(), oracle_ns,
                         oracle ? "yes" : "no", oracle_work.cells}
          << '\n';
    }
    out.flush();
  }
}

}  // namespace frechet
