// Command-line front end: decisions, exact computation, approximation, the
// quadratic oracle, index build/query, instance generation and benchmarks.
//
// Exit codes: 0 = yes/success, 1 = no, 2 = edge-length precondition error,
// 64 = usage error, 65 = unreadable or malformed input.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frechet/bench.hpp"
#include "frechet/curve_io.hpp"
#include "frechet/freespace.hpp"
#include "frechet/generate.hpp"
#include "frechet/greedy.hpp"
#include "frechet/optimize.hpp"
#include "frechet/query_index.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%#.12g", v);
  return buf;
}

void print_witness(const frechet::MatchingWitness& witness) {
  std::string line;
  for (std::size_t i = 0; i < witness.gammas.size(); ++i) {
    if (i > 0) line.push_back(' ');
    line += fmt(witness.gammas[i]);
  }
  std::cout << line << '\n';
}

int report_decision(const frechet::Decision& decision) {
  if (decision.yes()) {
    std::cout << "yes\n";
    print_witness(*decision.witness);
    return kExitYes;
  }
  std::cout << "no\n";
  return kExitNo;
}

frechet::EdgeLengthMode parse_mode(const std::string& name) {
  if (name == "strict") return frechet::EdgeLengthMode::Strict;
  if (name == "nonstrict") return frechet::EdgeLengthMode::NonStrict;
  if (name == "onesided") return frechet::EdgeLengthMode::OneSidedLong;
  throw CLI::ValidationError("--mode", "unknown mode '" + name + "'");
}

std::uint64_t seed_override(std::uint64_t seed) {
  if (const char* env = std::getenv("FLE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    std::cerr << "warning: ignoring unparsable FLE_SEED='" << env << "'\n";
  }
  return seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fréchet distance for curves with long edges"};
  app.require_subcommand(1);

  std::string p_path, q_path, index_path, out_path, out_p, out_q;
  double eps = 1.0;
  std::string mode_name = "strict";

  auto* decide = app.add_subcommand("decide", "greedy decision");
  decide->add_option("-p", p_path, "curve P file")->required();
  decide->add_option("-q", q_path, "curve Q file")->required();
  decide->add_option("-e,--eps", eps, "distance threshold")->required();
  decide->add_option("--mode", mode_name, "strict|nonstrict|onesided");

  auto* compute = app.add_subcommand("compute", "exact distance");
  compute->add_option("-p", p_path, "curve P file")->required();
  compute->add_option("-q", q_path, "curve Q file")->required();

  auto* approx = app.add_subcommand("approx", "sqrt(d)-approximation");
  approx->add_option("-p", p_path, "curve P file")->required();
  approx->add_option("-q", q_path, "curve Q file")->required();

  auto* oracle = app.add_subcommand("oracle", "quadratic reference");
  oracle->require_subcommand(1);
  auto* oracle_decide = oracle->add_subcommand("decide", "free-space decision");
  oracle_decide->add_option("-p", p_path, "curve P file")->required();
  oracle_decide->add_option("-q", q_path, "curve Q file")->required();
  oracle_decide->add_option("-e,--eps", eps, "distance threshold")->required();
  auto* oracle_exact = oracle->add_subcommand("exact", "exact distance");
  oracle_exact->add_option("-p", p_path, "curve P file")->required();
  oracle_exact->add_option("-q", q_path, "curve Q file")->required();

  auto* index = app.add_subcommand("index", "prefix query index");
  index->require_subcommand(1);
  auto* index_build = index->add_subcommand("build", "preprocess a curve");
  index_build->add_option("-p", p_path, "curve P file")->required();
  index_build->add_option("-o", out_path, "output index file")->required();
  auto* index_query = index->add_subcommand("query", "decide via the index");
  index_query->add_option("-i", index_path, "index file")->required();
  index_query->add_option("-q", q_path, "query curve file")->required();
  index_query->add_option("-e,--eps", eps, "distance threshold")->required();

  frechet::GenSpec spec_p, spec_q;
  spec_p.n = 20;
  spec_q.n = 8;
  double gen_eps = 1.0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "generate a long-edge pair");
  gen->add_option("--np", spec_p.n, "vertices of P");
  gen->add_option("--nq", spec_q.n, "vertices of Q");
  gen->add_option("-d,--dim", spec_p.d, "dimension");
  gen->add_option("-e,--eps", gen_eps, "target eps");
  gen->add_option("--mode", mode_name, "strict|nonstrict|onesided");
  gen->add_option("--seed", gen_seed, "random seed (FLE_SEED overrides)");
  auto* mep = gen->add_option("--min-edge-p", spec_p.min_edge, "min edge of P");
  auto* xep = gen->add_option("--max-edge-p", spec_p.max_edge, "max edge of P");
  auto* meq = gen->add_option("--min-edge-q", spec_q.min_edge, "min edge of Q");
  auto* xeq = gen->add_option("--max-edge-q", spec_q.max_edge, "max edge of Q");
  gen->add_option("--turn-cap", spec_p.turn_cap, "max heading change, rad");
  gen->add_option("--out-p", out_p, "output file for P")->required();
  gen->add_option("--out-q", out_q, "output file for Q")->required();

  std::vector<std::size_t> sizes;
  std::size_t reps = 5;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "greedy vs oracle scaling");
  bench->add_option("--sizes", sizes, "vertex counts, ascending")
      ->required()
      ->delimiter(',');
  bench->add_option("--reps", reps, "timed repetitions per point");
  bench->add_option("--seed", bench_seed, "random seed (FLE_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help() << '\n';
    return kExitUsage;
  }

  try {
    if (decide->parsed()) {
      const auto P = frechet::parse_curve_file(p_path);
      const auto Q = frechet::parse_curve_file(q_path);
      return report_decision(
          frechet::decide_greedy(P, Q, eps, parse_mode(mode_name)));
    }
    if (compute->parsed()) {
      const auto P = frechet::parse_curve_file(p_path);
      const auto Q = frechet::parse_curve_file(q_path);
      const auto r = frechet::optimize(P, Q);
      if (r.above_threshold())
        std::cout << "above-threshold\n";
      else
        std::cout << fmt(*r.distance) << '\n';
      return kExitYes;
    }
    if (approx->parsed()) {
      const auto P = frechet::parse_curve_file(p_path);
      const auto Q = frechet::parse_curve_file(q_path);
      const auto r = frechet::approximate(P, Q);
      if (r.dont_know()) {
        std::cout << "unknown\n";
      } else {
        std::cout << fmt(*r.value) << '\n';
        if (!r.band_guaranteed) std::cout << "band-not-guaranteed\n";
      }
      return kExitYes;
    }
    if (oracle_decide->parsed()) {
      const auto P = frechet::parse_curve_file(p_path);
      const auto Q = frechet::parse_curve_file(q_path);
      const bool yes = frechet::decide_alt_godau(P, Q, eps);
      std::cout << (yes ? "yes" : "no") << '\n';
      return yes ? kExitYes : kExitNo;
    }
    if (oracle_exact->parsed()) {
      const auto P = frechet::parse_curve_file(p_path);
      const auto Q = frechet::parse_curve_file(q_path);
      std::cout << fmt(frechet::exact_frechet(P, Q)) << '\n';
      return kExitYes;
    }
    if (index_build->parsed()) {
      const auto P = frechet::parse_curve_file(p_path);
      frechet::save_index_file(frechet::build_index(P), out_path);
      return kExitYes;
    }
    if (index_query->parsed()) {
      const auto ix = frechet::load_index_file(index_path);
      const auto Q = frechet::parse_curve_file(q_path);
      return report_decision(frechet::decide_query(ix, Q, eps));
    }
    if (gen->parsed()) {
      const auto mode = parse_mode(mode_name);
      spec_q.d = spec_p.d;
      spec_q.turn_cap = spec_p.turn_cap;
      const double sd = std::sqrt(static_cast<double>(spec_p.d));
      const bool onesided = mode == frechet::EdgeLengthMode::OneSidedLong;
      if (!*mep) spec_p.min_edge = (onesided ? 0.3 : 2.1) * gen_eps;
      if (!*xep) spec_p.max_edge = (onesided ? 3.0 : 4.0) * gen_eps;
      if (!*meq)
        spec_q.min_edge = (onesided ? 4.2 : (1.1 + sd) * 1.05) * gen_eps;
      if (!*xeq) spec_q.max_edge = (onesided ? 7.0 : 5.0) * gen_eps;
      const std::uint64_t seed = seed_override(gen_seed);
      spec_p.seed = seed;
      spec_q.seed = seed ^ 0x51ed270b5ULL;
      const auto [P, Q] =
          frechet::gen_long_edge_pair(spec_p, spec_q, gen_eps, mode);
      frechet::write_curve_file(out_p, P);
      frechet::write_curve_file(out_q, Q);
      return kExitYes;
    }
    if (bench->parsed()) {
      frechet::run_bench(sizes, reps, seed_override(bench_seed), std::cout);
      return kExitYes;
    }
  } catch (const frechet::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
