// Acceptance suite: every criterion prints one PASS/FAIL line and the
// binary exits non-zero if any fail. Usage:
//   acceptance <scenarios-dir> <cli-binary>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "causanet/analysis.hpp"
#include "causanet/dsl.hpp"
#include "causanet/puzzles.hpp"

using namespace causanet;
namespace fs = std::filesystem;

namespace {

fs::path g_scenarios;
std::string g_cli;
int g_failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (elapsed > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over budget: ") +
              std::to_string(elapsed) + "s > " +
              std::to_string(budget_seconds) + "s";
  }
  char timing[32];
  std::snprintf(timing, sizeof(timing), "%.2fs", elapsed);
  std::cout << (ok ? "PASS" : "FAIL") << " " << number << " " << label << " ["
            << timing << "]";
  if (!detail.empty()) std::cout << " — " << detail;
  std::cout << "\n";
  if (!ok) ++g_failures;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  std::string command = g_cli + " " + args + " >/dev/null 2>&1";
  int status = std::system(command.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

NetDef fig2_left() {
  NetDef net;
  net.name = "fig2_left";
  net.places = {"p1", "p2", "p3", "p4", "p5"};
  net.initial_tokens = {2, 2, 0, 0, 0};
  net.transitions = {
      {"t1", {{0, 2}, {1, 1}}, {{2, 1}}, TimingSpec::immediate()},
      {"t2", {{2, 1}}, {{3, 1}}, TimingSpec::immediate()},
      {"t3", {{2, 1}}, {{4, 1}}, TimingSpec::immediate()},
  };
  return net;
}

// 1. Exact marking traces through enabled_transitions/fire.
bool paper_marking_traces(std::string& detail) {
  NetDef net = fig2_left();
  Marking m0({2, 2, 0, 0, 0});
  auto enabled0 = enabled_transitions(net, m0);
  if (enabled0 != std::vector<std::size_t>{0}) {
    detail = "M0 must enable exactly t1";
    return false;
  }
  Marking m1 = fire(net, m0, 0);
  if (m1 != Marking({0, 1, 1, 0, 0})) {
    detail = "t1 from M0 reached " + m1.to_string();
    return false;
  }
  auto enabled1 = enabled_transitions(net, m1);
  if (enabled1 != std::vector<std::size_t>{1, 2}) {
    detail = "M1 must enable exactly t2 and t3";
    return false;
  }
  if (fire(net, m1, 1) != Marking({0, 1, 0, 1, 0})) {
    detail = "t2 from M1 wrong";
    return false;
  }
  if (fire(net, m1, 2) != Marking({0, 1, 0, 0, 1})) {
    detail = "t3 from M1 wrong";
    return false;
  }

  NetDef jobs = build_scenario("job_market").net;
  Marking j0({3, 1, 0, 0});
  Marking j1 = fire(jobs, j0, 0);
  if (j1 != Marking({2, 0, 1, 0})) {
    detail = "job-market apply wrong: " + j1.to_string();
    return false;
  }
  Marking j2 = fire(jobs, j1, 1);
  if (j2 != Marking({2, 1, 0, 1})) {
    detail = "job-market hire wrong: " + j2.to_string();
    return false;
  }
  detail = "both quoted chains reproduced exactly";
  return true;
}

// 2. Reachability oracle.
bool reachability_oracle(std::string& detail) {
  ReachabilityGraph g = reachability_graph(fig2_left(), 100, 100);
  if (g.truncated || g.nodes.size() != 4 || g.edges.size() != 3) {
    detail = std::to_string(g.nodes.size()) + " nodes, " +
             std::to_string(g.edges.size()) + " edges";
    return false;
  }
  auto dead = detect_deadlocks(g);
  std::vector<Marking> expected = {Marking({0, 1, 0, 1, 0}),
                                   Marking({0, 1, 0, 0, 1})};
  if (dead.size() != 2 ||
      std::find(dead.begin(), dead.end(), expected[0]) == dead.end() ||
      std::find(dead.begin(), dead.end(), expected[1]) == dead.end()) {
    detail = "deadlock set mismatch";
    return false;
  }
  detail = "4 nodes, 3 edges, deadlocks {M2, M3}";
  return true;
}

// 3. Quine-McCluskey.
bool quine_mccluskey(std::string& detail) {
  std::vector<std::uint32_t> on;
  for (std::uint32_t m = 0; m < 16; ++m) {
    int votes = 2 * ((m >> 3) & 1) + ((m >> 2) & 1) + ((m >> 1) & 1) + (m & 1);
    if (votes >= 3) on.push_back(m);
  }
  std::vector<std::string> names = {"A", "B", "C", "D"};
  std::string formula = implicants_to_string(qm_minimize(4, on), names);
  if (formula != "A&B | A&C | A&D | B&C&D") {
    detail = "got " + formula;
    return false;
  }
  RandomSource rng(2026);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::uint32_t> set;
    for (std::uint32_t m = 0; m < 16; ++m) {
      if (rng.next_u64() % 2) set.push_back(m);
    }
    auto implicants = qm_minimize(4, set);
    for (std::uint32_t m = 0; m < 16; ++m) {
      bool in_set = std::find(set.begin(), set.end(), m) != set.end();
      bool covered = std::any_of(
          implicants.begin(), implicants.end(),
          [&](const Implicant& imp) { return imp.covers(m); });
      if (in_set != covered) {
        detail = "iteration " + std::to_string(iter) + " not equivalent";
        return false;
      }
    }
  }
  detail = "surgery formula exact; 200 random functions equivalent";
  return true;
}

// 4. Trumping.
bool trumping(std::string& detail) {
  NetDef net = build_scenario("trumping").net;
  std::size_t merlin = *net.transition_index("merlin");
  int merlin_fired = 0;
  const int runs = 1000;
  for (int i = 0; i < runs; ++i) {
    SimTrace trace = run(net, RunConfig{10, 50, std::uint64_t(i),
                                        GatePolicy::centroid});
    for (const auto& ev : trace.events) {
      if (ev.transition == merlin) {
        ++merlin_fired;
        break;
      }
    }
  }
  detail = "merlin fired in " + std::to_string(merlin_fired) + "/1000 traces";
  return merlin_fired == runs;
}

// 5. Race statistics.
bool race_statistics(std::string& detail) {
  NetDef net;
  net.name = "race";
  net.places = {"token", "a", "b"};
  net.initial_tokens = {1, 0, 0};
  net.transitions = {
      {"fast", {{0, 1}}, {{1, 1}}, TimingSpec::exponential(2.0)},
      {"slow", {{0, 1}}, {{2, 1}}, TimingSpec::exponential(1.0)},
  };
  const int runs = 100000;
  int fast_wins = 0;
  for (int i = 0; i < runs; ++i) {
    SimTrace trace = run(net, RunConfig{1e12, 5, std::uint64_t(i),
                                        GatePolicy::centroid});
    if (trace.events.size() != 1) {
      detail = "race run did not produce exactly one firing";
      return false;
    }
    if (trace.events[0].transition == 0) ++fast_wins;
  }
  double expected = 2.0 / 3.0;
  double sigma = std::sqrt(expected * (1 - expected) / runs);
  double fraction = double(fast_wins) / runs;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "win fraction %.5f vs %.5f (3 sigma %.5f)",
                fraction, expected, 3 * sigma);
  detail = buf;
  return std::abs(fraction - expected) <= 3 * sigma;
}

// 6. Fuzzy gate calibration.
bool gate_calibration(std::string& detail) {
  auto label = FuzzyLabel::triangular("highly_probable", 0.6, 0.8, 1.0);
  RandomSource rng(9);
  const int trials = 10000;
  int passes = 0;
  for (int i = 0; i < trials; ++i) {
    if (resolve_fuzzy_gate(label, rng, GatePolicy::centroid)) ++passes;
  }
  double rate = double(passes) / trials;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "pass rate %.4f (want 0.8 +- 0.03)", rate);
  detail = buf;
  return std::abs(rate - 0.8) <= 0.03;
}

// 7. Fuzzy algebra axioms.
bool fuzzy_algebra(std::string& detail) {
  const TNormKind kinds[] = {TNormKind::godel, TNormKind::product,
                             TNormKind::lukasiewicz};
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05);
  const double tol = 1e-12;
  for (TNormKind kind : kinds) {
    for (double a : grid) {
      if (std::abs(tnorm(kind, a, 1.0) - a) > tol) {
        detail = "t-norm identity failed";
        return false;
      }
      if (std::abs(tconorm(kind, a, 0.0) - a) > tol) {
        detail = "t-conorm identity failed";
        return false;
      }
      for (double b : grid) {
        if (std::abs(tnorm(kind, a, b) - tnorm(kind, b, a)) > tol) {
          detail = "commutativity failed";
          return false;
        }
        if (std::abs(tconorm(kind, a, b) -
                     (1.0 - tnorm(kind, 1.0 - a, 1.0 - b))) > tol) {
          detail = "De Morgan duality failed";
          return false;
        }
        if (tnorm(TNormKind::lukasiewicz, a, b) >
                tnorm(TNormKind::product, a, b) + tol ||
            tnorm(TNormKind::product, a, b) >
                tnorm(TNormKind::godel, a, b) + tol) {
          detail = "pointwise ordering failed";
          return false;
        }
        for (double c : grid) {
          if (std::abs(tnorm(kind, a, tnorm(kind, b, c)) -
                       tnorm(kind, tnorm(kind, a, b), c)) > tol) {
            detail = "associativity failed";
            return false;
          }
          if (b <= c && tnorm(kind, a, b) > tnorm(kind, a, c) + tol) {
            detail = "monotonicity failed";
            return false;
          }
        }
      }
    }
  }
  detail = "all axioms hold on the 0.05 grid for all three families";
  return true;
}

// 8. Chain product and adverb fusion.
bool chain_product(std::string& detail) {
  ChainGraph g("g");
  g.add_edge("a", "b", {"w1", 0.9, 0.1});
  g.add_edge("b", "c", {"w2", 0.8, 0.1});
  g.add_edge("c", "d", {"w3", 0.5, 0.1});
  std::vector<std::string> path = {"a", "b", "c", "d"};
  double product = chain_probability(g, path, ChainMode::fused);
  double oracle = 0.9 * 0.8 * 0.5;
  if (std::abs(product - oracle) > 1e-12) {
    detail = "chain product off: " + std::to_string(product);
    return false;
  }
  AdverbDistribution fused = fuse_adverbs(
      std::vector<AdverbDistribution>{{"hi", 0.8, 0.1}, {"mid", 0.6, 0.1}});
  if (std::abs(fused.mean - 0.7) > 1e-12 ||
      std::abs(fused.stddev * fused.stddev - 0.005) > 1e-12) {
    detail = "fusion off: mean " + std::to_string(fused.mean) + ", var " +
             std::to_string(fused.stddev * fused.stddev);
    return false;
  }
  detail = "path product 0.36 exact; fusion mean 0.7 variance 0.005 exact";
  return true;
}

// 9. Feedback properties.
bool feedback_properties(std::string& detail) {
  FuzzyCognitiveMap positive;
  positive.concepts = {{"x", 0.2}, {"y", 0.2}};
  positive.edges = {{0, 1, 0.5, 0}, {1, 0, 0.5, 0}};
  std::vector<std::vector<double>> history = {{0.2, 0.2}};
  std::vector<double> state = {0.2, 0.2};
  for (int k = 0; k < 40; ++k) {
    auto influence = fcm_influence(positive, history);
    for (double inc : influence) {
      if (!(inc > 0)) {
        detail = "pre-clamp increment not positive at step " +
                 std::to_string(k);
        return false;
      }
    }
    auto next = fcm_step(positive, history);
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (state[i] < 1.0 && !(next[i] > state[i])) {
        detail = "activation not strictly increasing before the clamp";
        return false;
      }
    }
    state = next;
    history = {next};
  }
  if (state != std::vector<double>{1.0, 1.0}) {
    detail = "positive loop did not saturate";
    return false;
  }

  FuzzyCognitiveMap mixed;
  mixed.concepts = {{"x", 0.05}, {"y", 0.05}};
  mixed.edges = {{0, 1, 0.5, 0}, {1, 0, -0.5, 0}};
  FcmRun run_result = fcm_run(mixed, {0.05, 0.05}, 200);
  for (const auto& s : run_result.trajectory) {
    for (double v : s) {
      if (v < -1.0 || v > 1.0) {
        detail = "mixed loop escaped [-1,1]";
        return false;
      }
    }
  }
  double mean0 = 0, mean1 = 0;
  for (std::size_t k = 100; k <= 200; ++k) {
    mean0 += run_result.trajectory[k][0];
    mean1 += run_result.trajectory[k][1];
  }
  mean0 /= 101;
  mean1 /= 101;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "saturation reached; long-run means %.4f, %.4f vs initial "
                "0.05",
                mean0, mean1);
  detail = buf;
  return std::abs(mean0 - 0.05) <= 0.1 && std::abs(mean1 - 0.05) <= 0.1;
}

// 10. Delayed negative feedback.
bool delayed_feedback(std::string& detail) {
  NetDef net = build_scenario("sales_orders_delay").net;
  std::size_t sales = *net.place_index("sales");
  std::size_t restock = *net.transition_index("restock");

  SimTrace base = run(net, RunConfig{12, 60, 1, GatePolicy::centroid});
  double empty_at = -1, restock_at = -1;
  for (const auto& ev : base.events) {
    if (empty_at < 0 && ev.post[sales] == 0) empty_at = ev.time;
    if (restock_at < 0 && ev.transition == restock) restock_at = ev.time;
  }
  if (empty_at < 0 || restock_at < 0 || !(empty_at < restock_at)) {
    detail = "expected empty-before-restock ordering";
    return false;
  }

  NetDef zero = net;
  zero.transitions[restock].timing = TimingSpec::immediate();
  SimTrace variant = run(zero, RunConfig{12, 60, 1, GatePolicy::centroid});
  for (const auto& ev : variant.events) {
    if (ev.post[sales] == 0) {
      detail = "zero-delay variant emptied the sales place";
      return false;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "empty at t=%g, first restock at t=%g; never empty at delay 0",
                empty_at, restock_at);
  detail = buf;
  return true;
}

// 11. Determinism through the command line.
bool determinism(std::string& detail) {
  fs::path dir = fs::temp_directory_path() / "causanet_acceptance";
  fs::create_directories(dir);
  fs::path t1 = dir / "d1.trace";
  fs::path t2 = dir / "d2.trace";
  std::string fixture = (g_scenarios / "trumping.causanet").string();
  std::string common = "simulate " + fixture +
                       " --horizon 10 --seed 7 --policy centroid --trace-out ";
  if (run_cli(common + t1.string()) != 0 ||
      run_cli(common + t2.string()) != 0) {
    detail = "simulate invocation failed";
    return false;
  }
  std::string a = slurp(t1);
  std::string b = slurp(t2);
  if (a.empty() || a != b) {
    detail = "trace files differ or are empty";
    return false;
  }
  detail = "two invocations produced byte-identical traces (" +
           std::to_string(a.size()) + " bytes)";
  return true;
}

// 12. Round trip plus the scenario gate.
bool round_trip(std::string& detail) {
  std::size_t files = 0;
  std::vector<fs::path> fixtures;
  for (const auto& entry : fs::directory_iterator(g_scenarios)) {
    if (entry.path().extension() == ".causanet") {
      fixtures.push_back(entry.path());
    }
  }
  std::sort(fixtures.begin(), fixtures.end());
  for (const auto& path : fixtures) {
    ParseResult first = parse_document(slurp(path));
    if (!first.ok()) {
      detail = path.filename().string() + " failed to parse";
      return false;
    }
    ParseResult second = parse_document(serialize_document(first.document));
    if (!second.ok() || !(first.document == second.document)) {
      detail = path.filename().string() + " did not round-trip";
      return false;
    }
    ++files;
  }
  if (files < 9) {
    detail = "only " + std::to_string(files) + " fixtures found";
    return false;
  }
  int code = run_cli("puzzle --all");
  if (code != 0) {
    detail = "puzzle --all exited " + std::to_string(code);
    return false;
  }
  detail = std::to_string(files) +
           " fixtures round-tripped; puzzle --all exited 0";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <scenarios-dir> <cli-binary>\n";
    return 2;
  }
  g_scenarios = argv[1];
  g_cli = argv[2];

  criterion(1, "paper marking traces", 1.0, paper_marking_traces);
  criterion(2, "reachability oracle", 1.0, reachability_oracle);
  criterion(3, "Quine-McCluskey surgery + random equivalence", 10.0,
            quine_mccluskey);
  criterion(4, "trumping decided by delays in 1000/1000 runs", 5.0, trumping);
  criterion(5, "exponential race statistics", 30.0, race_statistics);
  criterion(6, "fuzzy gate calibration", 5.0, gate_calibration);
  criterion(7, "t-norm/t-conorm axiom suite", 5.0, fuzzy_algebra);
  criterion(8, "chain product and adverb fusion", 1.0, chain_product);
  criterion(9, "feedback loop properties", 1.0, feedback_properties);
  criterion(10, "delayed negative feedback ordering", 1.0, delayed_feedback);
  criterion(11, "byte-identical traces through the CLI", 5.0, determinism);
  criterion(12, "round trip and puzzle gate", 5.0, round_trip);

  if (g_failures > 0) {
    std::cout << g_failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
