// Acceptance gate: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line each. Usage: acceptance [path/to/sotactl]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "sota/bench.hpp"
#include "sota/datagen.hpp"
#include "sota/dijkstra.hpp"
#include "sota/simulate.hpp"
#include "support.hpp"

using namespace sota;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

StochasticGraph stressed_grid(int w, int h, Weight ff_min, Weight ff_max, const GenSettings& settings,
                              std::uint64_t seed) {
  const auto grid = make_grid(w, h, ff_min, ff_max, seed);
  const auto gammas = generate(grid.graph, grid.freeflow, settings);
  return make_stochastic_graph(grid.graph, std::vector<ArcDistSpec>(gammas.begin(), gammas.end()));
}

GenSettings light_paths(int rounds, int paths, std::uint64_t seed) {
  GenSettings s;
  s.setting = GenSetting::RandomPaths;
  s.rounds = rounds;
  s.paths = paths;
  s.seed = seed;
  return s;
}

// 1. label-setting vs successive approximation
Outcome oracle_equivalence() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  std::size_t next_mismatch = 0;
  bool converged = true;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + rng() % 9;
    const std::size_t m = 1 + rng() % 25;
    const auto sg = test::random_stochastic_graph(n, m, 6, 8, rng);
    const auto t = static_cast<NodeId>(rng() % n);
    const int budget = 1 + static_cast<int>(rng() % 60);
    const auto ls = solve_label_setting(sg, t, budget);
    const auto sa = solve_successive_approx(sg, t, budget);
    converged = converged && sa.converged;
    for (NodeId u = 0; u < n; ++u) {
      for (int tau = 0; tau <= budget; ++tau) {
        worst = std::max(worst, std::abs(ls.policy.prob(u, tau) - sa.policy.prob(u, tau)));
        if (ls.policy.next(u, tau) != sa.policy.next(u, tau)) ++next_mismatch;
      }
    }
  }
  return {converged && worst <= 1e-9 && next_mismatch == 0,
          "max |dprob| " + fmt("%.3g", worst) + ", next mismatches " + std::to_string(next_mismatch)};
}

// 2. pruned policies never beat the full one; corridors improve with k
Outcome dominance_suite() {
  const auto sg = stressed_grid(20, 20, 10, 30, light_paths(10, 800, 2002), 2002);
  const auto queries = sample_queries(sg, 100, 2003);
  const std::vector<std::string> names{"corridor:1", "corridor:2", "corridor:5", "penalty", "via", "via-mix"};
  TechniqueParams params;
  double worst = -1.0;
  double worst_nesting = -1.0;
  for (const auto& q : queries) {
    const Weight d = freeflow_distance(sg, q.s, q.t);
    const int budget = static_cast<int>(std::ceil(3.0 * static_cast<double>(d)));
    const auto full = solve_label_setting(sg, q.t, budget);
    const auto window = budget_window(full.policy, q.s);
    std::vector<std::vector<double>> err;
    for (const auto& name : names) {
      const auto set = build_prune_set(sg, q.s, q.t, parse_technique(name), params);
      const auto pruned = solve_label_setting(sg, q.t, budget, &set);
      std::vector<double> e;
      for (int i = 0; i < kErrorSamples; ++i) {
        const int tau = window_sample(window, i);
        const double delta = full.policy.prob(q.s, tau) - pruned.policy.prob(q.s, tau);
        worst = std::max(worst, -delta);
        e.push_back(delta);
      }
      err.push_back(std::move(e));
    }
    for (int i = 0; i < kErrorSamples; ++i) {
      worst_nesting = std::max(worst_nesting, err[1][static_cast<std::size_t>(i)] - err[0][static_cast<std::size_t>(i)]);
      worst_nesting = std::max(worst_nesting, err[2][static_cast<std::size_t>(i)] - err[1][static_cast<std::size_t>(i)]);
    }
  }
  return {worst <= 1e-9 && worst_nesting <= 1e-9,
          "max excess over full " + fmt("%.3g", std::max(0.0, worst)) + ", max corridor increase in k " +
              fmt("%.3g", std::max(0.0, worst_nesting))};
}

// 3. Monte Carlo agreement
Outcome monte_carlo() {
  double worst = 0.0;
  std::mt19937_64 rng(3003);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 6 + rng() % 5;
    const auto sg = test::random_stochastic_graph(n, 3 * n, 5, 10, rng);
    const NodeId s = 0;
    const auto t = static_cast<NodeId>(n - 1);
    Weight d = freeflow_distance(sg, s, t);
    if (d == kInfinity) d = 10;
    const int budget = static_cast<int>(std::ceil(1.5 * static_cast<double>(d)));
    const auto r = solve_label_setting(sg, t, budget);
    const auto sim = simulate_policy(sg, r.policy, s, budget, 100'000, 3100 + static_cast<std::uint64_t>(i));
    worst = std::max(worst, std::abs(sim.rate - r.policy.prob(s, budget)));
  }
  const StochasticGraph arc(test::make_graph(2, {{0, 1}}), {test::uniform_pdf(1, 5)});
  const auto r = solve_label_setting(arc, 1, 3);
  const auto sim = simulate_policy(arc, r.policy, 0, 3, 100'000, 3200);
  const double uniform_gap = std::abs(sim.rate - 0.6);
  return {worst <= 0.01 && uniform_gap <= 0.01,
          "max |rate - prob| " + fmt("%.4f", worst) + ", uniform{1,5} T=3 rate " + fmt("%.4f", sim.rate)};
}

// 4. large reduction at small error on a 50x50 grid
Outcome pruning_payoff() {
  GenSettings settings = preset("graph5");
  settings.seed = 4004;
  const auto sg = stressed_grid(50, 50, 20, 60, settings, 4004);
  BenchConfig config;
  config.techniques = {parse_technique("corridor:2"), parse_technique("penalty")};
  const auto records = run_benchmark(sg, 20, 4005, config);
  const auto summary = summarize(records);
  bool pass = true;
  std::string detail;
  for (const auto& s : summary) {
    double worst_tail = 0.0;
    for (int i = 25; i < kErrorSamples; ++i) worst_tail = std::max(worst_tail, s.curve[static_cast<std::size_t>(i)]);
    pass = pass && s.order_ratio_pruned_classic <= 0.80 && worst_tail <= 0.05;
    detail += s.technique.name() + ": order " + fmt("%.1f%%", 100.0 * s.order_ratio_pruned_classic) +
              " of classic, max mean error (tau >= 25%) " + fmt("%.4f", worst_tail) + "; ";
  }
  return {pass, detail};
}

// 5. point masses
Outcome deterministic_degeneracy() {
  const auto grid = make_grid(12, 12, 1, 9, 5005);
  std::vector<ArcDistSpec> specs;
  for (Weight f : grid.freeflow) specs.emplace_back(PointSpec{static_cast<int>(f)});
  const auto sg = make_stochastic_graph(grid.graph, specs);
  const auto queries = sample_queries(sg, 30, 5006);

  bool steps = true;
  for (const auto& q : queries) {
    const Weight d = freeflow_distance(sg, q.s, q.t);
    const int budget = static_cast<int>(3 * d);
    const auto r = solve_label_setting(sg, q.t, budget);
    for (int tau = 0; tau <= budget; ++tau) steps = steps && r.policy.prob(q.s, tau) == (tau >= d ? 1.0 : 0.0);
  }

  BenchConfig config;
  for (const char* name : {"full", "optimal", "corridor:0", "corridor:1", "corridor:2", "penalty", "via", "via-mix"}) {
    config.techniques.push_back(parse_technique(name));
  }
  config.params.view = WeightView::FreeFlow;
  const auto records = run_queries(sg, queries, config);
  bool factors = true;
  bool zero = true;
  for (const auto& r : records) {
    for (const auto& bf : r.budget_factors) factors = factors && bf.has_value() && *bf == 1.0;
    for (double e : r.errors) zero = zero && e == 0.0;
  }
  return {steps && factors && zero, std::string("unit steps ") + (steps ? "yes" : "no") + ", budget factors 1.00 " +
                                        (factors ? "yes" : "no") + ", zero error curves " + (zero ? "yes" : "no")};
}

// 6. FFT vs direct, convolution invariants
Outcome convolution_kernels() {
  std::mt19937_64 rng(6006);
  double worst_fft = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = test::random_pdf(rng, 50, 4096);
    const auto b = test::random_pdf(rng, 50, 4096);
    const auto direct = convolve(a, b);
    const auto fft = convolve_fft(a, b);
    for (int t = std::min(direct.min(), fft.min()); t <= std::max(direct.max(), fft.max()); ++t) {
      worst_fft = std::max(worst_fft, std::abs(direct.at(t) - fft.at(t)));
    }
  }
  double worst_mass = 0.0;
  bool offsets = true;
  for (int i = 0; i < 1000; ++i) {
    const auto a = test::random_pdf(rng, 30, 200);
    const auto b = test::random_pdf(rng, 30, 200);
    const auto c = convolve(a, b);
    worst_mass = std::max(worst_mass, std::abs(c.total() - a.total() * b.total()));
    offsets = offsets && c.offset() == a.offset() + b.offset() && c.max() == a.max() + b.max();
  }
  return {worst_fft <= 1e-10 && worst_mass <= 1e-12 && offsets,
          "max |fft - direct| " + fmt("%.3g", worst_fft) + ", max mass defect " + fmt("%.3g", worst_mass) +
              ", offsets " + (offsets ? "additive" : "BROKEN")};
}

// 7. identical seeds, identical CSV, through the command line tool
Outcome reproducibility(const std::string& cli) {
  if (cli.empty()) return {false, "sotactl path not given"};
  const fs::path dir = fs::temp_directory_path() / ("sota_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string g = (dir / "g.txt").string(), ff = (dir / "ff.txt").string(), d = (dir / "d.txt").string();
  auto run = [&](const std::string& args) { return std::system((cli + " " + args + " 2>/dev/null").c_str()) == 0; };
  bool ok = run("gen-grid --width 15 --height 15 --seed 7 --graph-out " + g + " --dists-out " + ff) &&
            run("gen-dist --graph " + g + " --freeflow " + ff + " --preset graph4 --set paths=300 --seed 8 --out " + d);
  const std::string bench = "bench --graph " + g + " --dists " + d + " --queries 10 --seed 9 --summary ";
  ok = ok && run(bench + (dir / "s1.csv").string() + " --out " + (dir / "b1.csv").string()) &&
       run(bench + (dir / "s2.csv").string() + " --out " + (dir / "b2.csv").string());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string b1 = ok ? slurp(dir / "b1.csv") : "";
  const bool same = ok && !b1.empty() && b1 == slurp(dir / "b2.csv") && slurp(dir / "s1.csv") == slurp(dir / "s2.csv");
  const auto bytes = b1.size();
  fs::remove_all(dir);
  if (!ok) return {false, "sotactl run failed"};
  return {same, std::to_string(bytes) + " bytes per run, " + (same ? "identical" : "DIFFERENT")};
}

// 8. the extracted order is sufficient and cheaper
Outcome optimal_order() {
  const auto sg = stressed_grid(15, 15, 5, 15, light_paths(10, 500, 8008), 8008);
  const auto queries = sample_queries(sg, 100, 8009);
  double worst = 0.0;
  int strict = 0;
  int not_cheaper = 0;
  for (const auto& q : queries) {
    const Weight d = freeflow_distance(sg, q.s, q.t);
    const int budget = static_cast<int>(std::ceil(3.0 * static_cast<double>(d)));
    const auto full = solve_label_setting(sg, q.t, budget);
    const auto order = extract_optimal_order(sg, full.policy, q.s);
    const auto rerun = rerun_on_order(sg, q.t, budget, order);
    for (int tau = 0; tau <= budget; ++tau) {
      worst = std::max(worst, std::abs(rerun.policy.prob(q.s, tau) - full.policy.prob(q.s, tau)));
    }
    PruneSet used = order;
    used.insert(q.t);
    if (used.size() < full.stats.touched_nodes) {
      ++strict;
      if (!(rerun.stats.order_len < full.stats.order_len)) ++not_cheaper;
    }
  }
  return {worst <= 1e-9 && not_cheaper == 0,
          "max |dprob| " + fmt("%.3g", worst) + ", strict subsets " + std::to_string(strict) + "/100, not cheaper " +
              std::to_string(not_cheaper)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", 30, oracle_equivalence},
      {2, "dominance suite", 120, dominance_suite},
      {3, "Monte Carlo validation", 60, monte_carlo},
      {4, "pruning payoff", 600, pruning_payoff},
      {5, "deterministic degeneracy", 0, deterministic_degeneracy},
      {6, "convolution kernels", 0, convolution_kernels},
      {7, "reproducibility", 0, [&] { return reproducibility(cli); }},
      {8, "optimal-order sufficiency", 0, optimal_order},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds <= 0 || secs < c.limit_seconds;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %d (%s): %s  [%.1f s%s] %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                in_time ? "" : ", over time limit", out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
