// sotactl: generation, solving, pruning and benchmarking front end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sota/bench.hpp"
#include "sota/datagen.hpp"
#include "sota/dist_io.hpp"
#include "sota/graph_io.hpp"
#include "sota/simulate.hpp"
#include "sota/solver.hpp"
#include "sota/technique.hpp"

namespace fs = std::filesystem;
using namespace sota;

namespace {

struct InputOpts {
  std::string graph;
  std::string dists;
  double dt = 0.0;
  double tail_eps = kDefaultTailEps;

  void add(CLI::App* app) {
    app->add_option("--graph", graph, "graph file")->required()->check(CLI::ExistingFile);
    app->add_option("--dists", dists, "arc distribution file")->required()->check(CLI::ExistingFile);
    app->add_option("--dt", dt, "seconds per time step (0 = automatic)")->check(CLI::NonNegativeNumber);
    app->add_option("--tail-eps", tail_eps, "mass cut from each distribution tail")
        ->check(CLI::Range(0.0, 0.5));
  }

  StochasticGraph load() const { return load_stochastic_graph(graph, dists, dt, tail_eps); }
};

struct TechniqueOpts {
  std::string view = "mean";
  TechniqueParams params;

  void add(CLI::App* app) {
    app->add_option("--view", view, "arc weight view for pruning: freeflow|mean|max");
    app->add_option("--via-eps", params.via.stretch_eps, "via: allowed stretch")->check(CLI::NonNegativeNumber);
    app->add_option("--via-gamma", params.via.sharing_gamma, "via: max shared fraction with the shortest path")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--penalty-rounds", params.penalty.rounds, "penalty: rounds")->check(CLI::NonNegativeNumber);
    app->add_option("--penalty-factor", params.penalty.penalty_factor, "penalty: path arc factor")
        ->check(CLI::Range(1.0, 1e6));
    app->add_option("--adjoint-factor", params.penalty.adjoint_factor, "penalty: adjoint arc factor")
        ->check(CLI::Range(1.0, 1e6));
    app->add_flag("!--no-adjoint", params.penalty.adjoint, "penalty: leave adjoint arcs alone");
    app->add_option("--stop-stretch", params.penalty.stop_stretch, "penalty: stop once the path is this much longer")
        ->check(CLI::NonNegativeNumber);
  }

  TechniqueParams resolve() const {
    TechniqueParams p = params;
    p.view = parse_weight_view(view);
    return p;
  }
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

std::vector<Technique> parse_techniques(const std::vector<std::string>& names) {
  std::vector<Technique> out;
  for (const auto& n : names) out.push_back(parse_technique(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic on-time arrival routing toolkit"};
  app.require_subcommand(1);

  // gen-grid
  auto* gen_grid = app.add_subcommand("gen-grid", "bidirected grid with point-mass free-flow times");
  int width = 10, height = 10;
  Weight ff_min = 10, ff_max = 30;
  std::uint64_t seed = 1;
  std::string out_path, graph_out, dists_out;
  gen_grid->add_option("--width", width)->check(CLI::PositiveNumber);
  gen_grid->add_option("--height", height)->check(CLI::PositiveNumber);
  gen_grid->add_option("--ff-min", ff_min, "minimum free-flow steps")->check(CLI::PositiveNumber);
  gen_grid->add_option("--ff-max", ff_max, "maximum free-flow steps")->check(CLI::PositiveNumber);
  gen_grid->add_option("--seed", seed);
  gen_grid->add_option("--graph-out", graph_out)->required();
  gen_grid->add_option("--dists-out", dists_out, "free-flow times as point masses")->required();

  // gen-dist
  auto* gen_dist = app.add_subcommand("gen-dist", "stress-test gamma distributions on a free-flow network");
  std::string gd_graph, gd_freeflow, gd_preset, gd_config;
  std::vector<std::string> gd_sets;
  std::optional<double> smooth_q;
  std::optional<std::uint64_t> gd_seed;
  gen_dist->add_option("--graph", gd_graph)->required()->check(CLI::ExistingFile);
  gen_dist->add_option("--freeflow", gd_freeflow, "distribution file whose minima are the free-flow times")
      ->required()
      ->check(CLI::ExistingFile);
  gen_dist->add_option("--preset", gd_preset, "graph1..graph5");
  gen_dist->add_option("--config", gd_config, "key=value settings file")->check(CLI::ExistingFile);
  gen_dist->add_option("--set", gd_sets, "key=value override (repeatable)");
  gen_dist->add_option("--seed", gd_seed);
  gen_dist->add_option("--smooth-quantile", smooth_q, "cap arc variances at this network quantile");
  gen_dist->add_option("--out", out_path);

  // solve
  auto* solve = app.add_subcommand("solve", "optimal policy towards one target");
  InputOpts solve_in;
  solve_in.add(solve);
  TechniqueOpts solve_tech;
  solve_tech.add(solve);
  NodeId source = kNoNode, target = kNoNode;
  int budget = 0;
  std::string technique_name = "full";
  bool fft = false;
  solve->add_option("--source", source, "needed by pruning techniques");
  solve->add_option("--target", target)->required();
  solve->add_option("--budget", budget)->required()->check(CLI::PositiveNumber);
  solve->add_option("--technique", technique_name);
  solve->add_flag("--fft", fft, "FFT convolution kernel");
  solve->add_option("--out", out_path, "policy dump");

  // prune
  auto* prune = app.add_subcommand("prune", "node set a pruning technique keeps");
  InputOpts prune_in;
  prune_in.add(prune);
  TechniqueOpts prune_tech;
  prune_tech.add(prune);
  prune->add_option("--source", source)->required();
  prune->add_option("--target", target)->required();
  prune->add_option("--technique", technique_name)->required();
  prune->add_option("--out", out_path);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of a full-graph policy");
  InputOpts sim_in;
  sim_in.add(simulate);
  std::uint64_t samples = 100'000;
  simulate->add_option("--source", source)->required();
  simulate->add_option("--target", target)->required();
  simulate->add_option("--budget", budget)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--samples", samples)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed);
  simulate->add_flag("--fft", fft);

  // bench / rank-sweep share most options
  std::vector<std::string> techniques{"full", "corridor:1", "corridor:2", "penalty", "via", "via-mix"};
  int queries = 100;
  double budget_factor = 3.0;
  int threads = 1;
  std::string summary_path;
  std::vector<std::uint32_t> ranks;

  auto* bench = app.add_subcommand("bench", "random-query benchmark, one CSV row per query and technique");
  InputOpts bench_in;
  bench_in.add(bench);
  TechniqueOpts bench_tech;
  bench_tech.add(bench);
  auto add_bench_opts = [&](CLI::App* sub) {
    sub->add_option("--technique", techniques, "techniques to compare (repeatable)");
    sub->add_option("--budget-factor", budget_factor, "budget = ceil(factor * free-flow distance)")
        ->check(CLI::Range(1.0, 1e6));
    sub->add_option("--seed", seed);
    sub->add_option("--threads", threads)->check(CLI::PositiveNumber);
    sub->add_flag("--fft", fft);
    sub->add_option("--out", out_path, "per-query CSV");
    sub->add_option("--summary", summary_path, "per-technique means CSV");
  };
  add_bench_opts(bench);
  bench->add_option("--queries", queries)->check(CLI::NonNegativeNumber);

  auto* sweep = app.add_subcommand("rank-sweep", "benchmark grouped by Dijkstra rank of the target");
  InputOpts sweep_in;
  sweep_in.add(sweep);
  TechniqueOpts sweep_tech;
  sweep_tech.add(sweep);
  add_bench_opts(sweep);
  sweep->add_option("--ranks", ranks, "Dijkstra ranks")->required();
  sweep->add_option("--queries", queries, "queries per rank")->check(CLI::NonNegativeNumber);

  // variance-export
  auto* var_export = app.add_subcommand("variance-export", "per-arc min, mean, max and variance");
  InputOpts var_in;
  var_in.add(var_export);
  var_export->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_grid->parsed()) {
      if (ff_min > ff_max) throw std::invalid_argument("--ff-min exceeds --ff-max");
      const auto grid = make_grid(width, height, ff_min, ff_max, seed);
      std::vector<ArcDistSpec> specs;
      for (Weight w : grid.freeflow) specs.emplace_back(PointSpec{static_cast<int>(w)});
      write_graph(fs::path(graph_out), grid.graph);
      write_dist_file(fs::path(dists_out), grid.graph, specs);
    } else if (gen_dist->parsed()) {
      const Graph graph = read_graph(fs::path(gd_graph));
      const auto base = read_dist_file(graph, fs::path(gd_freeflow));
      GenSettings settings;
      if (!gd_preset.empty()) settings = preset(gd_preset);
      if (!gd_config.empty()) {
        auto in = open_input(gd_config);
        settings = read_settings(in, settings);
      }
      for (const auto& kv : gd_sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got " + kv);
        apply_setting(settings, kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (gd_seed) settings.seed = *gd_seed;
      const auto freeflow = freeflow_of(base);
      const auto gammas = generate(graph, freeflow, settings);
      std::vector<ArcDistSpec> specs(gammas.begin(), gammas.end());
      if (smooth_q) specs = smooth_variance(specs, *smooth_q);
      Output out(out_path);
      write_dist_file(out.stream(), graph, specs);
    } else if (solve->parsed()) {
      const auto sg = solve_in.load();
      const Technique technique = parse_technique(technique_name);
      std::optional<PruneSet> mask;
      if (technique.kind != Technique::Kind::Full) {
        if (source == kNoNode) throw std::invalid_argument("--technique other than full needs --source");
        mask = build_prune_set(sg, source, target, technique, solve_tech.resolve());
      }
      SolveOptions opts;
      opts.kernel = fft ? ConvolutionKernel::Fft : ConvolutionKernel::Direct;
      const auto result = solve_label_setting(sg, target, budget, mask ? &*mask : nullptr, opts);
      std::cerr << "convolutions " << result.stats.convolutions << " order_len " << result.stats.order_len
                << " touched " << result.stats.touched_nodes << " block " << result.stats.block_size << '\n';
      if (source != kNoNode) std::cerr << "prob(" << source << ", " << budget << ") = "
                                       << result.policy.prob(source, budget) << '\n';
      Output out(out_path);
      write_policy(out.stream(), result.policy);
    } else if (prune->parsed()) {
      const auto sg = prune_in.load();
      const auto set = build_prune_set(sg, source, target, parse_technique(technique_name), prune_tech.resolve());
      Output out(out_path);
      write_prune_set(out.stream(), set);
    } else if (simulate->parsed()) {
      const auto sg = sim_in.load();
      SolveOptions opts;
      opts.kernel = fft ? ConvolutionKernel::Fft : ConvolutionKernel::Direct;
      const auto result = solve_label_setting(sg, target, budget, nullptr, opts);
      const auto sim = simulate_policy(sg, result.policy, source, budget, samples, seed);
      std::cout << "exact " << result.policy.prob(source, budget) << "\nsimulated " << sim.rate << " ("
                << sim.successes << "/" << sim.samples << ", 99% CI [" << sim.ci_low << ", " << sim.ci_high
                << "])\n";
    } else if (bench->parsed() || sweep->parsed()) {
      const bool is_sweep = sweep->parsed();
      const auto sg = (is_sweep ? sweep_in : bench_in).load();
      BenchConfig config;
      config.techniques = parse_techniques(techniques);
      config.params = (is_sweep ? sweep_tech : bench_tech).resolve();
      config.budget_factor = budget_factor;
      config.threads = threads;
      config.solve.kernel = fft ? ConvolutionKernel::Fft : ConvolutionKernel::Direct;
      const auto picked = is_sweep ? rank_queries(sg, ranks, queries, seed) : sample_queries(sg, queries, seed);
      const auto records = run_queries(sg, picked, config);
      {
        Output out(out_path);
        write_records_csv(out.stream(), records);
      }
      if (!summary_path.empty()) {
        Output out(summary_path);
        write_summary_csv(out.stream(), summarize(records));
      }
    } else if (var_export->parsed()) {
      const auto sg = var_in.load();
      Output out(out_path);
      variance_export(out.stream(), sg);
    }
  } catch (const std::exception& e) {
    std::cerr << "sotactl: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
