#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "sota/bench.hpp"
#include "sota/dijkstra.hpp"

namespace sota {

namespace {

constexpr double kRelevantProbability = 0.001;
constexpr double kCertainTolerance = 1e-9;
constexpr double kDominanceTolerance = 1e-9;
constexpr std::array<double, 4> kBudgetLevels{0.25, 0.50, 0.75, 1.00};

std::uint64_t redraw_limit(int count) { return 1000ULL * static_cast<std::uint64_t>(count) + 1000ULL; }

double max_abs_difference(const Policy& a, const Policy& b, NodeId s) {
  double worst = 0.0;
  for (int tau = 0; tau <= a.budget(); ++tau) worst = std::max(worst, std::abs(a.prob(s, tau) - b.prob(s, tau)));
  return worst;
}

std::vector<BenchRecord> run_query(const StochasticGraph& graph, const Query& q, const BenchConfig& config) {
  const std::size_t n = graph.node_count();
  const Weight d = freeflow_distance(graph, q.s, q.t);
  if (d == kInfinity || q.s == q.t) throw std::invalid_argument("benchmark query needs s != t with t reachable");

  int budget = std::max(1, static_cast<int>(std::ceil(config.budget_factor * static_cast<double>(d))));
  SolveResult full = solve_label_setting(graph, q.t, budget, nullptr, config.solve);
  BudgetWindow window = budget_window(full.policy, q.s);
  if (window.hi < budget && window.hi >= 1) {
    budget = window.hi;
    full = solve_label_setting(graph, q.t, budget, nullptr, config.solve);
    window = budget_window(full.policy, q.s);
  }

  PruneSet order = extract_optimal_order(graph, full.policy, q.s);
  SolveResult optimal = rerun_on_order(graph, q.t, budget, order, config.solve);
  order.insert(q.t);
  const double optimal_error = max_abs_difference(full.policy, optimal.policy, q.s);
  const double pct_scale = 100.0 / static_cast<double>(n);

  std::vector<BenchRecord> out;
  out.reserve(config.techniques.size());
  for (const Technique& technique : config.techniques) {
    BenchRecord r;
    r.query = q.id;
    r.s = q.s;
    r.t = q.t;
    r.rank = q.rank;
    r.budget = budget;
    r.technique = technique;
    r.classic_convolutions = full.stats.convolutions;
    r.classic_order_len = full.stats.order_len;
    r.optimal_order_len = optimal.stats.order_len;
    r.optimal_nodes_pct = static_cast<double>(order.size()) * pct_scale;
    r.optimal_error = optimal_error;
    r.window = window;

    std::optional<SolveResult> masked;
    const SolveResult* result = &full;
    if (technique.kind == Technique::Kind::Full) {
      r.nodes_pct = 100.0;
    } else if (technique.kind == Technique::Kind::Optimal) {
      result = &optimal;
      r.nodes_pct = r.optimal_nodes_pct;
    } else {
      const PruneSet set = build_prune_set(graph, q.s, q.t, technique, config.params);
      masked = solve_label_setting(graph, q.t, budget, &set, config.solve);
      result = &*masked;
      r.nodes_pct = static_cast<double>(set.size()) * pct_scale;
    }
    r.convolutions = result->stats.convolutions;
    r.order_len = result->stats.order_len;
    r.errors = error_curve(full.policy, result->policy, q.s, window);
    r.max_error = *std::max_element(r.errors.begin(), r.errors.end());
    double sum = 0.0;
    for (double e : r.errors) sum += e;
    r.mean_error = sum / static_cast<double>(r.errors.size());
    for (std::size_t i = 0; i < kBudgetLevels.size(); ++i) {
      r.budget_factors[i] = budget_for_probability(result->policy, q.s, kBudgetLevels[i], d);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

BudgetWindow budget_window(const Policy& full, NodeId s) {
  const int budget = full.budget();
  std::optional<int> lo;
  std::optional<int> hi;
  for (int tau = 0; tau <= budget; ++tau) {
    const double p = full.prob(s, tau);
    if (!lo && p > kRelevantProbability) lo = tau;
    if (p >= 1.0 - kCertainTolerance) {
      hi = tau;
      break;
    }
  }
  if (!lo) return {budget, budget};
  return {*lo, hi.value_or(budget)};
}

int window_sample(const BudgetWindow& window, int i, int samples) {
  if (samples < 2 || window.degenerate()) return window.lo;
  const long long width = window.hi - window.lo;
  const long long denom = samples - 1;
  return window.lo + static_cast<int>((2 * i * width + denom) / (2 * denom));
}

std::vector<double> error_curve(const Policy& full, const Policy& pruned, NodeId s, const BudgetWindow& window,
                                int samples) {
  if (samples < 1) throw std::invalid_argument("error_curve: samples must be >= 1");
  if (window.lo > window.hi || window.lo < 0) throw std::invalid_argument("error_curve: malformed window");
  const int count = window.degenerate() ? 1 : samples;
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int tau = window_sample(window, i, samples);
    double delta = full.prob(s, tau) - pruned.prob(s, tau);
    if (delta < 0.0) {
      if (delta < -kDominanceTolerance) {
        throw std::logic_error("pruned policy exceeds the full one at budget " + std::to_string(tau));
      }
      delta = 0.0;
    }
    out[static_cast<std::size_t>(i)] = delta;
  }
  return out;
}

std::vector<Query> sample_queries(const StochasticGraph& graph, int count, std::uint64_t seed) {
  const std::size_t n = graph.node_count();
  if (count < 0) throw std::invalid_argument("query count must be >= 0");
  if (count > 0 && n < 2) throw std::invalid_argument("queries need at least two nodes");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> draw(0, n == 0 ? 0 : n - 1);
  std::vector<Query> out;
  std::uint64_t redraws = 0;
  while (out.size() < static_cast<std::size_t>(count)) {
    const auto s = static_cast<NodeId>(draw(rng));
    const auto t = static_cast<NodeId>(draw(rng));
    if (s != t && freeflow_distance(graph, s, t) != kInfinity) {
      out.push_back({static_cast<std::uint32_t>(out.size()), s, t, 0});
      continue;
    }
    if (s != t) ++redraws;
    if (redraws > redraw_limit(count)) throw std::runtime_error("too many disconnected query pairs");
  }
  if (redraws > 0) std::clog << "resampled " << redraws << " disconnected query pairs\n";
  return out;
}

std::vector<Query> rank_queries(const StochasticGraph& graph, std::span<const std::uint32_t> ranks, int per_rank,
                                std::uint64_t seed) {
  const std::size_t n = graph.node_count();
  if (per_rank < 0) throw std::invalid_argument("queries per rank must be >= 0");
  for (auto r : ranks) {
    if (r < 1 || r >= n) throw std::invalid_argument("rank " + std::to_string(r) + " outside [1, n)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> draw(0, n - 1);
  const auto weights = graph.weights(WeightView::FreeFlow);
  std::vector<Query> out;
  for (auto r : ranks) {
    std::uint64_t redraws = 0;
    for (int i = 0; i < per_rank;) {
      const auto s = static_cast<NodeId>(draw(rng));
      const auto tree = dijkstra(graph.graph(), s, weights);
      if (tree.settle_order.size() <= r) {
        if (++redraws > redraw_limit(per_rank)) {
          throw std::runtime_error("too few sources reach rank " + std::to_string(r));
        }
        continue;
      }
      out.push_back({static_cast<std::uint32_t>(out.size()), s, tree.settle_order[r], r});
      ++i;
    }
    if (redraws > 0) std::clog << "rank " << r << ": resampled " << redraws << " sources\n";
  }
  return out;
}

std::vector<BenchRecord> run_queries(const StochasticGraph& graph, std::span<const Query> queries,
                                     const BenchConfig& config) {
  if (!(config.budget_factor >= 1.0)) throw std::invalid_argument("budget factor must be >= 1");
  if (config.techniques.empty()) throw std::invalid_argument("no techniques given");

  std::vector<std::vector<BenchRecord>> per_query(queries.size());
  std::vector<std::exception_ptr> errors(queries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      try {
        per_query[i] = run_query(graph, queries[i], config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const auto threads = static_cast<std::size_t>(std::max(1, config.threads));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < std::min(threads, queries.size()); ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<BenchRecord> out;
  out.reserve(queries.size() * config.techniques.size());
  for (auto& rows : per_query) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchRecord> run_benchmark(const StochasticGraph& graph, int queries, std::uint64_t seed,
                                       const BenchConfig& config) {
  const auto picked = sample_queries(graph, queries, seed);
  return run_queries(graph, picked, config);
}

}  // namespace sota
