#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sota/solver.hpp"
#include "sota/technique.hpp"

namespace sota {

inline constexpr int kErrorSamples = 101;

// Budgets worth looking at for one source: from the first with arrival
// probability above 0.001 to the first with (numerically) certain arrival.
struct BudgetWindow {
  int lo = 0;
  int hi = 0;
  bool degenerate() const noexcept { return lo == hi; }
};

// hi falls back to the policy budget when certain arrival is never reached;
// when no budget clears 0.001 the window collapses onto the policy budget.
BudgetWindow budget_window(const Policy& full, NodeId s);

// Budget of sample i out of `samples` evenly spread over the window.
int window_sample(const BudgetWindow& window, int i, int samples = kErrorSamples);

// prob_full - prob_pruned at the sampled budgets, clamped at zero when it is
// negative by less than 1e-9. A degenerate window yields one sample.
// Throws std::logic_error when the pruned policy beats the full one by more.
std::vector<double> error_curve(const Policy& full, const Policy& pruned, NodeId s, const BudgetWindow& window,
                                int samples = kErrorSamples);

struct Query {
  std::uint32_t id = 0;
  NodeId s = kNoNode;
  NodeId t = kNoNode;
  // Dijkstra rank of t from s; 0 when the pair was drawn uniformly.
  std::uint32_t rank = 0;
};

// Uniform pairs s != t; disconnected pairs are redrawn.
std::vector<Query> sample_queries(const StochasticGraph& graph, int count, std::uint64_t seed);

// For every rank, `per_rank` uniform sources with the rank-th settled node
// (free-flow weights) as target. Sources that settle fewer nodes are redrawn.
std::vector<Query> rank_queries(const StochasticGraph& graph, std::span<const std::uint32_t> ranks, int per_rank,
                                std::uint64_t seed);

struct BenchConfig {
  std::vector<Technique> techniques{Technique{}};
  TechniqueParams params;
  double budget_factor = 3.0;
  SolveOptions solve;
  int threads = 1;
};

struct BenchRecord {
  std::uint32_t query = 0;
  NodeId s = kNoNode;
  NodeId t = kNoNode;
  std::uint32_t rank = 0;
  int budget = 0;
  Technique technique;
  double nodes_pct = 0.0;
  std::uint64_t convolutions = 0;
  std::uint64_t order_len = 0;
  std::uint64_t classic_convolutions = 0;
  std::uint64_t classic_order_len = 0;
  std::uint64_t optimal_order_len = 0;
  double optimal_nodes_pct = 0.0;
  double optimal_error = 0.0;
  BudgetWindow window;
  std::vector<double> errors;
  double max_error = 0.0;
  double mean_error = 0.0;
  // Budget / free-flow distance for 25, 50, 75 and 100 % arrival under the
  // technique's policy; empty when the budget does not get there.
  std::array<std::optional<double>, 4> budget_factors;
};

// One record per (query, technique), ordered by query then technique.
std::vector<BenchRecord> run_queries(const StochasticGraph& graph, std::span<const Query> queries,
                                     const BenchConfig& config);

std::vector<BenchRecord> run_benchmark(const StochasticGraph& graph, int queries, std::uint64_t seed,
                                       const BenchConfig& config);

// Plain means over the records of one technique.
struct TechniqueSummary {
  Technique technique;
  std::size_t queries = 0;
  double nodes_pct = 0.0;
  double order_ratio_classic_optimal = 0.0;
  double order_ratio_pruned_classic = 0.0;
  double conv_ratio_pruned_classic = 0.0;
  double max_error = 0.0;
  double mean_error = 0.0;
  std::vector<double> curve;  // kErrorSamples entries
};

std::vector<TechniqueSummary> summarize(std::span<const BenchRecord> records);

void write_records_csv(std::ostream& out, std::span<const BenchRecord> records);
void write_summary_csv(std::ostream& out, std::span<const TechniqueSummary> summary);

// arc,from,to,min,mean,max,variance
void variance_export(std::ostream& out, const StochasticGraph& graph);

}  // namespace sota
