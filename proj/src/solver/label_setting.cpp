#include "sota/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "sota/dijkstra.hpp"

namespace sota {

namespace {

struct Successor {
  ArcId arc;
  NodeId head;
};

}  // namespace

SolveResult solve_label_setting(const StochasticGraph& graph, NodeId target, int budget,
                                const PruneSet* mask, SolveOptions options) {
  const Graph& g = graph.graph();
  const std::size_t n = g.node_count();
  if (target >= n) throw std::out_of_range("solve: target out of range");
  if (budget < 1) throw std::invalid_argument("solve: budget must be >= 1");
  if (mask != nullptr) {
    if (mask->node_count() != n) throw std::invalid_argument("solve: mask does not match graph");
    if (mask->empty()) throw std::invalid_argument("solve: empty mask");
    if (!mask->contains(target)) throw std::invalid_argument("solve: mask does not contain the target");
  }
  const auto inside = [&](NodeId v) { return mask == nullptr || mask->contains(v); };

  const auto freeflow = graph.weights(WeightView::FreeFlow);
  DijkstraOptions dijkstra_options;
  if (mask != nullptr) dijkstra_options.mask = &mask->membership();
  const auto to_target = dijkstra(g, target, freeflow, Direction::Backward, dijkstra_options);

  int block = 0;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (inside(g.from(a)) && inside(g.to(a))) {
      const int offset = graph.pdf(a).offset();
      block = block == 0 ? offset : std::min(block, offset);
    }
  }
  if (block == 0) block = 1;

  std::vector<NodeId> candidates;
  std::vector<std::vector<Successor>> successors(n);
  for (NodeId u = 0; u < n; ++u) {
    if (u == target || !inside(u) || !to_target.reached(u)) continue;
    candidates.push_back(u);
    for (ArcId a : g.out_arcs(u)) {
      const NodeId v = g.to(a);
      if (inside(v) && to_target.reached(v)) successors[u].push_back({a, v});
    }
  }

  SolveResult result{Policy(target, budget, n), {}};
  Policy& policy = result.policy;
  SolveStats& stats = result.stats;
  stats.block_size = block;

  std::vector<double> value(static_cast<std::size_t>(block));
  std::vector<double> best(static_cast<std::size_t>(block));
  std::vector<NodeId> choice(static_cast<std::size_t>(block));

  for (int lo = 0; lo < budget; lo += block) {
    const int hi = std::min(lo + block, budget);
    const auto len = static_cast<std::size_t>(hi - lo);
    ++stats.blocks;
    for (NodeId u : candidates) {
      if (to_target.dist[u] > hi) continue;
      ++stats.order_len;
      if (!policy.touched(u)) ++stats.touched_nodes;
      std::fill_n(best.begin(), len, -1.0);
      std::fill_n(choice.begin(), len, kNoNode);

      for (const auto& [arc, v] : successors[u]) {
        const auto& pdf = graph.pdf(arc);
        if (pdf.offset() + to_target.dist[v] > hi) continue;
        convolve_window(pdf, policy.prob_curve(v), lo + 1, std::span(value).first(len), options.kernel);
        ++stats.convolutions;
        for (std::size_t i = 0; i < len; ++i) {
          if (improves_on(value[i], best[i])) {
            best[i] = value[i];
            choice[i] = v;
          }
        }
      }

      auto prob = policy.mutable_prob(u);
      auto next = policy.mutable_next(u);
      for (std::size_t i = 0; i < len; ++i) {
        const auto tau = static_cast<std::size_t>(lo + 1) + i;
        prob[tau] = std::max(best[i], 0.0);
        next[tau] = best[i] > 0.0 ? choice[i] : kNoNode;
      }
    }
  }
  return result;
}

SolveResult rerun_on_order(const StochasticGraph& graph, NodeId target, int budget, const PruneSet& order,
                           SolveOptions options) {
  PruneSet mask = order;
  mask.insert(target);
  return solve_label_setting(graph, target, budget, &mask, options);
}

Weight freeflow_distance(const StochasticGraph& graph, NodeId s, NodeId t) {
  const auto tree = dijkstra(graph.graph(), s, graph.weights(WeightView::FreeFlow));
  return tree.dist[t];
}

std::optional<double> budget_for_probability(const Policy& policy, NodeId s, double p,
                                             Weight freeflow_distance) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in (0, 1]");
  if (s == policy.target()) throw std::invalid_argument("budget factor undefined for s == target");
  if (freeflow_distance <= 0 || freeflow_distance == kInfinity) {
    throw std::invalid_argument("budget factor needs a finite positive free-flow distance");
  }
  const auto curve = policy.prob_curve(s);
  for (std::size_t tau = 0; tau < curve.size(); ++tau) {
    if (curve[tau] >= p - kMassTolerance) {
      return static_cast<double>(tau) / static_cast<double>(freeflow_distance);
    }
  }
  return std::nullopt;
}

std::optional<double> budget_for_probability(const StochasticGraph& graph, const Policy& policy, NodeId s,
                                             double p) {
  return budget_for_probability(policy, s, p, freeflow_distance(graph, s, policy.target()));
}

PruneSet extract_optimal_order(const StochasticGraph& graph, const Policy& policy, NodeId s) {
  const Graph& g = graph.graph();
  const std::size_t n = g.node_count();
  if (s >= n) throw std::out_of_range("extract_optimal_order: source out of range");

  PruneSet order(n, "optimal");
  std::vector<int> bound(n, -1);
  std::vector<NodeId> work{s};
  bound[s] = policy.budget();
  order.insert(s);

  while (!work.empty()) {
    const NodeId u = work.back();
    work.pop_back();
    if (u == policy.target()) continue;
    const auto next = policy.next_curve(u);
    if (next.empty()) continue;
    const auto limit = std::min<std::size_t>(static_cast<std::size_t>(bound[u]), next.size() - 1);
    std::vector<NodeId> heads;
    for (std::size_t tau = 0; tau <= limit; ++tau) {
      if (next[tau] != kNoNode) heads.push_back(next[tau]);
    }
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
    for (NodeId v : heads) {
      const auto arc = g.find_arc(u, v);
      if (!arc) throw std::logic_error("policy refers to a missing arc");
      const int b = bound[u] - graph.pdf(*arc).offset();
      if (b > bound[v]) {
        bound[v] = b;
        order.insert(v);
        work.push_back(v);
      }
    }
  }
  return order;
}

}  // namespace sota
