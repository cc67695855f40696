#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sota/solver.hpp"

namespace sota {

SuccessiveApproxResult solve_successive_approx(const StochasticGraph& graph, NodeId target, int budget,
                                               const PruneSet* mask, int max_iter, double eps) {
  const Graph& g = graph.graph();
  const std::size_t n = g.node_count();
  if (target >= n) throw std::out_of_range("successive approximation: target out of range");
  if (budget < 1) throw std::invalid_argument("successive approximation: budget must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("successive approximation: eps must be positive");
  if (mask != nullptr && (mask->empty() || !mask->contains(target))) {
    throw std::invalid_argument("successive approximation: mask must contain the target");
  }
  const auto inside = [&](NodeId v) { return mask == nullptr || mask->contains(v); };
  const auto width = static_cast<std::size_t>(budget) + 1;

  std::vector<std::vector<double>> current(n, std::vector<double>(width, 0.0));
  std::vector<std::vector<NodeId>> choice(n, std::vector<NodeId>(width, kNoNode));
  current[target].assign(width, 1.0);

  SuccessiveApproxResult result;
  while (result.iterations < max_iter) {
    ++result.iterations;
    auto updated = current;
    double change = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (u == target || !inside(u)) continue;
      for (int tau = 0; tau <= budget; ++tau) {
        double best = -1.0;
        NodeId arg = kNoNode;
        for (ArcId a : g.out_arcs(u)) {
          const NodeId v = g.to(a);
          if (!inside(v)) continue;
          const auto& pdf = graph.pdf(a);
          const auto mass = pdf.mass();
          const int base = tau - pdf.offset();
          double value = 0.0;
          for (int j = 0; j < static_cast<int>(mass.size()) && j <= base; ++j) {
            value += mass[static_cast<std::size_t>(j)] * current[v][static_cast<std::size_t>(base - j)];
          }
          if (improves_on(value, best)) {
            best = value;
            arg = v;
          }
        }
        const auto i = static_cast<std::size_t>(tau);
        updated[u][i] = std::max(best, 0.0);
        choice[u][i] = best > 0.0 ? arg : kNoNode;
        change = std::max(change, std::abs(updated[u][i] - current[u][i]));
      }
    }
    current = std::move(updated);
    if (change < eps) {
      result.converged = true;
      break;
    }
  }

  result.policy = Policy(target, budget, n);
  for (NodeId u = 0; u < n; ++u) {
    if (u == target || !inside(u)) continue;
    auto prob = result.policy.mutable_prob(u);
    auto next = result.policy.mutable_next(u);
    std::copy(current[u].begin(), current[u].end(), prob.begin());
    std::copy(choice[u].begin(), choice[u].end(), next.begin());
  }
  return result;
}

}  // namespace sota
