#pragma once

#include <span>
#include <vector>

#include "sota/graph.hpp"
#include "sota/prune_set.hpp"
#include "sota/stochastic_graph.hpp"

namespace sota {

struct ViaParams {
  // Admissible via routes are at most (1 + stretch_eps) * dist(s, t) long...
  double stretch_eps = 0.25;
  // ...and share at most sharing_gamma * dist(s, t) with the shortest path.
  double sharing_gamma = 0.8;
  // Views united by the via-mix variant.
  std::vector<WeightView> views{WeightView::FreeFlow, WeightView::Mean, WeightView::Max};
};

struct PenaltyParams {
  int rounds = 10;
  double penalty_factor = 1.4;
  bool adjoint = true;
  double adjoint_factor = 1.1;
  // Stop once a found path is longer than (1 + stop_stretch) * dist(s, t)
  // under the unpenalized weights.
  double stop_stretch = 0.25;
};

// k-turn corridor: C_0 is the shortest path, C_k adds the shortest path to t
// from every node one wrong turn (out-arc) away from C_{k-1}. Uses a single
// backward tree from t. Throws std::invalid_argument if t is unreachable.
PruneSet corridor(const Graph& graph, std::span<const Weight> weights, NodeId s, NodeId t, int k);

// Union of all admissible via routes SP(s,v).SP(v,t) plus the shortest path.
PruneSet via_alternative_graph(const Graph& graph, std::span<const Weight> weights, NodeId s,
                               NodeId t, const ViaParams& params);

// via_alternative_graph() under every view in params.views, united.
PruneSet via_mix(const StochasticGraph& graph, NodeId s, NodeId t, const ViaParams& params);

// Union of all paths found by iterated penalized shortest-path searches.
PruneSet penalty_alternative_graph(const Graph& graph, std::span<const Weight> weights, NodeId s,
                                   NodeId t, const PenaltyParams& params);

}  // namespace sota
