#include "sota/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "sota/dijkstra.hpp"

namespace sota {

namespace {

void check_query(const Graph& graph, NodeId s, NodeId t) {
  if (s >= graph.node_count() || t >= graph.node_count()) {
    throw std::out_of_range("pruning: node out of range");
  }
}

std::invalid_argument unreachable(NodeId s, NodeId t) {
  return std::invalid_argument("target " + std::to_string(t) + " unreachable from " + std::to_string(s));
}

// Marks the tree path from v to the root; stops at the first node already
// marked, whose own tree path is then marked as well.
void mark_tree_path(const ShortestPathTree& tree, NodeId v, std::vector<bool>& marked, PruneSet& out) {
  for (NodeId x = v; x != kNoNode && !marked[x]; x = tree.parent[x]) {
    marked[x] = true;
    out.insert(x);
  }
}

Weight stretch_bound(Weight dist, double eps) {
  return static_cast<Weight>(std::floor(static_cast<double>(dist) * (1.0 + eps) + 1e-9));
}

Weight inflate(Weight w, double factor) {
  return std::max<Weight>(w, static_cast<Weight>(std::ceil(static_cast<double>(w) * factor - 1e-9)));
}

}  // namespace

PruneSet corridor(const Graph& graph, std::span<const Weight> weights, NodeId s, NodeId t, int k) {
  check_query(graph, s, t);
  if (k < 0) throw std::invalid_argument("corridor: k must be >= 0");
  const auto tree = dijkstra(graph, t, weights, Direction::Backward);
  if (!tree.reached(s)) throw unreachable(s, t);

  PruneSet out(graph.node_count(), "corridor:" + std::to_string(k));
  std::vector<bool> marked(graph.node_count(), false);
  mark_tree_path(tree, s, marked, out);
  for (int level = 1; level <= k; ++level) {
    const auto previous = out.nodes();
    for (NodeId v : previous) {
      if (v == t) continue;
      for (ArcId a : graph.out_arcs(v)) {
        const NodeId w = graph.to(a);
        if (tree.reached(w)) mark_tree_path(tree, w, marked, out);
      }
    }
  }
  return out;
}

PruneSet via_alternative_graph(const Graph& graph, std::span<const Weight> weights, NodeId s,
                               NodeId t, const ViaParams& params) {
  check_query(graph, s, t);
  if (params.stretch_eps < 0.0) throw std::invalid_argument("via: stretch_eps must be >= 0");
  if (!(params.sharing_gamma > 0.0 && params.sharing_gamma <= 1.0)) {
    throw std::invalid_argument("via: sharing_gamma must lie in (0, 1]");
  }

  const auto plain = dijkstra(graph, s, weights, Direction::Forward);
  if (!plain.reached(t)) throw unreachable(s, t);
  const Weight dist = plain.dist[t];
  const Weight bound = stretch_bound(dist, params.stretch_eps);

  DijkstraOptions pruned;
  pruned.bound = bound;
  const auto forward = dijkstra(graph, s, weights, Direction::Forward, pruned);
  const auto backward = dijkstra(graph, t, weights, Direction::Backward, pruned);

  std::vector<bool> on_sp(graph.arc_count(), false);
  for (ArcId a : tree_path(forward, t, weights).arcs) on_sp[a] = true;

  // Length shared with SP(s,t) along each tree path, accumulated in settle
  // order so parents are always done first.
  const std::size_t n = graph.node_count();
  std::vector<Weight> shared_fwd(n, 0), shared_bwd(n, 0);
  for (NodeId v : forward.settle_order) {
    if (const ArcId a = forward.parent_arc[v]; a != kNoArc) {
      shared_fwd[v] = shared_fwd[forward.parent[v]] + (on_sp[a] ? weights[a] : 0);
    }
  }
  for (NodeId v : backward.settle_order) {
    if (const ArcId a = backward.parent_arc[v]; a != kNoArc) {
      shared_bwd[v] = shared_bwd[backward.parent[v]] + (on_sp[a] ? weights[a] : 0);
    }
  }

  std::ostringstream tag;
  tag << "via:eps=" << params.stretch_eps << ",gamma=" << params.sharing_gamma;
  PruneSet out(n, tag.str());
  std::vector<bool> marked_fwd(n, false), marked_bwd(n, false);
  mark_tree_path(forward, t, marked_fwd, out);

  const double sharing_limit = params.sharing_gamma * static_cast<double>(dist) + 1e-9;
  for (NodeId v : forward.settle_order) {
    if (!backward.reached(v)) continue;
    if (forward.dist[v] + backward.dist[v] > bound) continue;
    if (static_cast<double>(shared_fwd[v] + shared_bwd[v]) > sharing_limit) continue;
    mark_tree_path(forward, v, marked_fwd, out);
    mark_tree_path(backward, v, marked_bwd, out);
  }
  return prune_dead_ends(graph, out, s, t);
}

PruneSet via_mix(const StochasticGraph& graph, NodeId s, NodeId t, const ViaParams& params) {
  if (params.views.empty()) throw std::invalid_argument("via-mix: no weight views given");
  PruneSet out(graph.node_count(), "via-mix");
  for (WeightView view : params.views) {
    out.merge(via_alternative_graph(graph.graph(), graph.weights(view), s, t, params));
  }
  return out;
}

PruneSet penalty_alternative_graph(const Graph& graph, std::span<const Weight> weights, NodeId s,
                                   NodeId t, const PenaltyParams& params) {
  check_query(graph, s, t);
  if (params.rounds < 1) throw std::invalid_argument("penalty: rounds must be >= 1");
  if (!(params.penalty_factor > 1.0)) throw std::invalid_argument("penalty: factor must exceed 1");
  if (params.adjoint && !(params.adjoint_factor >= 1.0)) {
    throw std::invalid_argument("penalty: adjoint factor must be >= 1");
  }

  std::vector<Weight> working(weights.begin(), weights.end());
  std::ostringstream tag;
  tag << "penalty:rounds=" << params.rounds << ",factor=" << params.penalty_factor;
  PruneSet out(graph.node_count(), tag.str());

  std::optional<Weight> dist;
  std::vector<bool> on_path(graph.arc_count(), false);
  for (int round = 0; round < params.rounds; ++round) {
    const auto path = shortest_path(graph, s, t, working);
    if (!path) throw unreachable(s, t);
    const Weight original = path_length(path->arcs, weights);
    if (!dist) dist = original;
    if (static_cast<double>(original) > (1.0 + params.stop_stretch) * static_cast<double>(*dist) + 1e-9) {
      break;
    }
    for (NodeId v : path->nodes) out.insert(v);

    for (ArcId a : path->arcs) on_path[a] = true;
    for (ArcId a : path->arcs) working[a] = inflate(working[a], params.penalty_factor);
    if (params.adjoint) {
      std::vector<ArcId> adjoint;
      for (NodeId v : path->nodes) {
        for (ArcId a : graph.out_arcs(v)) {
          if (!on_path[a]) adjoint.push_back(a);
        }
      }
      std::sort(adjoint.begin(), adjoint.end());
      adjoint.erase(std::unique(adjoint.begin(), adjoint.end()), adjoint.end());
      for (ArcId a : adjoint) working[a] = inflate(working[a], params.adjoint_factor);
    }
    for (ArcId a : path->arcs) on_path[a] = false;
  }
  return out;
}

}  // namespace sota
