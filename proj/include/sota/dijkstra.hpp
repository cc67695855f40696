#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sota/graph.hpp"

namespace sota {

enum class Direction { Forward, Backward };

// Result of one Dijkstra run. For a backward run `parent[v]` is the next hop
// from v towards the root, so tree paths read v -> ... -> root.
struct ShortestPathTree {
  NodeId root = kNoNode;
  Direction direction = Direction::Forward;
  std::vector<Weight> dist;
  std::vector<NodeId> parent;
  std::vector<ArcId> parent_arc;
  std::vector<NodeId> settle_order;

  bool reached(NodeId v) const { return dist[v] != kInfinity; }
};

struct DijkstraOptions {
  // Nodes farther than this are left unsettled (and reported unreachable).
  Weight bound = kInfinity;
  // When non-null, only nodes with (*mask)[v] set are visited.
  const std::vector<bool>* mask = nullptr;
};

// Plain binary-heap Dijkstra. Equal keys settle in node id order and every
// node's parent is the lowest-id predecessor among its optimal ones, so the
// tree is a pure function of the input. Weights are indexed by ArcId and
// must be >= 1.
ShortestPathTree dijkstra(const Graph& graph, NodeId root, std::span<const Weight> weights,
                          Direction direction = Direction::Forward, DijkstraOptions options = {});

// Tree path between root and v, oriented along the arcs: root -> v for a
// forward tree, v -> root for a backward tree. Empty if v is unreachable.
Path tree_path(const ShortestPathTree& tree, NodeId v, std::span<const Weight> weights);

std::optional<Path> shortest_path(const Graph& graph, NodeId s, NodeId t,
                                  std::span<const Weight> weights);

// Iteration in which a forward run from s settles v; s itself has rank 0.
// nullopt when v is unreachable.
std::optional<std::size_t> dijkstra_rank(const Graph& graph, NodeId s, NodeId v,
                                         std::span<const Weight> weights);

Weight path_length(std::span<const ArcId> arcs, std::span<const Weight> weights);

}  // namespace sota
