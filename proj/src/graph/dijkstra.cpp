#include "sota/dijkstra.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace sota {

namespace {

struct HeapEntry {
  Weight key;
  NodeId node;
  bool operator>(const HeapEntry& other) const {
    return key != other.key ? key > other.key : node > other.node;
  }
};

}  // namespace

ShortestPathTree dijkstra(const Graph& graph, NodeId root, std::span<const Weight> weights,
                          Direction direction, DijkstraOptions options) {
  const std::size_t n = graph.node_count();
  if (root >= n) throw std::out_of_range("dijkstra: root out of range");
  if (weights.size() != graph.arc_count()) {
    throw std::invalid_argument("dijkstra: weight array does not match arc count");
  }

  ShortestPathTree tree;
  tree.root = root;
  tree.direction = direction;
  tree.dist.assign(n, kInfinity);
  tree.parent.assign(n, kNoNode);
  tree.parent_arc.assign(n, kNoArc);

  const auto* mask = options.mask;
  if (mask != nullptr && !(*mask)[root]) return tree;

  std::vector<bool> settled(n, false);
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
  tree.dist[root] = 0;
  heap.push({0, root});

  while (!heap.empty()) {
    const auto [key, u] = heap.top();
    heap.pop();
    if (settled[u] || key != tree.dist[u]) continue;
    if (key > options.bound) break;
    settled[u] = true;
    tree.settle_order.push_back(u);

    const auto arcs = direction == Direction::Forward ? graph.out_arcs(u) : graph.in_arcs(u);
    for (ArcId a : arcs) {
      const NodeId v = direction == Direction::Forward ? graph.to(a) : graph.from(a);
      if (settled[v] || (mask != nullptr && !(*mask)[v])) continue;
      const Weight nd = key + weights[a];
      if (nd < tree.dist[v] || (nd == tree.dist[v] && u < tree.parent[v])) {
        const bool improved = nd < tree.dist[v];
        tree.dist[v] = nd;
        tree.parent[v] = u;
        tree.parent_arc[v] = a;
        if (improved) heap.push({nd, v});
      }
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    if (!settled[v]) {
      tree.dist[v] = kInfinity;
      tree.parent[v] = kNoNode;
      tree.parent_arc[v] = kNoArc;
    }
  }
  return tree;
}

Path tree_path(const ShortestPathTree& tree, NodeId v, std::span<const Weight> weights) {
  Path path;
  if (!tree.reached(v)) return path;
  for (NodeId x = v; x != kNoNode; x = tree.parent[x]) {
    path.nodes.push_back(x);
    if (tree.parent_arc[x] != kNoArc) path.arcs.push_back(tree.parent_arc[x]);
  }
  if (tree.direction == Direction::Forward) {
    std::reverse(path.nodes.begin(), path.nodes.end());
    std::reverse(path.arcs.begin(), path.arcs.end());
  }
  path.length = path_length(path.arcs, weights);
  return path;
}

std::optional<Path> shortest_path(const Graph& graph, NodeId s, NodeId t,
                                  std::span<const Weight> weights) {
  if (s >= graph.node_count() || t >= graph.node_count()) {
    throw std::out_of_range("shortest_path: node out of range");
  }
  const auto tree = dijkstra(graph, s, weights);
  if (!tree.reached(t)) return std::nullopt;
  return tree_path(tree, t, weights);
}

std::optional<std::size_t> dijkstra_rank(const Graph& graph, NodeId s, NodeId v,
                                         std::span<const Weight> weights) {
  const auto tree = dijkstra(graph, s, weights);
  const auto it = std::find(tree.settle_order.begin(), tree.settle_order.end(), v);
  if (it == tree.settle_order.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tree.settle_order.begin());
}

Weight path_length(std::span<const ArcId> arcs, std::span<const Weight> weights) {
  Weight total = 0;
  for (ArcId a : arcs) total += weights[a];
  return total;
}

}  // namespace sota
