#include "sota/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sota {

std::string_view to_string(WeightView view) {
  switch (view) {
    case WeightView::FreeFlow:
      return "freeflow";
    case WeightView::Mean:
      return "mean";
    case WeightView::Max:
      return "max";
  }
  return "?";
}

WeightView parse_weight_view(std::string_view text) {
  if (text == "freeflow" || text == "min") return WeightView::FreeFlow;
  if (text == "mean") return WeightView::Mean;
  if (text == "max") return WeightView::Max;
  throw std::invalid_argument("unknown weight view '" + std::string(text) + "'");
}

Graph::Graph(std::size_t node_count, std::vector<ArcEnds> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  if (node_count_ >= kNoNode) throw std::invalid_argument("too many nodes");
  if (arcs_.size() >= kNoArc) throw std::invalid_argument("too many arcs");

  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const auto [u, v] = arcs_[i];
    if (u >= node_count_ || v >= node_count_) {
      throw std::invalid_argument("arc " + std::to_string(i) + " (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") references a node out of range");
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(u));
    }
  }

  std::vector<ArcId> order(arcs_.size());
  for (ArcId a = 0; a < order.size(); ++a) order[a] = a;

  auto build = [&](auto key, std::vector<std::size_t>& begin, std::vector<ArcId>& list) {
    std::sort(order.begin(), order.end(), [&](ArcId a, ArcId b) {
      const auto ka = key(arcs_[a]);
      const auto kb = key(arcs_[b]);
      return ka != kb ? ka < kb : a < b;
    });
    begin.assign(node_count_ + 1, 0);
    for (ArcId a : order) ++begin[key(arcs_[a]).first + 1];
    for (std::size_t u = 0; u < node_count_; ++u) begin[u + 1] += begin[u];
    list = order;
  };

  build([](const ArcEnds& e) { return std::pair{e.from, e.to}; }, out_begin_, out_arcs_);
  for (std::size_t i = 1; i < out_arcs_.size(); ++i) {
    const auto& prev = arcs_[out_arcs_[i - 1]];
    const auto& cur = arcs_[out_arcs_[i]];
    if (prev.from == cur.from && prev.to == cur.to) {
      throw std::invalid_argument("parallel arcs " + std::to_string(cur.from) + " -> " +
                                  std::to_string(cur.to));
    }
  }
  build([](const ArcEnds& e) { return std::pair{e.to, e.from}; }, in_begin_, in_arcs_);
}

std::optional<ArcId> Graph::find_arc(NodeId from, NodeId to) const {
  if (from >= node_count_) return std::nullopt;
  const auto out = out_arcs(from);
  const auto it = std::lower_bound(out.begin(), out.end(), to,
                                   [&](ArcId a, NodeId v) { return arcs_[a].to < v; });
  if (it == out.end() || arcs_[*it].to != to) return std::nullopt;
  return *it;
}

}  // namespace sota
