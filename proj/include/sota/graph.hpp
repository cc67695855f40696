#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace sota {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

// Arc costs and path lengths in time steps of the shared discretization grid.
using Weight = std::int64_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr ArcId kNoArc = std::numeric_limits<ArcId>::max();
inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max();

// Scalar reading of an arc's travel-time distribution. For every arc
// FreeFlow <= Mean <= Max.
enum class WeightView { FreeFlow, Mean, Max };

std::string_view to_string(WeightView view);
WeightView parse_weight_view(std::string_view text);

struct ArcEnds {
  NodeId from;
  NodeId to;
};

// Immutable directed graph. Arc ids follow construction order; adjacency
// lists are sorted by the opposite endpoint so that iteration order (and
// hence every tie-break downstream) depends only on node ids.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on out-of-range ids, self-loops and
  // parallel arcs.
  Graph(std::size_t node_count, std::vector<ArcEnds> arcs);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  bool empty() const noexcept { return node_count_ == 0; }

  NodeId from(ArcId a) const { return arcs_[a].from; }
  NodeId to(ArcId a) const { return arcs_[a].to; }
  std::span<const ArcEnds> arcs() const noexcept { return arcs_; }

  // Outgoing arcs of u, ordered by head id.
  std::span<const ArcId> out_arcs(NodeId u) const {
    return {out_arcs_.data() + out_begin_[u], out_arcs_.data() + out_begin_[u + 1]};
  }
  // Incoming arcs of v, ordered by tail id.
  std::span<const ArcId> in_arcs(NodeId v) const {
    return {in_arcs_.data() + in_begin_[v], in_arcs_.data() + in_begin_[v + 1]};
  }

  std::optional<ArcId> find_arc(NodeId from, NodeId to) const;

 private:
  std::size_t node_count_ = 0;
  std::vector<ArcEnds> arcs_;
  std::vector<std::size_t> out_begin_{0};
  std::vector<ArcId> out_arcs_;
  std::vector<std::size_t> in_begin_{0};
  std::vector<ArcId> in_arcs_;
};

struct Path {
  std::vector<NodeId> nodes;
  std::vector<ArcId> arcs;
  Weight length = 0;
};

}  // namespace sota
