#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sota/graph.hpp"

namespace sota {

// Node subset of a graph; the arcs are the induced ones (both endpoints
// kept). Produced by the pruning techniques and consumed by the solver as a
// mask.
class PruneSet {
 public:
  PruneSet() = default;
  explicit PruneSet(std::size_t node_count, std::string provenance = {})
      : members_(node_count, false), provenance_(std::move(provenance)) {}

  static PruneSet all(std::size_t node_count, std::string provenance = "full");

  void insert(NodeId v) {
    if (!members_[v]) {
      members_[v] = true;
      ++size_;
    }
  }
  void merge(const PruneSet& other);

  bool contains(NodeId v) const { return members_[v]; }
  std::size_t size() const noexcept { return size_; }
  std::size_t node_count() const noexcept { return members_.size(); }
  bool empty() const noexcept { return size_ == 0; }

  const std::vector<bool>& membership() const noexcept { return members_; }
  std::vector<NodeId> nodes() const;
  std::vector<ArcId> induced_arcs(const Graph& graph) const;

  const std::string& provenance() const noexcept { return provenance_; }
  void set_provenance(std::string provenance) { provenance_ = std::move(provenance); }

  friend bool operator==(const PruneSet& a, const PruneSet& b) { return a.members_ == b.members_; }

 private:
  std::vector<bool> members_;
  std::size_t size_ = 0;
  std::string provenance_;
};

// Keeps only nodes that are reachable from s and reach t inside the induced
// subgraph.
PruneSet prune_dead_ends(const Graph& graph, const PruneSet& set, NodeId s, NodeId t);

// Text export: an optional "# <provenance>" line, then one "node <id>" line
// per member in id order.
void write_prune_set(std::ostream& out, const PruneSet& set);
PruneSet read_prune_set(std::istream& in, std::size_t node_count);

}  // namespace sota
