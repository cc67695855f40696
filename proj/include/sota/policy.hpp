#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "sota/graph.hpp"

namespace sota {

// Relative margin a later candidate needs to displace the current best in
// the argmax over successors. Candidates are tried in increasing head id, so
// near-ties resolve to the lowest successor id.
inline constexpr double kArgmaxTieTolerance = 1e-12;

inline bool improves_on(double candidate, double best) noexcept {
  return candidate > best * (1.0 + kArgmaxTieTolerance);
}

// Optimal on-time-arrival policy towards one target over budgets 0..budget.
// prob(u, tau) is the probability of reaching the target from u within tau
// steps; next(u, tau) the successor to take (kNoNode where prob is zero).
// Nodes the solver never touched have identically zero probability and no
// storage.
class Policy {
 public:
  Policy() = default;
  Policy(NodeId target, int budget, std::size_t node_count);

  NodeId target() const noexcept { return target_; }
  int budget() const noexcept { return budget_; }
  std::size_t node_count() const noexcept { return prob_.size(); }

  double prob(NodeId u, int tau) const;
  NodeId next(NodeId u, int tau) const;

  // Empty when u was never touched.
  std::span<const double> prob_curve(NodeId u) const { return prob_[u]; }
  std::span<const NodeId> next_curve(NodeId u) const { return next_[u]; }

  bool touched(NodeId u) const { return !prob_[u].empty(); }

  // Allocates zeroed storage for u on first use and returns it.
  std::span<double> mutable_prob(NodeId u);
  std::span<NodeId> mutable_next(NodeId u);

 private:
  NodeId target_ = kNoNode;
  int budget_ = 0;
  std::vector<std::vector<double>> prob_;
  std::vector<std::vector<NodeId>> next_;
};

struct SolveStats {
  // Logical (arc, budget block) convolution products performed.
  std::uint64_t convolutions = 0;
  // (node, budget block) updates performed.
  std::uint64_t order_len = 0;
  // Nodes updated at least once.
  std::uint64_t touched_nodes = 0;
  std::uint64_t blocks = 0;
  int block_size = 0;
};

// Tabular text dump: "u tau prob next" for every touched node and every tau
// where (prob, next) differs from tau - 1. next is -1 when undefined. The
// layout is for inspection and may change.
void write_policy(std::ostream& out, const Policy& policy);

}  // namespace sota
