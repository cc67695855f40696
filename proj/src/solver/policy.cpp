#include "sota/policy.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sota {

Policy::Policy(NodeId target, int budget, std::size_t node_count)
    : target_(target), budget_(budget), prob_(node_count), next_(node_count) {
  if (budget < 0) throw std::invalid_argument("policy budget must be >= 0");
  if (target >= node_count) throw std::out_of_range("policy target out of range");
  prob_[target].assign(static_cast<std::size_t>(budget) + 1, 1.0);
  next_[target].assign(static_cast<std::size_t>(budget) + 1, kNoNode);
}

double Policy::prob(NodeId u, int tau) const {
  if (tau < 0 || prob_[u].empty()) return 0.0;
  if (tau > budget_) throw std::out_of_range("policy queried beyond its budget");
  return prob_[u][static_cast<std::size_t>(tau)];
}

NodeId Policy::next(NodeId u, int tau) const {
  if (tau < 0 || next_[u].empty()) return kNoNode;
  if (tau > budget_) throw std::out_of_range("policy queried beyond its budget");
  return next_[u][static_cast<std::size_t>(tau)];
}

std::span<double> Policy::mutable_prob(NodeId u) {
  if (prob_[u].empty()) {
    prob_[u].assign(static_cast<std::size_t>(budget_) + 1, 0.0);
    next_[u].assign(static_cast<std::size_t>(budget_) + 1, kNoNode);
  }
  return prob_[u];
}

std::span<NodeId> Policy::mutable_next(NodeId u) {
  mutable_prob(u);
  return next_[u];
}

void write_policy(std::ostream& out, const Policy& policy) {
  out << "# target " << policy.target() << " budget " << policy.budget() << '\n';
  out << "# u tau prob next\n";
  char buf[64];
  for (NodeId u = 0; u < policy.node_count(); ++u) {
    const auto prob = policy.prob_curve(u);
    const auto next = policy.next_curve(u);
    for (std::size_t tau = 0; tau < prob.size(); ++tau) {
      const bool changed = tau == 0 ? prob[0] > 0.0 : (prob[tau] != prob[tau - 1] || next[tau] != next[tau - 1]);
      if (!changed) continue;
      const long long hop = next[tau] == kNoNode ? -1 : static_cast<long long>(next[tau]);
      std::snprintf(buf, sizeof buf, "%.17g", prob[tau]);
      out << u << ' ' << tau << ' ' << buf << ' ' << hop << '\n';
    }
  }
}

}  // namespace sota
