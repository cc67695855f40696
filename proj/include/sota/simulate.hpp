#pragma once

#include <cstdint>

#include "sota/policy.hpp"
#include "sota/stochastic_graph.hpp"

namespace sota {

struct SimulationResult {
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  // 99% normal-approximation interval, clamped to [0, 1].
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Drives `samples` travellers from s with `budget` steps through the policy,
// drawing each arc's travel time from its pdf. A run succeeds when it reaches
// the target with a non-negative remaining budget; running out of budget or
// hitting a node without a defined successor is a failure.
//
// Throws std::invalid_argument for samples == 0 or a budget outside
// [0, policy.budget()].
SimulationResult simulate_policy(const StochasticGraph& graph, const Policy& policy, NodeId s, int budget,
                                 std::uint64_t samples, std::uint64_t seed);

}  // namespace sota
