#pragma once

#include <iosfwd>
#include <optional>

#include "sota/convolution.hpp"
#include "sota/policy.hpp"
#include "sota/prune_set.hpp"
#include "sota/stochastic_graph.hpp"

namespace sota {

struct SolveOptions {
  ConvolutionKernel kernel = ConvolutionKernel::Direct;
};

struct SolveResult {
  Policy policy;
  SolveStats stats;
};

// Label-setting solve of the on-time-arrival recursion towards `target` for
// budgets 0..budget, restricted to `mask` (the whole graph when null).
//
// Budgets are swept in blocks (L - d, L], L = d, 2d, ..., where d is the
// smallest arc offset inside the mask. Every arc needs at least d steps, so a
// block only reads successor values from earlier blocks, which are final.
// A node is updated in a block once its free-flow distance to the target
// (inside the mask) is within the block; an arc is convolved only if its
// head can contribute within the block. Nodes outside the mask have
// probability zero.
//
// Throws std::invalid_argument for budget < 1, an empty mask, or a mask
// without the target.
SolveResult solve_label_setting(const StochasticGraph& graph, NodeId target, int budget,
                                const PruneSet* mask = nullptr, SolveOptions options = {});

struct SuccessiveApproxResult {
  Policy policy;
  int iterations = 0;
  bool converged = false;
};

// Fixed-point iteration of the same recursion over all budgets at once,
// starting from zero everywhere but the target. Stops when the largest
// pointwise change drops below eps or after max_iter sweeps (converged is
// false then). Quadratic in the budget; meant as a reference on small graphs.
SuccessiveApproxResult solve_successive_approx(const StochasticGraph& graph, NodeId target, int budget,
                                               const PruneSet* mask = nullptr, int max_iter = 10'000,
                                               double eps = 1e-13);

// A-posteriori node order: the nodes the policy can actually visit from s.
// s starts with the full budget; whenever an included node u with budget
// bound b has next(u, tau) = v for some tau <= b, v is included with bound
// b - offset(u, v). Iterated to closure. The policy must come from a full
// graph solve.
PruneSet extract_optimal_order(const StochasticGraph& graph, const Policy& policy, NodeId s);

// Label-setting restricted to `order` (plus the target).
SolveResult rerun_on_order(const StochasticGraph& graph, NodeId target, int budget, const PruneSet& order,
                           SolveOptions options = {});

// Smallest budget with prob(s, tau) >= p, divided by the free-flow distance.
// nullopt when the policy's budget is insufficient. Throws for p outside
// (0, 1] or s == target.
std::optional<double> budget_for_probability(const Policy& policy, NodeId s, double p,
                                             Weight freeflow_distance);
std::optional<double> budget_for_probability(const StochasticGraph& graph, const Policy& policy, NodeId s,
                                             double p);

// Free-flow distance s -> t on the whole graph (kInfinity if unreachable).
Weight freeflow_distance(const StochasticGraph& graph, NodeId s, NodeId t);

}  // namespace sota
