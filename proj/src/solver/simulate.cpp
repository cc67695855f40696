#include "sota/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sota/distribution.hpp"

namespace sota {

namespace {

constexpr double kZ99 = 2.5758293035489004;

}  // namespace

SimulationResult simulate_policy(const StochasticGraph& graph, const Policy& policy, NodeId s, int budget,
                                 std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("simulate_policy: need at least one sample");
  if (budget < 0 || budget > policy.budget()) {
    throw std::invalid_argument("simulate_policy: budget outside the policy's range");
  }
  if (s >= graph.node_count()) throw std::out_of_range("simulate_policy: source out of range");

  const Graph& g = graph.graph();
  std::vector<CdfView> cdfs;
  cdfs.reserve(g.arc_count());
  for (const auto& pdf : graph.pdfs()) cdfs.emplace_back(pdf);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  SimulationResult result;
  result.samples = samples;
  for (std::uint64_t i = 0; i < samples; ++i) {
    NodeId u = s;
    int remaining = budget;
    bool success = false;
    while (true) {
      if (u == policy.target()) {
        success = true;
        break;
      }
      const NodeId v = policy.next(u, remaining);
      if (v == kNoNode) break;
      const auto arc = g.find_arc(u, v);
      if (!arc) throw std::logic_error("policy refers to a missing arc");
      const auto travel = cdfs[*arc].quantile(uniform(rng));
      if (!travel) break;
      remaining -= *travel;
      if (remaining < 0) break;
      u = v;
    }
    if (success) ++result.successes;
  }

  const double n = static_cast<double>(samples);
  result.rate = static_cast<double>(result.successes) / n;
  const double half = kZ99 * std::sqrt(result.rate * (1.0 - result.rate) / n);
  result.ci_low = std::max(0.0, result.rate - half);
  result.ci_high = std::min(1.0, result.rate + half);
  return result;
}

}  // namespace sota
