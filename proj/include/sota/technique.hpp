#pragma once

#include <string>
#include <string_view>

#include "sota/pruning.hpp"

namespace sota {

// What a benchmark row restricts the solver to. `Optimal` is the a-posteriori
// set extracted from the full solve and therefore cannot be built here.
struct Technique {
  enum class Kind { Full, Optimal, Corridor, Penalty, Via, ViaMix };
  Kind kind = Kind::Full;
  int corridor_k = 0;

  std::string name() const;
  friend bool operator==(const Technique&, const Technique&) = default;
};

// Accepts full | optimal | corridor:K | penalty | via | via-mix.
Technique parse_technique(std::string_view text);

struct TechniqueParams {
  // View the single-view techniques evaluate arcs on.
  WeightView view = WeightView::Mean;
  ViaParams via;
  PenaltyParams penalty;
};

PruneSet build_prune_set(const StochasticGraph& graph, NodeId s, NodeId t, const Technique& technique,
                         const TechniqueParams& params = {});

}  // namespace sota
