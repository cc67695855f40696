#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "sota/dist_io.hpp"
#include "sota/distribution.hpp"
#include "sota/graph.hpp"

namespace sota {

// Graph whose arcs carry discretized travel-time distributions, together
// with the integer weight views derived from them. Immutable once built and
// safe to share across concurrent queries.
class StochasticGraph {
 public:
  StochasticGraph(Graph graph, std::vector<DiscretePdf> arc_pdfs);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t node_count() const noexcept { return graph_.node_count(); }
  std::size_t arc_count() const noexcept { return graph_.arc_count(); }

  const DiscretePdf& pdf(ArcId a) const { return pdfs_[a]; }
  std::span<const DiscretePdf> pdfs() const noexcept { return pdfs_; }

  // FreeFlow = pdf offset, Mean = mean rounded to the nearest step,
  // Max = last support cell.
  std::span<const Weight> weights(WeightView view) const;

 private:
  Graph graph_;
  std::vector<DiscretePdf> pdfs_;
  std::vector<Weight> freeflow_;
  std::vector<Weight> mean_;
  std::vector<Weight> max_;
};

StochasticGraph make_stochastic_graph(Graph graph, std::span<const ArcDistSpec> specs,
                                      const DiscretizationOptions& options = {});

// Reads both files. When `step_seconds` is not positive, the resolution is
// chosen by default_step_seconds().
StochasticGraph load_stochastic_graph(const std::filesystem::path& graph_file,
                                      const std::filesystem::path& dist_file,
                                      double step_seconds = 0.0, double tail_eps = kDefaultTailEps);

}  // namespace sota
