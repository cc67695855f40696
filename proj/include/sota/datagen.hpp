#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sota/dist_io.hpp"
#include "sota/graph.hpp"

namespace sota {

// ---------------------------------------------------------------------------
// Grid synthesis

struct GridGraph {
  Graph graph;
  std::vector<Weight> freeflow;  // per arc, in steps
  int width = 0;
  int height = 0;
};

// Bidirected 4-neighbour grid, node id = y * width + x. Both directions of a
// street share one free-flow time drawn uniformly from [freeflow_min,
// freeflow_max].
GridGraph make_grid(int width, int height, Weight freeflow_min, Weight freeflow_max, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Path-based stress generation

enum class GenSetting { RandomPaths, RandomShuffle, Hotspots, RandomArcs, RandomArcDistributions };

std::string_view to_string(GenSetting setting);
GenSetting parse_gen_setting(std::string_view text);

struct GenSettings {
  GenSetting setting = GenSetting::RandomPaths;
  int rounds = 0;
  int paths = 0;     // P; RandomPaths, Hotspots and RandomArcs
  int hotspots = 0;  // H; Hotspots only
  std::uint64_t seed = 1;

  double decrease_factor = 0.9;
  double shape_add_low = 0.02;
  double shape_add_high = 0.08;
  double scale_add_low = 0.1;
  double scale_add_high = 0.5;
  // Per-round counter value at which the high additive applies; a counter
  // of one gets the low additive, values in between interpolate linearly.
  int saturation = 5;

  double base_shape = 1.0;
  double base_scale = 1.0;
};

// Input presets: graph1 = shuffle R15, graph2 = random arcs R40 P50k,
// graph3 = hotspots R15 P5k H50, graph4 = random paths R100 P2.5k,
// graph5 = random paths R25 P10k.
GenSettings preset(std::string_view name);

// key=value lines ('#' comments allowed) applied on top of `base`.
GenSettings read_settings(std::istream& in, GenSettings base = {});
void apply_setting(GenSettings& settings, std::string_view key, std::string_view value);

// Throws std::invalid_argument when a parameter the setting needs is missing
// or one it does not use is set.
void validate(const GenSettings& settings);

using ArcCounter = std::vector<std::uint32_t>;

// Shortest paths under the (fixed) free-flow weights. Forward trees are
// cached per source across rounds up to a memory cap.
class FreeFlowRouter {
 public:
  FreeFlowRouter(const Graph& graph, std::span<const Weight> freeflow);

  const Graph& graph() const noexcept { return graph_; }

  // Increments the counters of SP(s, t). False if t is unreachable.
  bool count_path(NodeId s, NodeId t, ArcCounter& counter);

  // Backward tree towards t, for batches of paths sharing a target.
  std::vector<ArcId> tree_to(NodeId t) const;

 private:
  const std::vector<ArcId>& tree_from(NodeId s);

  const Graph& graph_;
  std::vector<Weight> freeflow_;
  std::unordered_map<NodeId, std::vector<ArcId>> cache_;
  std::vector<ArcId> scratch_;
};

struct PathRoundStats {
  std::uint64_t attempted = 0;
  std::uint64_t skipped = 0;  // disconnected pairs
};

// P source/target pairs drawn uniformly (s != t).
PathRoundStats paths_random(FreeFlowRouter& router, int paths, std::mt19937_64& rng, ArcCounter& counter);
// One path from every node to its image under a random permutation.
PathRoundStats paths_shuffle(FreeFlowRouter& router, std::mt19937_64& rng, ArcCounter& counter);
// H distinct targets drawn uniformly, P paths split evenly over them (the
// remainder goes to the first targets drawn), sources uniform.
PathRoundStats paths_hotspot(FreeFlowRouter& router, int paths, int hotspots, std::mt19937_64& rng,
                             ArcCounter& counter);
// P arcs drawn uniformly with replacement, each counted as a one-hop path.
PathRoundStats arcs_random(const Graph& graph, int paths, std::mt19937_64& rng, ArcCounter& counter);

// Runs the configured rounds from the base gamma on every arc. Arcs hit in
// a round get the additive penalties, arcs not hit decay by the decrease
// factor but never below the base parameters. Shifts stay at the free-flow
// times.
std::vector<GammaSpec> generate(const Graph& graph, std::span<const Weight> freeflow,
                                const GenSettings& settings);

// Shape and scale uniform in [0.01, 10] per arc, shift = free-flow time.
std::vector<GammaSpec> random_arc_distributions(const Graph& graph, std::span<const Weight> freeflow,
                                                std::uint64_t seed);

// Free-flow time each spec was built on: the shift of gamma and normal
// mixture specs, the value of a point, the offset of a pmf.
std::vector<Weight> freeflow_of(std::span<const ArcDistSpec> specs);

// ---------------------------------------------------------------------------
// Smoothing

// Linear-interpolation quantile (numpy's default) of `values`, q in [0, 1].
double quantile(std::vector<double> values, double q);

// Caps every arc variance at the cap_quantile network quantile. Gamma arcs
// keep their shape and get a smaller scale; normal mixtures get their
// spread around the mixture mean scaled down. Point and pmf arcs are left
// as they are.
std::vector<ArcDistSpec> smooth_variance(std::span<const ArcDistSpec> specs, double cap_quantile,
                                         double step_seconds = 1.0);

}  // namespace sota
