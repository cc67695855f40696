#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sota/datagen.hpp"
#include "sota/dijkstra.hpp"
#include "sota/parse_error.hpp"

namespace sota {

namespace {

// Cached trees hold one ArcId per node; stop caching beyond ~256 MiB.
constexpr std::size_t kCacheEntryLimit = std::size_t{64} << 20;

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

NodeId uniform_node(std::size_t n, std::mt19937_64& rng) {
  return static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

}  // namespace

std::string_view to_string(GenSetting setting) {
  switch (setting) {
    case GenSetting::RandomPaths:
      return "random-paths";
    case GenSetting::RandomShuffle:
      return "random-shuffle";
    case GenSetting::Hotspots:
      return "hotspots";
    case GenSetting::RandomArcs:
      return "random-arcs";
    case GenSetting::RandomArcDistributions:
      return "random-arc-distributions";
  }
  return "?";
}

GenSetting parse_gen_setting(std::string_view text) {
  for (auto s : {GenSetting::RandomPaths, GenSetting::RandomShuffle, GenSetting::Hotspots,
                 GenSetting::RandomArcs, GenSetting::RandomArcDistributions}) {
    if (text == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown generation setting '" + std::string(text) + "'");
}

GenSettings preset(std::string_view name) {
  GenSettings s;
  if (name == "graph1") {
    s.setting = GenSetting::RandomShuffle;
    s.rounds = 15;
  } else if (name == "graph2") {
    s.setting = GenSetting::RandomArcs;
    s.rounds = 40;
    s.paths = 50'000;
  } else if (name == "graph3") {
    s.setting = GenSetting::Hotspots;
    s.rounds = 15;
    s.paths = 5'000;
    s.hotspots = 50;
  } else if (name == "graph4") {
    s.setting = GenSetting::RandomPaths;
    s.rounds = 100;
    s.paths = 2'500;
  } else if (name == "graph5") {
    s.setting = GenSetting::RandomPaths;
    s.rounds = 25;
    s.paths = 10'000;
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected graph1..graph5)");
  }
  return s;
}

void apply_setting(GenSettings& s, std::string_view key, std::string_view value) {
  if (key == "setting") {
    s.setting = parse_gen_setting(value);
  } else if (key == "rounds") {
    s.rounds = parse_number<int>(key, value);
  } else if (key == "paths") {
    s.paths = parse_number<int>(key, value);
  } else if (key == "hotspots") {
    s.hotspots = parse_number<int>(key, value);
  } else if (key == "seed") {
    s.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "decrease_factor") {
    s.decrease_factor = parse_number<double>(key, value);
  } else if (key == "shape_add_low") {
    s.shape_add_low = parse_number<double>(key, value);
  } else if (key == "shape_add_high") {
    s.shape_add_high = parse_number<double>(key, value);
  } else if (key == "scale_add_low") {
    s.scale_add_low = parse_number<double>(key, value);
  } else if (key == "scale_add_high") {
    s.scale_add_high = parse_number<double>(key, value);
  } else if (key == "saturation") {
    s.saturation = parse_number<int>(key, value);
  } else if (key == "base_shape") {
    s.base_shape = parse_number<double>(key, value);
  } else if (key == "base_scale") {
    s.base_scale = parse_number<double>(key, value);
  } else if (key == "preset") {
    const auto seed = s.seed;
    s = preset(value);
    s.seed = seed;
  } else {
    throw std::invalid_argument("unknown setting key '" + std::string(key) + "'");
  }
}

GenSettings read_settings(std::istream& in, GenSettings base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    try {
      apply_setting(base, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return base;
}

void validate(const GenSettings& s) {
  const bool uses_paths = s.setting == GenSetting::RandomPaths || s.setting == GenSetting::Hotspots ||
                          s.setting == GenSetting::RandomArcs;
  const bool uses_hotspots = s.setting == GenSetting::Hotspots;
  const bool uses_rounds = s.setting != GenSetting::RandomArcDistributions;
  const std::string name(to_string(s.setting));
  if (s.rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (!uses_rounds && s.rounds != 0) throw std::invalid_argument(name + " does not operate in rounds");
  if (uses_paths && s.rounds > 0 && s.paths < 1) throw std::invalid_argument(name + " needs paths >= 1");
  if (!uses_paths && s.paths != 0) throw std::invalid_argument(name + " does not take a path count");
  if (uses_hotspots && s.rounds > 0 && s.hotspots < 1) throw std::invalid_argument(name + " needs hotspots >= 1");
  if (!uses_hotspots && s.hotspots != 0) throw std::invalid_argument(name + " does not take hotspots");
  if (!(s.decrease_factor > 0.0 && s.decrease_factor <= 1.0)) {
    throw std::invalid_argument("decrease_factor must lie in (0, 1]");
  }
  if (s.shape_add_low < 0.0 || s.shape_add_high < s.shape_add_low || s.scale_add_low < 0.0 ||
      s.scale_add_high < s.scale_add_low) {
    throw std::invalid_argument("additive penalties must satisfy 0 <= low <= high");
  }
  if (s.saturation < 1) throw std::invalid_argument("saturation must be >= 1");
  if (!(s.base_shape > 0.0) || !(s.base_scale > 0.0)) {
    throw std::invalid_argument("base shape and scale must be positive");
  }
}

FreeFlowRouter::FreeFlowRouter(const Graph& graph, std::span<const Weight> freeflow)
    : graph_(graph), freeflow_(freeflow.begin(), freeflow.end()) {
  if (freeflow_.size() != graph.arc_count()) {
    throw std::invalid_argument("FreeFlowRouter: one free-flow time per arc required");
  }
}

const std::vector<ArcId>& FreeFlowRouter::tree_from(NodeId s) {
  if (auto it = cache_.find(s); it != cache_.end()) return it->second;
  auto tree = dijkstra(graph_, s, freeflow_).parent_arc;
  if ((cache_.size() + 1) * graph_.node_count() <= kCacheEntryLimit) {
    return cache_.emplace(s, std::move(tree)).first->second;
  }
  scratch_ = std::move(tree);
  return scratch_;
}

std::vector<ArcId> FreeFlowRouter::tree_to(NodeId t) const {
  return dijkstra(graph_, t, freeflow_, Direction::Backward).parent_arc;
}

bool FreeFlowRouter::count_path(NodeId s, NodeId t, ArcCounter& counter) {
  if (s == t) return true;
  const auto& parent_arc = tree_from(s);
  if (parent_arc[t] == kNoArc) return false;
  for (NodeId v = t; v != s;) {
    const ArcId a = parent_arc[v];
    ++counter[a];
    v = graph_.from(a);
  }
  return true;
}

PathRoundStats paths_random(FreeFlowRouter& router, int paths, std::mt19937_64& rng, ArcCounter& counter) {
  const std::size_t n = router.graph().node_count();
  if (paths < 1) throw std::invalid_argument("paths_random: P must be >= 1");
  if (n < 2) throw std::invalid_argument("paths_random: graph needs two nodes");
  PathRoundStats stats;
  for (int i = 0; i < paths; ++i) {
    const NodeId s = uniform_node(n, rng);
    NodeId t = uniform_node(n - 1, rng);
    if (t >= s) ++t;
    ++stats.attempted;
    if (!router.count_path(s, t, counter)) ++stats.skipped;
  }
  return stats;
}

PathRoundStats paths_shuffle(FreeFlowRouter& router, std::mt19937_64& rng, ArcCounter& counter) {
  const std::size_t n = router.graph().node_count();
  std::vector<NodeId> partner(n);
  std::iota(partner.begin(), partner.end(), NodeId{0});
  std::shuffle(partner.begin(), partner.end(), rng);
  PathRoundStats stats;
  for (NodeId s = 0; s < n; ++s) {
    ++stats.attempted;
    if (!router.count_path(s, partner[s], counter)) ++stats.skipped;
  }
  return stats;
}

PathRoundStats paths_hotspot(FreeFlowRouter& router, int paths, int hotspots, std::mt19937_64& rng,
                             ArcCounter& counter) {
  const Graph& graph = router.graph();
  const std::size_t n = graph.node_count();
  if (paths < 1 || hotspots < 1) throw std::invalid_argument("paths_hotspot: P and H must be >= 1");
  if (static_cast<std::size_t>(hotspots) > n) throw std::invalid_argument("paths_hotspot: H exceeds node count");

  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  std::vector<NodeId> targets;
  for (int h = 0; h < hotspots; ++h) {
    const auto pick = std::uniform_int_distribution<std::size_t>(static_cast<std::size_t>(h), n - 1)(rng);
    std::swap(pool[static_cast<std::size_t>(h)], pool[pick]);
    targets.push_back(pool[static_cast<std::size_t>(h)]);
  }

  PathRoundStats stats;
  const int share = paths / hotspots;
  const int remainder = paths % hotspots;
  for (int h = 0; h < hotspots; ++h) {
    const NodeId t = targets[static_cast<std::size_t>(h)];
    const auto to_t = router.tree_to(t);
    const int count = share + (h < remainder ? 1 : 0);
    for (int i = 0; i < count; ++i) {
      const NodeId s = uniform_node(n, rng);
      ++stats.attempted;
      if (s == t) continue;
      if (to_t[s] == kNoArc) {
        ++stats.skipped;
        continue;
      }
      for (NodeId v = s; v != t;) {
        const ArcId a = to_t[v];
        ++counter[a];
        v = graph.to(a);
      }
    }
  }
  return stats;
}

PathRoundStats arcs_random(const Graph& graph, int paths, std::mt19937_64& rng, ArcCounter& counter) {
  if (paths < 1) throw std::invalid_argument("arcs_random: P must be >= 1");
  if (graph.arc_count() == 0) throw std::invalid_argument("arcs_random: graph has no arcs");
  std::uniform_int_distribution<std::size_t> draw(0, graph.arc_count() - 1);
  PathRoundStats stats;
  for (int i = 0; i < paths; ++i) {
    ++counter[draw(rng)];
    ++stats.attempted;
  }
  return stats;
}

std::vector<GammaSpec> generate(const Graph& graph, std::span<const Weight> freeflow,
                                const GenSettings& settings) {
  validate(settings);
  if (freeflow.size() != graph.arc_count()) throw std::invalid_argument("generate: one free-flow time per arc");
  for (Weight w : freeflow) {
    if (w < 1) throw std::invalid_argument("generate: free-flow times must be >= 1");
  }
  if (settings.setting == GenSetting::RandomArcDistributions) {
    return random_arc_distributions(graph, freeflow, settings.seed);
  }

  std::vector<GammaSpec> specs(graph.arc_count());
  for (ArcId a = 0; a < graph.arc_count(); ++a) {
    specs[a] = {settings.base_shape, settings.base_scale, static_cast<int>(freeflow[a])};
  }

  std::mt19937_64 rng(settings.seed);
  FreeFlowRouter router(graph, freeflow);
  ArcCounter counter(graph.arc_count());
  const double span_steps = settings.saturation > 1 ? static_cast<double>(settings.saturation - 1) : 1.0;

  for (int round = 0; round < settings.rounds; ++round) {
    std::fill(counter.begin(), counter.end(), 0U);
    switch (settings.setting) {
      case GenSetting::RandomPaths:
        paths_random(router, settings.paths, rng, counter);
        break;
      case GenSetting::RandomShuffle:
        paths_shuffle(router, rng, counter);
        break;
      case GenSetting::Hotspots:
        paths_hotspot(router, settings.paths, settings.hotspots, rng, counter);
        break;
      case GenSetting::RandomArcs:
        arcs_random(graph, settings.paths, rng, counter);
        break;
      case GenSetting::RandomArcDistributions:
        break;
    }
    for (ArcId a = 0; a < graph.arc_count(); ++a) {
      auto& spec = specs[a];
      if (counter[a] > 0) {
        const double level =
            settings.saturation > 1 ? std::min(1.0, static_cast<double>(counter[a] - 1) / span_steps) : 1.0;
        spec.shape += settings.shape_add_low + (settings.shape_add_high - settings.shape_add_low) * level;
        spec.scale += settings.scale_add_low + (settings.scale_add_high - settings.scale_add_low) * level;
      } else {
        spec.shape = std::max(settings.base_shape, spec.shape * settings.decrease_factor);
        spec.scale = std::max(settings.base_scale, spec.scale * settings.decrease_factor);
      }
    }
  }
  return specs;
}

std::vector<GammaSpec> random_arc_distributions(const Graph& graph, std::span<const Weight> freeflow,
                                                std::uint64_t seed) {
  if (freeflow.size() != graph.arc_count()) {
    throw std::invalid_argument("random_arc_distributions: one free-flow time per arc");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.01, 10.0);
  std::vector<GammaSpec> specs(graph.arc_count());
  for (ArcId a = 0; a < graph.arc_count(); ++a) {
    const double shape = draw(rng);
    const double scale = draw(rng);
    specs[a] = {shape, scale, static_cast<int>(freeflow[a])};
  }
  return specs;
}

std::vector<Weight> freeflow_of(std::span<const ArcDistSpec> specs) {
  std::vector<Weight> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    if (const auto* g = std::get_if<GammaSpec>(&spec)) {
      out.push_back(g->shift);
    } else if (const auto* nm = std::get_if<NormalMixtureSpec>(&spec)) {
      out.push_back(nm->shift);
    } else if (const auto* p = std::get_if<PointSpec>(&spec)) {
      out.push_back(p->at);
    } else {
      out.push_back(std::get<PmfSpec>(spec).offset);
    }
  }
  return out;
}

}  // namespace sota
