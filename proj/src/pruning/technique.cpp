#include "sota/technique.hpp"

#include <charconv>
#include <stdexcept>

namespace sota {

std::string Technique::name() const {
  switch (kind) {
    case Kind::Full:
      return "full";
    case Kind::Optimal:
      return "optimal";
    case Kind::Corridor:
      return "corridor:" + std::to_string(corridor_k);
    case Kind::Penalty:
      return "penalty";
    case Kind::Via:
      return "via";
    case Kind::ViaMix:
      return "via-mix";
  }
  return "?";
}

Technique parse_technique(std::string_view text) {
  if (text == "full") return {Technique::Kind::Full};
  if (text == "optimal") return {Technique::Kind::Optimal};
  if (text == "penalty") return {Technique::Kind::Penalty};
  if (text == "via") return {Technique::Kind::Via};
  if (text == "via-mix") return {Technique::Kind::ViaMix};
  constexpr std::string_view prefix = "corridor:";
  if (text.starts_with(prefix)) {
    const auto digits = text.substr(prefix.size());
    int k = -1;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc{} && end == digits.data() + digits.size() && k >= 0) {
      return {Technique::Kind::Corridor, k};
    }
  }
  throw std::invalid_argument("unknown technique '" + std::string(text) + "'");
}

PruneSet build_prune_set(const StochasticGraph& graph, NodeId s, NodeId t, const Technique& technique,
                         const TechniqueParams& params) {
  const auto weights = graph.weights(params.view);
  switch (technique.kind) {
    case Technique::Kind::Full:
      return PruneSet::all(graph.node_count());
    case Technique::Kind::Corridor:
      return corridor(graph.graph(), weights, s, t, technique.corridor_k);
    case Technique::Kind::Penalty:
      return penalty_alternative_graph(graph.graph(), weights, s, t, params.penalty);
    case Technique::Kind::Via:
      return via_alternative_graph(graph.graph(), weights, s, t, params.via);
    case Technique::Kind::ViaMix:
      return via_mix(graph, s, t, params.via);
    case Technique::Kind::Optimal:
      break;
  }
  throw std::invalid_argument("technique '" + technique.name() + "' needs a solved policy");
}

}  // namespace sota
