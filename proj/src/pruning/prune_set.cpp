#include "sota/prune_set.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "sota/parse_error.hpp"

namespace sota {

PruneSet PruneSet::all(std::size_t node_count, std::string provenance) {
  PruneSet set(node_count, std::move(provenance));
  set.members_.assign(node_count, true);
  set.size_ = node_count;
  return set;
}

void PruneSet::merge(const PruneSet& other) {
  for (NodeId v = 0; v < other.node_count(); ++v) {
    if (other.contains(v)) insert(v);
  }
}

std::vector<NodeId> PruneSet::nodes() const {
  std::vector<NodeId> out;
  out.reserve(size_);
  for (NodeId v = 0; v < members_.size(); ++v) {
    if (members_[v]) out.push_back(v);
  }
  return out;
}

std::vector<ArcId> PruneSet::induced_arcs(const Graph& graph) const {
  std::vector<ArcId> out;
  for (ArcId a = 0; a < graph.arc_count(); ++a) {
    if (members_[graph.from(a)] && members_[graph.to(a)]) out.push_back(a);
  }
  return out;
}

PruneSet prune_dead_ends(const Graph& graph, const PruneSet& set, NodeId s, NodeId t) {
  const std::size_t n = graph.node_count();
  auto sweep = [&](NodeId root, bool forward) {
    std::vector<bool> seen(n, false);
    if (!set.contains(root)) return seen;
    std::vector<NodeId> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (ArcId a : forward ? graph.out_arcs(u) : graph.in_arcs(u)) {
        const NodeId v = forward ? graph.to(a) : graph.from(a);
        if (set.contains(v) && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  const auto from_s = sweep(s, true);
  const auto to_t = sweep(t, false);
  PruneSet out(n, set.provenance());
  for (NodeId v = 0; v < n; ++v) {
    if (from_s[v] && to_t[v]) out.insert(v);
  }
  return out;
}

void write_prune_set(std::ostream& out, const PruneSet& set) {
  if (!set.provenance().empty()) out << "# " << set.provenance() << '\n';
  for (NodeId v : set.nodes()) out << "node " << v << '\n';
}

PruneSet read_prune_set(std::istream& in, std::size_t node_count) {
  PruneSet set(node_count);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') {
      const auto text = line.find_first_not_of("# \t", pos);
      if (set.provenance().empty() && text != std::string::npos) set.set_provenance(line.substr(text));
      continue;
    }
    std::istringstream fields(line);
    std::string keyword;
    long long id = -1;
    if (!(fields >> keyword >> id) || keyword != "node") throw ParseError(line_no, "expected 'node <id>'");
    if (id < 0 || static_cast<std::size_t>(id) >= node_count) throw ParseError(line_no, "node id out of range");
    set.insert(static_cast<NodeId>(id));
  }
  return set;
}

}  // namespace sota
