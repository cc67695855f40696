#include "sota/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace sota {

namespace {

bool is_skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  bool have_header = false;
  std::vector<ArcEnds> arcs;
  std::set<std::pair<NodeId, NodeId>> seen;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string nodes_kw, arcs_kw;
      long long nn = -1, mm = -1;
      if (!(fields >> nodes_kw >> nn >> arcs_kw >> mm) || nodes_kw != "nodes" || arcs_kw != "arcs" ||
          nn < 0 || mm < 0) {
        throw ParseError(line_no, "expected header 'nodes <n> arcs <m>'");
      }
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      arcs.reserve(m);
      have_header = true;
      continue;
    }
    long long u = -1, v = -1;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) {
      throw ParseError(line_no, "expected '<from> <to>'");
    }
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw ParseError(line_no, "node id out of range");
    }
    if (u == v) throw ParseError(line_no, "self-loop");
    if (arcs.size() == m) throw ParseError(line_no, "more arcs than declared");
    if (!seen.emplace(static_cast<NodeId>(u), static_cast<NodeId>(v)).second) {
      throw ParseError(line_no, "parallel arc " + std::to_string(u) + " -> " + std::to_string(v));
    }
    arcs.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (arcs.size() != m) {
    throw ParseError(line_no, "declared " + std::to_string(m) + " arcs, found " +
                                  std::to_string(arcs.size()));
  }
  return Graph(n, std::move(arcs));
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& graph) {
  out << "nodes " << graph.node_count() << " arcs " << graph.arc_count() << '\n';
  for (const auto& arc : graph.arcs()) out << arc.from << ' ' << arc.to << '\n';
}

void write_graph(const std::filesystem::path& path, const Graph& graph) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file " + path.string());
  write_graph(out, graph);
}

}  // namespace sota
