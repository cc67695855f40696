#pragma once

#include <filesystem>
#include <iosfwd>

#include "sota/graph.hpp"
#include "sota/parse_error.hpp"

namespace sota {

// Line-oriented graph format:
//
//   nodes <n> arcs <m>
//   <from> <to>        (m lines, 0-based ids)
//
// Blank lines and lines starting with '#' are ignored.
Graph read_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& path);

void write_graph(std::ostream& out, const Graph& graph);
void write_graph(const std::filesystem::path& path, const Graph& graph);

}  // namespace sota
