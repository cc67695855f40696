#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "sota/distribution.hpp"
#include "sota/graph.hpp"
#include "sota/parse_error.hpp"

namespace sota {

// Deterministic travel time of `at` steps.
struct PointSpec {
  int at = 1;
};

// Explicit discrete pmf: mass[i] at offset + i steps.
struct PmfSpec {
  int offset = 1;
  std::vector<double> mass;
};

using ArcDistSpec = std::variant<GammaSpec, NormalMixtureSpec, PointSpec, PmfSpec>;

struct ArcDistLine {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  ArcDistSpec spec;
  std::size_t line = 0;
};

struct DiscretizationOptions {
  double step_seconds = 1.0;  // grid resolution for normal mixtures
  double tail_eps = kDefaultTailEps;
};

// Distribution file, one arc per line:
//
//   <from> <to> gamma <shape> <scale> <shift>
//   <from> <to> nm <K> <w1> <mu1> <sigma1> ... <wK> <muK> <sigmaK> <shift>
//   <from> <to> point <steps>
//   <from> <to> pmf <offset> <K> <m1> ... <mK>
//
// mu and sigma are seconds, everything else is in grid steps. Blank lines
// and '#' comments are ignored.
std::vector<ArcDistLine> read_dist_lines(std::istream& in);

// Orders the lines by arc id. Every arc must appear exactly once and no
// line may name a non-arc.
std::vector<ArcDistSpec> align_to_graph(const Graph& graph, const std::vector<ArcDistLine>& lines);

std::vector<ArcDistSpec> read_dist_file(const Graph& graph, std::istream& in);
std::vector<ArcDistSpec> read_dist_file(const Graph& graph, const std::filesystem::path& path);

void write_dist_file(std::ostream& out, const Graph& graph, std::span<const ArcDistSpec> specs);
void write_dist_file(const std::filesystem::path& path, const Graph& graph,
                     std::span<const ArcDistSpec> specs);

DiscretePdf discretize(const ArcDistSpec& spec, const DiscretizationOptions& options = {});

// Variance in steps squared (normal mixtures are converted with
// step_seconds). Gamma and normal mixtures use the closed form; point and
// pmf specs use their discrete moments.
double spec_variance(const ArcDistSpec& spec, double step_seconds = 1.0);

// Default resolution: one second, coarsened so that no normal-mixture
// component mean exceeds 200 steps.
double default_step_seconds(std::span<const ArcDistSpec> specs);

}  // namespace sota
