#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "sota/graph.hpp"
#include "sota/stochastic_graph.hpp"

namespace sota::test {

inline Graph make_graph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> arcs) {
  std::vector<ArcEnds> ends;
  for (auto [u, v] : arcs) ends.push_back({u, v});
  return Graph(n, std::move(ends));
}

// Random simple digraph; arcs drawn without replacement.
inline Graph random_graph(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<std::pair<NodeId, NodeId>> all;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v) all.emplace_back(u, v);
    }
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(m, all.size()));
  return make_graph(n, all);
}

inline DiscretePdf random_pdf(std::mt19937_64& rng, int max_offset, int max_len) {
  const int offset = std::uniform_int_distribution<int>(1, max_offset)(rng);
  const int len = std::uniform_int_distribution<int>(1, max_len)(rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> mass(static_cast<std::size_t>(len));
  double sum = 0.0;
  for (auto& x : mass) sum += (x = u(rng));
  // keep the endpoints non-zero so the support is what was drawn
  mass.front() += 0.1;
  mass.back() += 0.1;
  sum += 0.2;
  for (auto& x : mass) x /= sum;
  return DiscretePdf(offset, std::move(mass));
}

inline StochasticGraph random_stochastic_graph(std::size_t n, std::size_t m, int max_offset, int max_len,
                                               std::mt19937_64& rng) {
  Graph g = random_graph(n, m, rng);
  std::vector<DiscretePdf> pdfs;
  for (ArcId a = 0; a < g.arc_count(); ++a) pdfs.push_back(random_pdf(rng, max_offset, max_len));
  return StochasticGraph(std::move(g), std::move(pdfs));
}

inline DiscretePdf uniform_pdf(int lo, int hi) {
  return DiscretePdf(lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 1.0 / (hi - lo + 1)));
}

// All-pairs distances by Floyd-Warshall.
inline std::vector<std::vector<Weight>> floyd(const Graph& g, const std::vector<Weight>& w) {
  const std::size_t n = g.node_count();
  const Weight inf = std::numeric_limits<Weight>::max() / 4;
  std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (ArcId a = 0; a < g.arc_count(); ++a) d[g.from(a)][g.to(a)] = std::min(d[g.from(a)][g.to(a)], w[a]);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  for (auto& row : d) {
    for (auto& x : row) {
      if (x >= inf) x = kInfinity;
    }
  }
  return d;
}

// Arrival probabilities straight from the recursion, budget by budget:
// p(t, tau) = 1, p(u, tau) = max over allowed arcs (u, v) of
// sum_k pdf(k) p(v, tau - k). Offsets are >= 1, so earlier budgets are final.
inline std::vector<std::vector<double>> recursion_oracle(const StochasticGraph& sg, NodeId t, int budget,
                                                         const std::vector<bool>* allowed = nullptr) {
  const Graph& g = sg.graph();
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> p(n, std::vector<double>(static_cast<std::size_t>(budget) + 1, 0.0));
  auto in = [&](NodeId v) { return allowed == nullptr || (*allowed)[v]; };
  for (int tau = 0; tau <= budget; ++tau) {
    for (NodeId u = 0; u < n; ++u) {
      if (!in(u)) continue;
      if (u == t) {
        p[u][tau] = 1.0;
        continue;
      }
      double best = 0.0;
      for (ArcId a = 0; a < g.arc_count(); ++a) {
        if (g.from(a) != u || !in(g.to(a))) continue;
        const auto& pdf = sg.pdf(a);
        double sum = 0.0;
        for (int k = pdf.min(); k <= pdf.max() && k <= tau; ++k) sum += pdf.at(k) * p[g.to(a)][tau - k];
        best = std::max(best, sum);
      }
      p[u][tau] = best;
    }
  }
  return p;
}

}  // namespace sota::test
