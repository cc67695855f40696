#include <random>
#include <stdexcept>

#include "sota/datagen.hpp"

namespace sota {

GridGraph make_grid(int width, int height, Weight freeflow_min, Weight freeflow_max, std::uint64_t seed) {
  if (width < 2 || height < 2) throw std::invalid_argument("grid needs width, height >= 2");
  if (freeflow_min < 1 || freeflow_max < freeflow_min) {
    throw std::invalid_argument("grid free-flow range must satisfy 1 <= min <= max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Weight> draw(freeflow_min, freeflow_max);

  const auto id = [width](int x, int y) { return static_cast<NodeId>(y * width + x); };
  std::vector<ArcEnds> arcs;
  std::vector<Weight> freeflow;
  const auto street = [&](NodeId a, NodeId b) {
    const Weight w = draw(rng);
    arcs.push_back({a, b});
    arcs.push_back({b, a});
    freeflow.push_back(w);
    freeflow.push_back(w);
  };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x + 1 < width; ++x) street(id(x, y), id(x + 1, y));
  }
  for (int y = 0; y + 1 < height; ++y) {
    for (int x = 0; x < width; ++x) street(id(x, y), id(x, y + 1));
  }

  GridGraph grid;
  grid.graph = Graph(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), std::move(arcs));
  grid.freeflow = std::move(freeflow);
  grid.width = width;
  grid.height = height;
  return grid;
}

}  // namespace sota
