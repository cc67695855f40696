#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sota/datagen.hpp"

namespace sota {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty set");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<ArcDistSpec> smooth_variance(std::span<const ArcDistSpec> specs, double cap_quantile,
                                         double step_seconds) {
  if (!(cap_quantile > 0.5 && cap_quantile < 1.0)) {
    throw std::invalid_argument("cap quantile must lie in (0.5, 1)");
  }
  std::vector<ArcDistSpec> out(specs.begin(), specs.end());
  if (specs.empty()) return out;

  std::vector<double> variances;
  variances.reserve(specs.size());
  for (const auto& spec : specs) variances.push_back(spec_variance(spec, step_seconds));
  const double cap = quantile(variances, cap_quantile);

  for (std::size_t a = 0; a < out.size(); ++a) {
    if (!(variances[a] > cap)) continue;
    const double factor = std::sqrt(cap / variances[a]);
    if (auto* g = std::get_if<GammaSpec>(&out[a])) {
      g->scale = std::sqrt(cap / g->shape);
    } else if (auto* nm = std::get_if<NormalMixtureSpec>(&out[a])) {
      double mean = 0.0;
      for (const auto& c : nm->components) mean += c.weight * c.mu;
      for (auto& c : nm->components) {
        c.mu = mean + factor * (c.mu - mean);
        c.sigma *= factor;
      }
    }
  }
  return out;
}

}  // namespace sota
