#pragma once

#include <optional>
#include <span>
#include <vector>

namespace sota {

// Tolerance on total probability mass (sub-stochastic pdfs are allowed up to
// rounding noise above one).
inline constexpr double kMassTolerance = 1e-9;
inline constexpr double kDefaultTailEps = 1e-6;

// Probability mass over consecutive cells of the global time grid. Cell i of
// `mass()` holds P(X = offset() + i). Leading and trailing zero cells are
// trimmed on construction, so the first and last cells are always positive
// and offset() is the minimum possible travel time (>= 1 step).
class DiscretePdf {
 public:
  // Throws std::invalid_argument if the mass is empty after trimming,
  // negative, non-finite, sums above 1 + kMassTolerance, or if the resulting
  // offset is below 1.
  DiscretePdf(int offset, std::vector<double> mass);

  static DiscretePdf point(int at) { return DiscretePdf(at, {1.0}); }

  int offset() const noexcept { return offset_; }
  int min() const noexcept { return offset_; }
  int max() const noexcept { return offset_ + static_cast<int>(mass_.size()) - 1; }
  std::size_t size() const noexcept { return mass_.size(); }
  std::span<const double> mass() const noexcept { return mass_; }
  double total() const noexcept { return total_; }

  // P(X = t); zero outside the support.
  double at(int t) const noexcept {
    return t < offset_ || t > max() ? 0.0 : mass_[static_cast<std::size_t>(t - offset_)];
  }

 private:
  int offset_;
  std::vector<double> mass_;
  double total_ = 0.0;
};

// Cumulative view of a pdf on the grid: at(t) = P(X <= t).
class CdfView {
 public:
  explicit CdfView(const DiscretePdf& pdf);

  int offset() const noexcept { return offset_; }
  std::span<const double> cumulative() const noexcept { return cumulative_; }
  double at(int t) const noexcept;

  // Smallest t with at(t) > u, i.e. the inverse-CDF sample for a uniform
  // draw u in [0, 1). nullopt when u falls into missing mass (u >= total).
  std::optional<int> quantile(double u) const noexcept;

 private:
  int offset_;
  std::vector<double> cumulative_;
};

// Derived scalars in grid-index units.
struct ScalarViews {
  int min = 0;
  double mean = 0.0;
  int max = 0;
  double variance = 0.0;
};

ScalarViews scalar_views(const DiscretePdf& pdf);

// Gamma-distributed delay on top of a fixed minimum travel time. Shape and
// scale are in time steps; the delay X lands in cell shift + round(X).
struct GammaSpec {
  double shape = 1.0;
  double scale = 1.0;
  int shift = 1;
};

// Mixture of normals in seconds, offset by `shift` steps. Mass of negative
// travel times is clipped into the first cell (index `shift`).
struct NormalMixtureSpec {
  struct Component {
    double weight = 1.0;
    double mu = 0.0;
    double sigma = 1.0;
  };
  std::vector<Component> components;
  int shift = 1;
};

// Cells are centred on grid points: cell shift + k collects the delay range
// [k - 1/2, k + 1/2) (cell `shift` also takes everything below 1/2). The
// upper tail is cut once the cumulative mass reaches 1 - tail_eps, leading
// cells holding at most tail_eps in total are dropped, and the remaining mass
// is renormalized to one.
DiscretePdf discretize_gamma(const GammaSpec& spec, double tail_eps = kDefaultTailEps);

// `step_seconds` is the grid resolution used to map mu and sigma onto cells.
DiscretePdf discretize_normal_mixture(const NormalMixtureSpec& spec, double step_seconds = 1.0,
                                      double tail_eps = kDefaultTailEps);

double gamma_variance(const GammaSpec& spec);
// In seconds squared.
double normal_mixture_variance(const NormalMixtureSpec& spec);

}  // namespace sota
