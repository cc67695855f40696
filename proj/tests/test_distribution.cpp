#include <doctest.h>

#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include "sota/convolution.hpp"
#include "sota/dist_io.hpp"
#include "sota/stochastic_graph.hpp"
#include "support.hpp"

using namespace sota;
using doctest::Approx;

namespace {

constexpr int kSubcells = 1000;

struct Moments {
  double mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const std::vector<double>& cells, int offset) {
  Moments m;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double x = offset + static_cast<double>(i);
    m.mass += cells[i];
    m.mean += cells[i] * x;
  }
  m.mean /= m.mass;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double d = offset + static_cast<double>(i) - m.mean;
    m.variance += cells[i] * d * d;
  }
  m.variance /= m.mass;
  return m;
}

Moments moments(const DiscretePdf& pdf) {
  return moments(std::vector<double>(pdf.mass().begin(), pdf.mass().end()), pdf.offset());
}

// Midpoint-rule masses of centred unit cells of a delay density, cell k
// covering [k - 0.5, k + 0.5) with everything below 0.5 folded into cell 0.
template <typename Density>
std::vector<double> fine_grid_cells(Density f, double lo, int cells) {
  std::vector<double> out(static_cast<std::size_t>(cells), 0.0);
  const double h = 1.0 / kSubcells;
  for (int k = 0; k < cells; ++k) {
    const double a = k == 0 ? lo : k - 0.5;
    const double b = k + 0.5;
    const int steps = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
    const double dx = (b - a) / steps;
    for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(k)] += f(a + (i + 0.5) * dx) * dx;
  }
  return out;
}

double gamma_density(double x, double shape, double scale) {
  if (x <= 0.0) return 0.0;
  return std::exp((shape - 1.0) * std::log(x) - x / scale - std::lgamma(shape) - shape * std::log(scale));
}

double normal_density(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

}  // namespace

TEST_CASE("pdf construction") {
  const DiscretePdf p(3, {0.0, 0.0, 0.5, 0.5, 0.0});
  CHECK(p.offset() == 5);
  CHECK(p.size() == 2);
  CHECK(p.max() == 6);
  CHECK(p.at(5) == 0.5);
  CHECK(p.at(4) == 0.0);
  CHECK(p.total() == Approx(1.0));
  CHECK_THROWS_AS(DiscretePdf(0, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DiscretePdf(1, {1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscretePdf(1, {0.7, 0.7}), std::invalid_argument);
  CHECK(DiscretePdf::point(4).at(4) == 1.0);
}

TEST_CASE("cdf view") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto pdf = test::random_pdf(rng, 10, 30);
    const CdfView cdf(pdf);
    CHECK(cdf.at(pdf.offset() - 1) == 0.0);
    double prev = 0.0;
    for (int t = pdf.min(); t <= pdf.max() + 2; ++t) {
      CHECK(cdf.at(t) >= prev);
      prev = cdf.at(t);
    }
    CHECK(prev == Approx(pdf.total()).epsilon(1e-12));
  }
  const CdfView u(test::uniform_pdf(1, 5));
  CHECK(u.at(3) == Approx(0.6));
  CHECK(u.quantile(0.0) == 1);
  CHECK(u.quantile(0.5) == 3);
  CHECK(u.quantile(0.999) == 5);
}

TEST_CASE("scalar views") {
  const auto p = scalar_views(DiscretePdf::point(7));
  CHECK(p.min == 7);
  CHECK(p.mean == 7.0);
  CHECK(p.max == 7);
  CHECK(p.variance == 0.0);
  const auto u = scalar_views(test::uniform_pdf(1, 2));
  CHECK(u.min == 1);
  CHECK(u.mean == Approx(1.5));
  CHECK(u.max == 2);
  CHECK(u.variance == Approx(0.25));
}

TEST_CASE("gamma discretization against a fine-grid oracle") {
  const GammaSpec spec{4.0, 2.0, 1};
  const auto pdf = discretize_gamma(spec);
  CHECK(pdf.offset() == spec.shift);
  CHECK(pdf.total() == Approx(1.0).epsilon(1e-12));

  const auto cells = fine_grid_cells([&](double x) { return gamma_density(x, 4.0, 2.0); }, 0.0, 120);
  const Moments oracle = moments(cells, spec.shift);
  const Moments got = moments(pdf);
  CHECK(std::abs(got.mean - (spec.shift + 8.0)) <= 0.1);
  CHECK(got.mean == Approx(oracle.mean).epsilon(1e-4));
  CHECK(std::abs(got.variance - 16.0) <= 0.02 * 16.0);
  CHECK(got.variance == Approx(oracle.variance).epsilon(1e-3));
  CHECK(gamma_variance(spec) == Approx(16.0));
  // cell by cell
  for (int k = 0; k < 40; ++k) CHECK(pdf.at(spec.shift + k) == Approx(cells[static_cast<std::size_t>(k)]).epsilon(1e-4));

  const auto narrow = discretize_gamma({0.01, 0.01, 6});
  CHECK(narrow.offset() == 6);
  CHECK(narrow.at(6) > 0.999);

  const auto exp5 = discretize_gamma({1.0, 5.0, 3});
  CHECK(std::accumulate(exp5.mass().begin(), exp5.mass().end(), 0.0) == Approx(1.0).epsilon(1e-12));

  CHECK_THROWS(discretize_gamma({0.0, 1.0, 1}));
  CHECK_THROWS(discretize_gamma({1.0, -1.0, 1}));
  CHECK_THROWS(discretize_gamma({1.0, 1.0, 0}));
}

TEST_CASE("normal mixture discretization") {
  SUBCASE("degenerate component is a point") {
    const auto pdf = discretize_normal_mixture({{{1.0, 10.0, 0.01}}, 2}, 1.0);
    CHECK(pdf.offset() == 12);
    CHECK(pdf.size() == 1);
  }
  SUBCASE("bimodal mean against the fine-grid oracle") {
    const NormalMixtureSpec spec{{{0.5, 5.0, 1.0}, {0.5, 15.0, 1.0}}, 3};
    const auto pdf = discretize_normal_mixture(spec, 1.0);
    auto density = [](double x) { return 0.5 * normal_density(x, 5.0, 1.0) + 0.5 * normal_density(x, 15.0, 1.0); };
    const auto cells = fine_grid_cells(density, -10.0, 30);
    const Moments oracle = moments(cells, spec.shift);
    const Moments got = moments(pdf);
    CHECK(std::abs(got.mean - (spec.shift + 10.0)) <= 0.1);
    CHECK(got.mean == Approx(oracle.mean).epsilon(1e-4));
    CHECK(got.variance == Approx(oracle.variance).epsilon(1e-3));
    CHECK(normal_mixture_variance(spec) == Approx(26.0));
  }
  SUBCASE("step size rescales seconds") {
    const auto pdf = discretize_normal_mixture({{{1.0, 20.0, 0.01}}, 1}, 2.0);
    CHECK(pdf.offset() == 11);
  }
  SUBCASE("negative travel time folds into the first cell") {
    const auto pdf = discretize_normal_mixture({{{1.0, 0.0, 3.0}}, 4}, 1.0);
    CHECK(pdf.offset() == 4);
    CHECK(pdf.at(4) == Approx(0.5 + 0.5 * std::erf(0.5 / (3.0 * std::sqrt(2.0)))).epsilon(1e-6));
  }
  CHECK_THROWS_AS(discretize_normal_mixture({{{0.25, 5.0, 1.0}, {0.25, 8.0, 1.0}}, 1}), std::invalid_argument);
  CHECK_THROWS(discretize_normal_mixture({{}, 1}));
}

TEST_CASE("convolution examples") {
  const auto three = convolve(DiscretePdf::point(1), DiscretePdf::point(2));
  CHECK(three.offset() == 3);
  CHECK(three.size() == 1);
  CHECK(three.at(3) == Approx(1.0));
  CHECK(convolve_fft(DiscretePdf::point(1), DiscretePdf::point(2)).at(3) == Approx(1.0));

  // enumerate the four outcomes of two fair {1, 2} draws
  const auto u = test::uniform_pdf(1, 2);
  std::map<int, double> enumerated;
  for (int a : {1, 2}) {
    for (int b : {1, 2}) enumerated[a + b] += 0.25;
  }
  const auto uu = convolve(u, u);
  CHECK(uu.offset() == 2);
  REQUIRE(uu.size() == 3);
  for (auto [x, p] : enumerated) CHECK(uu.at(x) == Approx(p));

  const std::vector<double> one{0.5};
  const std::vector<double> other{0.25};
  CHECK(convolve_sequences(one, other, ConvolutionKernel::Fft) == std::vector<double>{0.125});

  ConvolutionCounter counter;
  convolve(u, u, &counter);
  CHECK(counter.products == 1);
}

TEST_CASE("convolution algebra on random pairs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const auto a = test::random_pdf(rng, 20, 40);
    const auto b = test::random_pdf(rng, 20, 40);
    const auto ab = convolve(a, b);
    const auto ba = convolve(b, a);
    CHECK(ab.offset() == a.offset() + b.offset());
    CHECK(ab.total() == Approx(a.total() * b.total()).epsilon(1e-12));
    REQUIRE(ab.size() == ba.size());
    for (int t = ab.min(); t <= ab.max(); ++t) CHECK(std::abs(ab.at(t) - ba.at(t)) <= 1e-12);
    if (i % 10 == 0) {
      const auto c = test::random_pdf(rng, 20, 40);
      const auto left = convolve(ab, c);
      const auto right = convolve(a, convolve(b, c));
      for (int t = left.min(); t <= left.max(); ++t) CHECK(std::abs(left.at(t) - right.at(t)) <= 1e-10);
    }
  }
}

TEST_CASE("FFT kernel matches direct convolution") {
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = test::random_pdf(rng, 50, 4096);
    const auto b = test::random_pdf(rng, 50, 4096);
    const auto direct = convolve(a, b);
    const auto fft = convolve_fft(a, b);
    const int lo = std::min(direct.min(), fft.min());
    const int hi = std::max(direct.max(), fft.max());
    for (int t = lo; t <= hi; ++t) worst = std::max(worst, std::abs(direct.at(t) - fft.at(t)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("truncated convolution") {
  const auto u = test::uniform_pdf(1, 5);
  const auto cut = convolve_truncated(u, u, 4);
  REQUIRE(cut);
  CHECK(cut->max() == 4);
  CHECK(cut->at(2) == Approx(0.04));
  CHECK(cut->at(4) == Approx(0.12));
  CHECK_FALSE(convolve_truncated(u, u, 1).has_value());
  const auto fft_cut = convolve_truncated(u, u, 4, nullptr, ConvolutionKernel::Fft);
  REQUIRE(fft_cut);
  CHECK(fft_cut->at(3) == Approx(cut->at(3)));
}

TEST_CASE("convolution window matches naive summation") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const auto pdf = test::random_pdf(rng, 6, 50);
    std::vector<double> f(static_cast<std::size_t>(60 + rng() % 200));
    for (auto& x : f) x = std::uniform_real_distribution<double>(0, 1)(rng);
    const int len = 1 + static_cast<int>(rng() % 20);
    const int max_first = static_cast<int>(f.size()) - len + pdf.offset();
    const int first = static_cast<int>(rng() % static_cast<unsigned>(max_first + 1));
    std::vector<double> direct(static_cast<std::size_t>(len)), fft(static_cast<std::size_t>(len));
    convolve_window(pdf, f, first, direct);
    convolve_window(pdf, f, first, fft, ConvolutionKernel::Fft);
    for (int j = 0; j < len; ++j) {
      double expect = 0.0;
      for (int w = pdf.min(); w <= pdf.max(); ++w) {
        const int x = first + j - w;
        if (x >= 0) expect += pdf.at(w) * f[static_cast<std::size_t>(x)];
      }
      CHECK(direct[static_cast<std::size_t>(j)] == Approx(expect).epsilon(1e-12));
      CHECK(std::abs(fft[static_cast<std::size_t>(j)] - expect) <= 1e-10);
    }
  }
}

TEST_CASE("distribution file parsing") {
  const Graph g = test::make_graph(3, {{0, 1}, {1, 2}, {0, 2}, {2, 0}});
  std::istringstream in(
      "# comment\n"
      "1 2 gamma 2.5 1.5 4\n"
      "0 1 point 3\n"
      "\n"
      "2 0 pmf 2 3 0.25 0.5 0.25\n"
      "0 2 nm 2 0.5 5 1 0.5 15 1 2\n");
  const auto specs = read_dist_file(g, in);
  REQUIRE(specs.size() == 4);
  CHECK(std::get<PointSpec>(specs[0]).at == 3);
  CHECK(std::get<GammaSpec>(specs[1]).shape == 2.5);
  CHECK(std::get<NormalMixtureSpec>(specs[2]).components.size() == 2);
  CHECK(std::get<NormalMixtureSpec>(specs[2]).shift == 2);
  CHECK(std::get<PmfSpec>(specs[3]).mass.size() == 3);

  std::stringstream buf;
  write_dist_file(buf, g, specs);
  const auto back = read_dist_file(g, buf);
  CHECK(std::get<GammaSpec>(back[1]).scale == 1.5);
  CHECK(std::get<NormalMixtureSpec>(back[2]).components[1].mu == 15.0);

  CHECK(spec_variance(specs[0]) == 0.0);
  CHECK(spec_variance(specs[1]) == Approx(2.5 * 1.5 * 1.5));
  CHECK(spec_variance(specs[2], 2.0) == Approx(26.0 / 4.0));
  CHECK(spec_variance(specs[3]) == Approx(0.5));

  auto line_of = [&](const std::string& text) {
    std::istringstream bad(text);
    try {
      read_dist_file(g, bad);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  const std::string rest = "1 2 point 1\n0 2 point 1\n2 0 point 1\n";
  CHECK(line_of("0 1 gamma 1 1\n" + rest) == 1);
  CHECK(line_of("0 1 lognormal 1 1 1\n" + rest) == 1);
  CHECK(line_of(rest + "0 1 nm 2 0.2 5 1 0.2 6 1 1\n") == 4);
  CHECK(line_of(rest + "0 1 point 0\n") == 4);
  CHECK(line_of(rest + "1 0 point 2\n") == 4);
  CHECK(line_of(rest + "0 1 point 2\n0 1 point 3\n") == 5);
  CHECK_THROWS(read_dist_file(g, *std::make_unique<std::istringstream>(rest)));
}

TEST_CASE("default time step") {
  std::vector<ArcDistSpec> specs{GammaSpec{1, 1, 3}};
  CHECK(default_step_seconds(specs) == 1.0);
  specs.push_back(NormalMixtureSpec{{{1.0, 600.0, 10.0}}, 1});
  CHECK(default_step_seconds(specs) == Approx(3.0));
}

TEST_CASE("stochastic graph weight views") {
  const Graph g = test::make_graph(3, {{0, 1}, {1, 2}});
  StochasticGraph sg(g, {DiscretePdf(2, {0.5, 0.0, 0.5}), DiscretePdf(1, {0.1, 0.9})});
  const auto ff = sg.weights(WeightView::FreeFlow);
  const auto mean = sg.weights(WeightView::Mean);
  const auto max = sg.weights(WeightView::Max);
  CHECK(ff[0] == 2);
  CHECK(mean[0] == 3);
  CHECK(max[0] == 4);
  CHECK(ff[1] == 1);
  CHECK(mean[1] == 2);
  CHECK(max[1] == 2);
  CHECK_THROWS(StochasticGraph(g, {DiscretePdf::point(1)}));

  const auto made = make_stochastic_graph(g, std::vector<ArcDistSpec>{PointSpec{4}, GammaSpec{2, 1, 3}});
  CHECK(made.pdf(0).at(4) == 1.0);
  CHECK(made.pdf(1).offset() == 3);
}
