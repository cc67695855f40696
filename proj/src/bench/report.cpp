#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "sota/bench.hpp"

namespace sota {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(num) / static_cast<double>(den);
}

// Degenerate windows carry a single sample; spread it over the full grid.
double curve_at(const std::vector<double>& errors, std::size_t i) {
  return errors.size() == 1 ? errors.front() : errors.at(i);
}

void write_curve_header(std::ostream& out) {
  char buf[8];
  for (int i = 0; i < kErrorSamples; ++i) {
    std::snprintf(buf, sizeof buf, ",e%03d", i);
    out << buf;
  }
}

}  // namespace

std::vector<TechniqueSummary> summarize(std::span<const BenchRecord> records) {
  std::vector<TechniqueSummary> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : records) {
    auto [it, fresh] = slot.try_emplace(r.technique.name(), out.size());
    if (fresh) {
      out.emplace_back();
      out.back().technique = r.technique;
      out.back().curve.assign(kErrorSamples, 0.0);
    }
    auto& s = out[it->second];
    ++s.queries;
    s.nodes_pct += r.nodes_pct;
    s.order_ratio_classic_optimal += ratio(r.classic_order_len, r.optimal_order_len);
    s.order_ratio_pruned_classic += ratio(r.order_len, r.classic_order_len);
    s.conv_ratio_pruned_classic += ratio(r.convolutions, r.classic_convolutions);
    s.max_error += r.max_error;
    s.mean_error += r.mean_error;
    for (std::size_t i = 0; i < kErrorSamples; ++i) s.curve[i] += curve_at(r.errors, i);
  }
  for (auto& s : out) {
    const double k = static_cast<double>(s.queries);
    s.nodes_pct /= k;
    s.order_ratio_classic_optimal /= k;
    s.order_ratio_pruned_classic /= k;
    s.conv_ratio_pruned_classic /= k;
    s.max_error /= k;
    s.mean_error /= k;
    for (auto& c : s.curve) c /= k;
  }
  return out;
}

void write_records_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << "query,s,t,rank,budget,technique,nodes_pct,convolutions,order_len,classic_convolutions,"
         "classic_order_len,optimal_order_len,optimal_nodes_pct,optimal_error,order_ratio_classic_optimal,"
         "order_ratio_pruned_classic,conv_ratio_pruned_classic,window_lo,window_hi,max_error,mean_error,"
         "bf25,bf50,bf75,bf100";
  write_curve_header(out);
  out << '\n';
  for (const auto& r : records) {
    out << r.query << ',' << r.s << ',' << r.t << ',' << r.rank << ',' << r.budget << ',' << r.technique.name()
        << ',' << fmt(r.nodes_pct) << ',' << r.convolutions << ',' << r.order_len << ',' << r.classic_convolutions
        << ',' << r.classic_order_len << ',' << r.optimal_order_len << ',' << fmt(r.optimal_nodes_pct) << ','
        << fmt(r.optimal_error) << ',' << fmt(ratio(r.classic_order_len, r.optimal_order_len)) << ','
        << fmt(ratio(r.order_len, r.classic_order_len)) << ',' << fmt(ratio(r.convolutions, r.classic_convolutions))
        << ',' << r.window.lo << ',' << r.window.hi << ',' << fmt(r.max_error) << ',' << fmt(r.mean_error);
    for (const auto& bf : r.budget_factors) out << ',' << fmt(bf);
    for (std::size_t i = 0; i < kErrorSamples; ++i) out << ',' << fmt(curve_at(r.errors, i));
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const TechniqueSummary> summary) {
  out << "technique,queries,nodes_pct,order_ratio_classic_optimal,order_ratio_pruned_classic,"
         "conv_ratio_pruned_classic,max_error,mean_error";
  write_curve_header(out);
  out << '\n';
  for (const auto& s : summary) {
    out << s.technique.name() << ',' << s.queries << ',' << fmt(s.nodes_pct) << ','
        << fmt(s.order_ratio_classic_optimal) << ',' << fmt(s.order_ratio_pruned_classic) << ','
        << fmt(s.conv_ratio_pruned_classic) << ',' << fmt(s.max_error) << ',' << fmt(s.mean_error);
    for (double c : s.curve) out << ',' << fmt(c);
    out << '\n';
  }
}

void variance_export(std::ostream& out, const StochasticGraph& graph) {
  out << "arc,from,to,min,mean,max,variance\n";
  const Graph& g = graph.graph();
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const auto v = scalar_views(graph.pdf(a));
    out << a << ',' << g.from(a) << ',' << g.to(a) << ',' << v.min << ',' << fmt(v.mean) << ',' << v.max << ','
        << fmt(v.variance) << '\n';
  }
}

}  // namespace sota
