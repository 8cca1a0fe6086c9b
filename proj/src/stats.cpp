#include "rbm/stats.hpp"

#include "rbm/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rbm::stats {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_std(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double mu = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double standard_error(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  return sample_std(x) / std::sqrt(static_cast<double>(x.size()));
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("correlation needs matched samples");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  return 1.628 * std::sqrt((nd + md) / (nd * md));
}

std::vector<Bin> histogram(std::span<const double> values, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("histogram bin width must be positive");
  if (values.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double origin = std::floor(*lo_it / width) * width;
  const auto nbins = static_cast<std::size_t>(std::floor((*hi_it - origin) / width)) + 1;
  std::vector<Bin> bins(nbins);
  for (std::size_t b = 0; b < nbins; ++b) {
    bins[b] = {origin + static_cast<double>(b) * width, origin + static_cast<double>(b + 1) * width, 0};
  }
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::floor((v - origin) / width));
    bins[std::min(b, nbins - 1)].count += 1;
  }
  return bins;
}

std::vector<std::size_t> arc_counts(std::span<const double> phases, std::size_t arcs) {
  std::vector<std::size_t> counts(arcs, 0);
  const double width = kTwoPi / static_cast<double>(arcs);
  for (double p : phases) {
    auto a = static_cast<std::size_t>(std::floor(p / width));
    counts[std::min(a, arcs - 1)] += 1;
  }
  return counts;
}

}  // namespace rbm::stats
