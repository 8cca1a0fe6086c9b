#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rbm::stats {

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> x);
double standard_error(std::span<const double> x);
/// Pearson correlation.
double correlation(std::span<const double> x, std::span<const double> y);

/// One-sample Kolmogorov-Smirnov distance sup |F_n - F|.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
/// Two-sample KS distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic 1% critical value 1.628 / sqrt(n).
double ks_critical_1pct(std::size_t n);
double ks_two_sample_critical_1pct(std::size_t n, std::size_t m);

struct Bin {
  double left;
  double right;
  std::size_t count;
};

/// Fixed-width bins starting at floor(min / width) * width.
std::vector<Bin> histogram(std::span<const double> values, double width);

/// Counts of phases in `arcs` equal arcs of [0, 2*pi).
std::vector<std::size_t> arc_counts(std::span<const double> phases, std::size_t arcs);

}  // namespace rbm::stats
