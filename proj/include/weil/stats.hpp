#pragma once

// Reference law for |trace| of a Haar-random SU(2) matrix and the sample
// statistics compared against it.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace weil::stats {

/// P(|2 cos theta| <= s) for theta with density (2/pi) sin^2 theta on [0, pi].
double su2_abs_trace_cdf(double s);

/// E |2 cos theta|^k, by composite Simpson quadrature over theta.
double su2_abs_trace_moment(int k, int intervals = 20000);

/// sup_x |F_n(x) - F(x)| for the empirical CDF of `samples`.
template <typename Cdf>
double ks_distance(std::vector<double> samples, Cdf cdf);

/// Raw moments E|X|^k for k = 1..4.
std::array<double, 4> raw_moments(std::span<const double> samples);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::int64_t> counts;  // values outside [lo, hi) go to the end bins
  std::int64_t total() const;
};
Histogram histogram(std::span<const double> samples, double lo, double hi, int bins);

}  // namespace weil::stats

#include <algorithm>
#include <cmath>

template <typename Cdf>
double weil::stats::ks_distance(std::vector<double> samples, Cdf cdf) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}
