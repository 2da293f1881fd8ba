#include "weil/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weil::stats {

double su2_abs_trace_cdf(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 2.0) return 1.0;
  // Twice the semicircle mass on [0, s].
  return (s * std::sqrt(4.0 - s * s) / 2.0 + 2.0 * std::asin(s / 2.0)) / std::numbers::pi;
}

double su2_abs_trace_moment(int k, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = std::numbers::pi / intervals;
  auto f = [k](double t) {
    return std::pow(std::abs(2.0 * std::cos(t)), k) * (2.0 / std::numbers::pi) * std::sin(t) * std::sin(t);
  };
  double s = f(0.0) + f(std::numbers::pi);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

std::array<double, 4> raw_moments(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("moments of an empty sample");
  std::array<double, 4> m{};
  for (double x : samples) {
    const double a = std::abs(x);
    double pw = 1.0;
    for (auto& mk : m) {
      pw *= a;
      mk += pw;
    }
  }
  for (auto& mk : m) mk /= static_cast<double>(samples.size());
  return m;
}

std::int64_t Histogram::total() const {
  std::int64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

Histogram histogram(std::span<const double> samples, double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("bad histogram range");
  Histogram h{lo, hi, std::vector<std::int64_t>(static_cast<std::size_t>(bins), 0)};
  for (double x : samples) {
    auto b = static_cast<std::int64_t>(std::floor((x - lo) / (hi - lo) * bins));
    b = std::clamp<std::int64_t>(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

}  // namespace weil::stats
