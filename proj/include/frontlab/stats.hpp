#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "frontlab/core.hpp"
#include "frontlab/rng.hpp"

namespace frontlab {

inline double mean(const std::vector<double>& v) {
  if (v.empty()) throw EstimationError("mean of an empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample standard deviation (n-1 in the denominator).
inline double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) throw EstimationError("standard deviation needs at least two samples");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw EstimationError("median of an empty sample");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw EstimationError("least squares needs two matched samples of size >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw EstimationError("degenerate abscissa in least squares");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

// Percentile of a sample (linear interpolation between order statistics).
inline double percentile(std::vector<double> v, double p) {
  if (v.empty()) throw EstimationError("percentile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  const double t = pos - static_cast<double>(i);
  return v[i] + t * (v[i + 1] - v[i]);
}

// Two-sample Kolmogorov-Smirnov test; returns true when the samples are
// indistinguishable at the given level (supported levels 0.01 and 0.05).
inline bool ks_two_sample_pass(std::vector<double> a, std::vector<double> b,
                               double level = 0.01) {
  if (a.size() < 5 || b.size() < 5) throw EstimationError("KS test needs >= 5 samples each");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  const double c = level <= 0.01 ? 1.628 : 1.358;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  return d <= c * std::sqrt((na + nb) / (na * nb));
}

}  // namespace frontlab
