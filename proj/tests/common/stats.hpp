#pragma once

// Small statistics helpers shared by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace testutil {

struct ChiSquare {
  double statistic = 0.0;
  double critical = 0.0;
  std::size_t cells = 0;
};

// Pearson goodness of fit. Adjacent cells are pooled until every pooled
// cell expects at least 5 observations.
inline ChiSquare chi_square(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs,
                            std::uint64_t samples, double alpha) {
  std::vector<double> exp_cells;
  std::vector<double> obs_cells;
  double e = 0.0;
  double o = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    e += probs[i] * static_cast<double>(samples);
    o += static_cast<double>(observed[i]);
    if (e >= 5.0) {
      exp_cells.push_back(e);
      obs_cells.push_back(o);
      e = o = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp_cells.empty()) {
      exp_cells.push_back(e);
      obs_cells.push_back(o);
    } else {
      exp_cells.back() += e;
      obs_cells.back() += o;
    }
  }
  ChiSquare r;
  r.cells = exp_cells.size();
  for (std::size_t i = 0; i < exp_cells.size(); ++i) {
    const double d = obs_cells[i] - exp_cells[i];
    r.statistic += d * d / exp_cells[i];
  }
  if (r.cells < 2) {
    r.critical = INFINITY;
    return r;
  }
  boost::math::chi_squared dist(static_cast<double>(r.cells - 1));
  r.critical = boost::math::quantile(boost::math::complement(dist, alpha));
  return r;
}

struct Moments {
  double n = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double x) {
    n += 1.0;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return sum / n; }
  double variance() const { return (sum_sq - sum * sum / n) / (n - 1.0); }
  double stderr_of_mean() const { return std::sqrt(variance() / n); }
};

}  // namespace testutil
