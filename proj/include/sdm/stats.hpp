#pragma once

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace sdm {

class InsufficientRuns : public std::invalid_argument {
 public:
  InsufficientRuns() : std::invalid_argument("confidence intervals need at least two runs") {}
};

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;

  double lower() const noexcept { return mean - half_width; }
  double upper() const noexcept { return mean + half_width; }
};

// Normal-approximation interval: mean +- z * s / sqrt(n).
inline MeanCi mean_ci(std::span<const double> values, double level = 0.95) {
  if (values.size() < 2) throw InsufficientRuns();
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::normal_distribution<double> std_normal;
  const double z = boost::math::quantile(std_normal, 0.5 + level / 2.0);
  return {mean, z * sd / std::sqrt(n)};
}

// runs[r][c] -> interval per checkpoint c.
inline std::vector<MeanCi> aggregate_ci(std::span<const std::vector<double>> runs, double level = 0.95) {
  if (runs.size() < 2) throw InsufficientRuns();
  const std::size_t width = runs.front().size();
  std::vector<MeanCi> out(width);
  std::vector<double> column(runs.size());
  for (std::size_t c = 0; c < width; ++c) {
    for (std::size_t r = 0; r < runs.size(); ++r) column[r] = runs[r].at(c);
    out[c] = mean_ci(column, level);
  }
  return out;
}

}  // namespace sdm
