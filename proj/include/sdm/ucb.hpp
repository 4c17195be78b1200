#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "sdm/market.hpp"

namespace sdm {

struct ArmStats {
  std::uint64_t count = 0;
  double reward_sum = 0.0;

  double mean() const noexcept { return reward_sum / static_cast<double>(count); }

  void add(double reward) noexcept {
    ++count;
    reward_sum += reward;
  }
};

// UCB-alpha index; an arm that was never sampled has index +infinity.
inline double ucb_index(double mu_hat, std::uint64_t n_matches, std::uint64_t t, double alpha) {
  if (n_matches == 0) return std::numeric_limits<double>::infinity();
  return mu_hat + std::sqrt(2.0 * alpha * std::log(static_cast<double>(t)) /
                            static_cast<double>(n_matches));
}

inline double ucb_index(const ArmStats& s, std::uint64_t t, double alpha) {
  return s.count == 0 ? ucb_index(0.0, 0, t, alpha) : ucb_index(s.mean(), s.count, t, alpha);
}

// Arm with the largest index among candidates (ascending); lowest arm wins ties.
inline ArmId ucb_argmax(std::span<const ArmStats> stats, std::span<const ArmId> candidates,
                        std::uint64_t t, double alpha) {
  ArmId best = candidates.front();
  double best_index = ucb_index(stats[best], t, alpha);
  for (ArmId k : candidates.subspan(1)) {
    const double idx = ucb_index(stats[k], t, alpha);
    if (idx > best_index) {
      best = k;
      best_index = idx;
    }
  }
  return best;
}

// Candidates need not be sorted; ties go to the lowest arm index.
inline ArmId empirical_argmax(std::span<const ArmStats> stats, std::span<const ArmId> candidates) {
  ArmId best = candidates.front();
  auto value = [&](ArmId k) { return stats[k].count == 0 ? -1.0 : stats[k].mean(); };
  for (ArmId k : candidates.subspan(1)) {
    const double v = value(k);
    if (v > value(best) || (v == value(best) && k < best)) best = k;
  }
  return best;
}

inline std::vector<ArmId> all_arms(std::size_t n_arms) {
  std::vector<ArmId> arms(n_arms);
  for (ArmId k = 0; k < n_arms; ++k) arms[k] = k;
  return arms;
}

}  // namespace sdm
