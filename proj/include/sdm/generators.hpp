#pragma once

// Instance generators for the experiment families. Every generator is a pure
// function of its parameters and seed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "sdm/market.hpp"

namespace sdm {

struct OsbOptions {
  double opt_mean = 0.9;
  double sub_low = 0.0;
  double sub_high = 0.8;
};

// Plants a uniformly random injection sigma: agents -> arms with mean
// opt_mean; every other entry is uniform on the sub-optimal range. Returns the
// instance together with sigma.
inline std::pair<Instance, std::vector<ArmId>> gen_osb_planted(std::size_t n_agents,
                                                                std::size_t n_arms,
                                                                std::uint64_t seed,
                                                                OsbOptions opts = {}) {
  if (n_agents == 0 || n_arms < n_agents) {
    throw InstanceError(InstanceError::Kind::Shape, "gen_osb needs K >= N >= 1");
  }
  if (!(opts.sub_high < opts.opt_mean) || opts.sub_low < 0.0 || !(opts.opt_mean < 1.0)) {
    throw std::invalid_argument("gen_osb: sub-optimal range must lie below opt_mean in [0,1)");
  }
  std::mt19937_64 rng(seed);
  std::vector<ArmId> arms(n_arms);
  std::iota(arms.begin(), arms.end(), ArmId{0});
  std::shuffle(arms.begin(), arms.end(), rng);
  std::vector<ArmId> sigma(arms.begin(), arms.begin() + static_cast<std::ptrdiff_t>(n_agents));

  std::uniform_real_distribution<double> sub(opts.sub_low, opts.sub_high);
  std::vector<std::vector<double>> rows(n_agents, std::vector<double>(n_arms));
  for (AgentId j = 0; j < n_agents; ++j) {
    std::set<double> used{opts.opt_mean};
    for (ArmId k = 0; k < n_arms; ++k) {
      if (k == sigma[j]) {
        rows[j][k] = opts.opt_mean;
        continue;
      }
      double v;
      do {
        v = sub(rng);
      } while (v <= 0.0 || used.contains(v));
      used.insert(v);
      rows[j][k] = v;
    }
  }
  return {validate_instance(std::move(rows)), std::move(sigma)};
}

inline Instance gen_osb(std::size_t n_agents, std::size_t n_arms, std::uint64_t seed,
                        OsbOptions opts = {}) {
  return gen_osb_planted(n_agents, n_arms, seed, opts).first;
}

// Each agent ranks the arms by an independent random permutation; means are the
// equally spaced grid 0.1, ..., 0.9 assigned in permutation order.
inline Instance gen_spaced(std::size_t n_agents, std::size_t n_arms, std::uint64_t seed) {
  if (n_arms < 2 || n_agents == 0 || n_arms < n_agents) {
    throw InstanceError(InstanceError::Kind::Shape, "gen_spaced needs K >= max(N, 2), N >= 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> rows(n_agents, std::vector<double>(n_arms));
  for (AgentId j = 0; j < n_agents; ++j) {
    std::vector<ArmId> order(n_arms);
    std::iota(order.begin(), order.end(), ArmId{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t r = 0; r < n_arms; ++r) {
      rows[j][order[r]] = 0.1 + static_cast<double>(r) * 0.8 / static_cast<double>(n_arms - 1);
    }
  }
  return validate_instance(std::move(rows));
}

// Offset separating otherwise-equal "all other arms" entries so rows stay
// distinct. The first such arm gets the nominal value exactly.
inline constexpr double kHardInstanceTieBreak = 1e-4;

// Lower-bound instance for the agent ranked j_target (1-based): agents ranked
// above it prefer arm j' at 1/2 with every other arm near 1/2 - delta; the
// target has 1/2 on its own arm and about 1/4 elsewhere; lower agents get
// filler means in (0.01, 0.24) with their maximum on their own arm.
inline Instance gen_hard_lb(std::size_t j_target, std::size_t n_agents, std::size_t n_arms,
                            double delta, std::uint64_t seed = 0) {
  if (j_target < 2 || j_target > n_agents || n_agents > n_arms) {
    throw InstanceError(InstanceError::Kind::Shape, "gen_hard_lb needs 2 <= j <= N <= K");
  }
  if (!(delta > 0.0 && delta < 0.25)) {
    throw std::invalid_argument("gen_hard_lb needs 0 < delta < 1/4");
  }
  std::vector<std::vector<double>> rows(n_agents, std::vector<double>(n_arms));
  for (AgentId j = 0; j < j_target; ++j) {
    const bool target = (j + 1 == j_target);
    const double other = target ? 0.25 : 0.5 - delta;
    std::size_t m = 0;
    for (ArmId k = 0; k < n_arms; ++k) {
      rows[j][k] = (k == j) ? 0.5 : other - kHardInstanceTieBreak * static_cast<double>(m++);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> filler(0.01, 0.24);
  for (AgentId j = j_target; j < n_agents; ++j) {
    std::set<double> used;
    for (ArmId k = 0; k < n_arms; ++k) {
      double v;
      do {
        v = filler(rng);
      } while (used.contains(v));
      used.insert(v);
      rows[j][k] = v;
    }
    auto top = std::max_element(rows[j].begin(), rows[j].end());
    std::iter_swap(top, rows[j].begin() + static_cast<std::ptrdiff_t>(j));
  }
  return validate_instance(std::move(rows));
}

}  // namespace sdm
