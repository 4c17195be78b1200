#pragma once

// Paired-run estimate of what one agent gains by unilaterally switching
// strategy while everyone else keeps the baseline profile. Both halves of a
// pair share the reward seed, so the comparison uses common random numbers.

#include <cstdint>
#include <vector>

#include "sdm/parallel.hpp"
#include "sdm/profile.hpp"
#include "sdm/rng.hpp"
#include "sdm/simulation.hpp"
#include "sdm/stats.hpp"

namespace sdm {

struct DeviationResult {
  std::vector<double> gains;                 // per run, pseudo-reward difference
  MeanCi gain;                               // over runs
  std::vector<double> baseline_mean_regret;  // per agent, baseline profile
  std::vector<double> deviant_mean_regret;   // per agent, deviated profile
};

inline DeviationResult deviation_harness(const Instance& inst, const StrategyFactory& baseline,
                                         AgentId deviant, const StrategyFactory& deviant_strategy,
                                         Slot horizon, std::size_t runs, std::uint64_t seed,
                                         std::size_t jobs = 1, double level = 0.95) {
  const auto n = inst.n_agents();
  const auto k = inst.n_arms();
  std::vector<std::vector<double>> base(runs), dev(runs);
  parallel_for(runs, jobs, [&](std::size_t r) {
    const auto run_seed = derive_seed(seed, r);
    DecentralizedProfile p0(baseline, n, k);
    base[r] = simulate(inst, p0, horizon, run_seed, {}).final_regret;
    DecentralizedProfile p1(baseline, n, k);
    p1.replace(deviant, deviant_strategy(deviant, n, k));
    dev[r] = simulate(inst, p1, horizon, run_seed, {}).final_regret;
  });

  DeviationResult res;
  res.baseline_mean_regret.assign(n, 0.0);
  res.deviant_mean_regret.assign(n, 0.0);
  for (std::size_t r = 0; r < runs; ++r) {
    // Pseudo-reward is mu*T - regret, so the reward gain is the regret drop.
    res.gains.push_back(base[r][deviant] - dev[r][deviant]);
    for (AgentId j = 0; j < n; ++j) {
      res.baseline_mean_regret[j] += base[r][j] / static_cast<double>(runs);
      res.deviant_mean_regret[j] += dev[r][j] / static_cast<double>(runs);
    }
  }
  if (runs >= 2) {
    res.gain = mean_ci(res.gains, level);
  } else if (runs == 1) {
    res.gain = {res.gains.front(), 0.0};
  }
  return res;
}

}  // namespace sdm
