#pragma once

#include <cstdint>
#include <vector>

#include "sdm/environment.hpp"
#include "sdm/profile.hpp"
#include "sdm/regret.hpp"

namespace sdm {

struct RunOptions {
  bool record_trace = false;
};

struct RunRecord {
  MetricSeries series;
  std::vector<double> final_regret;            // per agent, at the horizon
  std::vector<double> final_collision_regret;  // per agent
  std::vector<std::uint64_t> final_blocked;    // per agent
  std::vector<std::vector<ArmId>> broadcasts;  // [agent][phase]
  std::vector<TraceStep> trace;                // only with record_trace
};

// Runs `profile` for slots 1..horizon on a fresh environment seeded with
// run_seed. Checkpoints beyond the horizon are dropped.
inline RunRecord simulate(const Instance& inst, Profile& profile, Slot horizon, std::uint64_t run_seed,
                          std::vector<Slot> checkpoints, RunOptions opts = {}) {
  std::erase_if(checkpoints, [&](Slot c) { return c == 0 || c > horizon; });
  const StableMatch sm = stable_match(inst);
  Environment env(inst, run_seed);
  RegretAccumulator acc(inst, sm, std::move(checkpoints));
  RunRecord rec;
  ChoiceVector choices(inst.n_agents());
  for (Slot t = 1; t <= horizon; ++t) {
    profile.choose(t, choices);
    const auto fb = env.step(choices);
    profile.observe(t, choices, fb);
    acc.add(t, choices, fb.agents);
    if (opts.record_trace) {
      TraceStep step{choices, std::vector<bool>(choices.size())};
      for (AgentId j = 0; j < choices.size(); ++j) step.matched[j] = fb.agents[j].matched;
      rec.trace.push_back(std::move(step));
    }
  }
  rec.series = acc.series();
  rec.final_regret.assign(acc.regret().begin(), acc.regret().end());
  rec.final_collision_regret.assign(acc.collision_regret().begin(), acc.collision_regret().end());
  rec.final_blocked.assign(acc.blocked().begin(), acc.blocked().end());
  rec.broadcasts = profile.broadcasts();
  return rec;
}

}  // namespace sdm
