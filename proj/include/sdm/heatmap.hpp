#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sdm/market.hpp"

namespace sdm {

// Communicated arm of every agent in every completed phase: [agent][phase].
using BroadcastLog = std::vector<std::vector<ArmId>>;

class Heatmap {
 public:
  Heatmap(std::size_t phases, std::size_t agents, std::size_t arms)
      : phases_(phases), agents_(agents), arms_(arms), counts_(phases * agents * arms, 0) {}

  // Zero-based phase, agent and arm.
  std::uint64_t& at(std::size_t phase, AgentId agent, ArmId arm) {
    return counts_[(phase * agents_ + agent) * arms_ + arm];
  }
  std::uint64_t at(std::size_t phase, AgentId agent, ArmId arm) const {
    return counts_[(phase * agents_ + agent) * arms_ + arm];
  }

  std::size_t phases() const noexcept { return phases_; }
  std::size_t agents() const noexcept { return agents_; }
  std::size_t arms() const noexcept { return arms_; }

 private:
  std::size_t phases_, agents_, arms_;
  std::vector<std::uint64_t> counts_;
};

// Number of runs in which each agent communicated each arm in each phase.
inline Heatmap heatmap_aggregate(std::span<const BroadcastLog> runs, std::size_t n_arms) {
  std::size_t phases = 0, agents = 0;
  for (const auto& run : runs) {
    agents = std::max(agents, run.size());
    for (const auto& per_agent : run) phases = std::max(phases, per_agent.size());
  }
  Heatmap h(phases, agents, n_arms);
  for (const auto& run : runs) {
    for (AgentId j = 0; j < run.size(); ++j) {
      for (std::size_t i = 0; i < run[j].size(); ++i) ++h.at(i, j, run[j][i]);
    }
  }
  return h;
}

// First phase (1-based) from which the agent communicates its stable partner
// in every later recorded phase; empty if the last recorded phase is wrong or
// nothing was recorded.
inline std::vector<std::optional<std::size_t>> freeze_phase(const BroadcastLog& run, const StableMatch& sm) {
  std::vector<std::optional<std::size_t>> tau(run.size());
  for (AgentId j = 0; j < run.size(); ++j) {
    const auto& seq = run[j];
    std::size_t i = seq.size();
    while (i > 0 && seq[i - 1] == sm.partner[j]) --i;
    if (i < seq.size()) tau[j] = i + 1;
  }
  return tau;
}

}  // namespace sdm
