#pragma once

// One simultaneous round of the market. Every arm accepts the highest-ranked
// (lowest index) agent proposing to it; everyone else proposing there is
// blocked, told so, and receives reward 0.

#include <optional>
#include <span>
#include <vector>

#include "sdm/market.hpp"
#include "sdm/rng.hpp"

namespace sdm {

using ChoiceVector = std::vector<ArmId>;

// What a single agent observes after a round.
struct AgentFeedback {
  bool matched = false;
  double reward = 0.0;
};

struct RoundFeedback {
  std::vector<AgentFeedback> agents;
  std::vector<std::optional<AgentId>> winner;  // per arm
};

inline std::vector<std::optional<AgentId>> match_outcome(std::span<const ArmId> choices,
                                                         std::size_t n_arms) {
  std::vector<std::optional<AgentId>> winner(n_arms);
  for (AgentId j = 0; j < choices.size(); ++j) {
    auto& w = winner.at(choices[j]);
    if (!w) w = j;
  }
  return winner;
}

class Environment {
 public:
  Environment(Instance inst, std::uint64_t run_seed)
      : inst_(std::move(inst)), streams_(run_seed, inst_.n_agents(), inst_.n_arms()) {}

  const Instance& instance() const noexcept { return inst_; }

  RoundFeedback step(std::span<const ArmId> choices) {
    RoundFeedback fb;
    fb.winner = match_outcome(choices, inst_.n_arms());
    fb.agents.resize(choices.size());
    for (AgentId j = 0; j < choices.size(); ++j) {
      const ArmId k = choices[j];
      if (fb.winner[k] == j) {
        fb.agents[j] = {true, streams_.draw(j, k, inst_.mean(j, k))};
      }
    }
    return fb;
  }

 private:
  Instance inst_;
  RewardStreams streams_;
};

}  // namespace sdm
