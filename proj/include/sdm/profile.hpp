#pragma once

// A profile decides the joint choice vector of all agents for one slot.

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sdm/strategy.hpp"
#include "sdm/ucb.hpp"

namespace sdm {

class Profile {
 public:
  virtual ~Profile() = default;
  virtual void choose(Slot t, std::span<ArmId> out) = 0;
  virtual void observe(Slot t, std::span<const ArmId> choices, const RoundFeedback& fb) = 0;
  // broadcasts()[j] lists agent j's communicated arm per completed phase.
  virtual std::vector<std::vector<ArmId>> broadcasts() const { return {}; }
};

// Each agent runs its own strategy and sees only its own feedback.
class DecentralizedProfile final : public Profile {
 public:
  explicit DecentralizedProfile(std::vector<std::unique_ptr<Strategy>> agents)
      : agents_(std::move(agents)) {}

  DecentralizedProfile(const StrategyFactory& factory, std::size_t n_agents, std::size_t n_arms) {
    for (AgentId j = 0; j < n_agents; ++j) agents_.push_back(factory(j, n_agents, n_arms));
  }

  void choose(Slot t, std::span<ArmId> out) override {
    for (AgentId j = 0; j < agents_.size(); ++j) out[j] = agents_[j]->act(t);
  }

  void observe(Slot t, std::span<const ArmId> choices, const RoundFeedback& fb) override {
    for (AgentId j = 0; j < agents_.size(); ++j) agents_[j]->observe(t, choices[j], fb.agents[j]);
  }

  std::vector<std::vector<ArmId>> broadcasts() const override {
    std::vector<std::vector<ArmId>> out;
    for (const auto& a : agents_) {
      auto b = a->broadcasts();
      out.emplace_back(b.begin(), b.end());
    }
    return out;
  }

  Strategy& agent(AgentId j) { return *agents_[j]; }
  void replace(AgentId j, std::unique_ptr<Strategy> s) { agents_[j] = std::move(s); }

 private:
  std::vector<std::unique_ptr<Strategy>> agents_;
};

// Serial assignment given each agent's per-arm score; the arbiter's rule.
inline std::vector<ArmId> serial_assignment(const std::vector<std::vector<double>>& scores) {
  std::vector<ArmId> out;
  if (scores.empty()) return out;
  std::vector<bool> taken(scores.front().size(), false);
  for (const auto& row : scores) {
    ArmId best = row.size();
    for (ArmId k = 0; k < row.size(); ++k) {
      if (!taken[k] && (best == row.size() || row[k] > row[best])) best = k;
    }
    taken[best] = true;
    out.push_back(best);
  }
  return out;
}

// Central arbiter: every agent reports its UCB indices over all arms, and arms
// are handed out serially by rank, each agent taking its highest-index arm
// among those still free. No agent is ever blocked.
class CentralizedUcb final : public Profile {
 public:
  CentralizedUcb(std::size_t n_agents, std::size_t n_arms, double alpha = 2.0)
      : n_arms_(n_arms), alpha_(alpha), stats_(n_agents, std::vector<ArmStats>(n_arms)) {}

  void choose(Slot t, std::span<ArmId> out) override {
    std::vector<std::vector<double>> scores(stats_.size(), std::vector<double>(n_arms_));
    for (AgentId j = 0; j < stats_.size(); ++j) {
      for (ArmId k = 0; k < n_arms_; ++k) scores[j][k] = ucb_index(stats_[j][k], t, alpha_);
    }
    const auto assignment = serial_assignment(scores);
    std::copy(assignment.begin(), assignment.end(), out.begin());
  }

  void observe(Slot, std::span<const ArmId> choices, const RoundFeedback& fb) override {
    for (AgentId j = 0; j < stats_.size(); ++j) {
      if (fb.agents[j].matched) stats_[j][choices[j]].add(fb.agents[j].reward);
    }
  }

  std::span<const ArmStats> stats(AgentId j) const { return stats_[j]; }

 private:
  std::size_t n_arms_;
  double alpha_;
  std::vector<std::vector<ArmStats>> stats_;
};

}  // namespace sdm
