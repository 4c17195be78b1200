#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "sdm/environment.hpp"
#include "sdm/phase_layout.hpp"

namespace sdm {

// Slots must be played in order: act(t), observe(t, ...), act(t+1), ...
class ClockSkew : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A decentralized agent policy. Decisions may depend only on what the agent
// itself has observed.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual ArmId act(Slot t) = 0;
  virtual void observe(Slot t, ArmId arm, const AgentFeedback& feedback) = 0;

  // Arm broadcast in each completed phase, for protocols that have phases.
  virtual std::span<const ArmId> broadcasts() const { return {}; }

  virtual std::string name() const = 0;
};

// Builds the strategy run by the agent with the given index in an N x K market.
using StrategyFactory =
    std::function<std::unique_ptr<Strategy>(AgentId agent, std::size_t n_agents, std::size_t n_arms)>;

// Lockstep bookkeeping shared by the concrete strategies.
class SlotClock {
 public:
  void on_act(Slot t) {
    if (t != last_observed_ + 1 || pending_) {
      throw ClockSkew("act(" + std::to_string(t) + ") after slot " + std::to_string(last_observed_));
    }
    pending_ = true;
  }

  void on_observe(Slot t) {
    if (!pending_ || t != last_observed_ + 1) {
      throw ClockSkew("observe(" + std::to_string(t) + ") without a matching act");
    }
    pending_ = false;
    last_observed_ = t;
  }

  Slot last_observed() const noexcept { return last_observed_; }

 private:
  Slot last_observed_ = 0;
  bool pending_ = false;
};

}  // namespace sdm
