#pragma once

// Pseudo-regret against the stable matching, computed from true means:
//   R_t^(j) = sum_{s<=t} mu[j][k*_j] - mu[j][I_j(s)] * 1{matched at s}.
// Blocked rounds contribute mu[j][k*_j] and are tracked separately as
// collision regret.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "sdm/environment.hpp"
#include "sdm/market.hpp"
#include "sdm/phase_layout.hpp"

namespace sdm {

struct MetricSeries {
  std::vector<Slot> checkpoints;
  // [agent][checkpoint]
  std::vector<std::vector<double>> cum_regret;
  std::vector<std::vector<double>> collision_regret;
  std::vector<std::vector<std::uint64_t>> blocked;
};

// One slot of a recorded trace.
struct TraceStep {
  std::vector<ArmId> choices;
  std::vector<bool> matched;
};

class RegretAccumulator {
 public:
  RegretAccumulator(const Instance& inst, const StableMatch& sm, std::vector<Slot> checkpoints)
      : inst_(&inst), sm_(&sm) {
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    series_.checkpoints = std::move(checkpoints);
    const auto n = inst.n_agents();
    regret_.assign(n, 0.0);
    collision_.assign(n, 0.0);
    blocked_.assign(n, 0);
    series_.cum_regret.assign(n, {});
    series_.collision_regret.assign(n, {});
    series_.blocked.assign(n, {});
  }

  // Records slot t; slots must arrive in increasing order.
  void add(Slot t, std::span<const ArmId> choices, std::span<const AgentFeedback> fb) {
    for (AgentId j = 0; j < regret_.size(); ++j) {
      const double opt = inst_->mean(j, sm_->partner[j]);
      if (fb[j].matched) {
        regret_[j] += opt - inst_->mean(j, choices[j]);
      } else {
        regret_[j] += opt;
        collision_[j] += opt;
        ++blocked_[j];
      }
    }
    while (next_ < series_.checkpoints.size() && series_.checkpoints[next_] == t) {
      for (AgentId j = 0; j < regret_.size(); ++j) {
        series_.cum_regret[j].push_back(regret_[j]);
        series_.collision_regret[j].push_back(collision_[j]);
        series_.blocked[j].push_back(blocked_[j]);
      }
      ++next_;
    }
  }

  const MetricSeries& series() const noexcept { return series_; }
  std::span<const double> regret() const noexcept { return regret_; }
  std::span<const double> collision_regret() const noexcept { return collision_; }
  std::span<const std::uint64_t> blocked() const noexcept { return blocked_; }

 private:
  const Instance* inst_;
  const StableMatch* sm_;
  MetricSeries series_;
  std::size_t next_ = 0;
  std::vector<double> regret_;
  std::vector<double> collision_;
  std::vector<std::uint64_t> blocked_;
};

// Regret series evaluated from a full trace (slot t = index + 1).
inline MetricSeries regret_series(std::span<const TraceStep> trace, const Instance& inst,
                                  const StableMatch& sm, std::vector<Slot> checkpoints) {
  RegretAccumulator acc(inst, sm, std::move(checkpoints));
  std::vector<AgentFeedback> fb(inst.n_agents());
  for (std::size_t s = 0; s < trace.size(); ++s) {
    for (AgentId j = 0; j < fb.size(); ++j) fb[j].matched = trace[s].matched[j];
    acc.add(s + 1, trace[s].choices, fb);
  }
  return acc.series();
}

}  // namespace sdm
