#pragma once

// Comparison policies: independent UCB that treats blocking as a zero reward,
// decentralized explore-then-commit, and a greedy defector for deviation
// experiments.

#include <memory>
#include <string>
#include <vector>

#include "sdm/strategy.hpp"
#include "sdm/ucb.hpp"
#include "sdm/ucbd3.hpp"

namespace sdm {

class NaiveUcbAgent final : public Strategy {
 public:
  NaiveUcbAgent(std::size_t n_arms, double alpha = 2.0)
      : alpha_(alpha), stats_(n_arms), arms_(all_arms(n_arms)) {}

  ArmId act(Slot t) override {
    clock_.on_act(t);
    return ucb_argmax(stats_, arms_, t, alpha_);
  }

  void observe(Slot t, ArmId arm, const AgentFeedback& fb) override {
    clock_.on_observe(t);
    stats_[arm].add(fb.matched ? fb.reward : 0.0);
  }

  std::string name() const override { return "naive_ucb"; }
  std::span<const ArmStats> stats() const noexcept { return stats_; }

 private:
  double alpha_;
  SlotClock clock_;
  std::vector<ArmStats> stats_;
  std::vector<ArmId> arms_;
};

// Explore-then-commit. After rank estimation, agent ranked r explores for K*H
// slots playing arm (t + r) mod K, which keeps agents on distinct arms when
// K >= N. It then broadcasts its empirical best arm in one communication block
// and commits to the empirical best arm among those not claimed above it.
class EtcAgent final : public Strategy {
 public:
  EtcAgent(std::size_t n_agents, std::size_t n_arms, std::uint64_t horizon_h)
      : n_agents_(n_agents),
        n_arms_(n_arms),
        h_(horizon_h),
        ranker_(n_agents),
        stats_(n_arms),
        explore_end_(n_agents + n_arms * horizon_h),
        comm_end_(explore_end_ + (n_agents - 1) * n_arms) {
    if (horizon_h == 0) throw std::invalid_argument("ETC needs H >= 1");
  }

  ArmId act(Slot t) override {
    clock_.on_act(t);
    if (t < n_agents_) return ranker_.action(t);
    if (t < explore_end_) return static_cast<ArmId>((t + rank()) % n_arms_);
    if (t < comm_end_) return comm_action(rank(), t - explore_end_, n_arms_, estimate_);
    return commit_;
  }

  void observe(Slot t, ArmId arm, const AgentFeedback& fb) override {
    clock_.on_observe(t);
    if (t < n_agents_) {
      ranker_.update(t, fb.matched);
    } else if (t < explore_end_) {
      if (fb.matched) stats_[arm].add(fb.reward);
      if (t + 1 == explore_end_) {
        estimate_ = empirical_argmax(stats_, all_arms(n_arms_));
        broadcasts_.push_back(estimate_);
      }
    } else if (t < comm_end_) {
      const auto off = t - explore_end_;
      if (!fb.matched && in_own_subblock(rank(), off, n_arms_)) blocked_.push_back(off % n_arms_);
    }
    if (t + 1 == comm_end_) {
      dominated_ = comm_decode(blocked_, n_arms_);
      auto allowed = update_active_set(n_arms_, dominated_);
      if (allowed.empty()) allowed = all_arms(n_arms_);
      commit_ = empirical_argmax(stats_, allowed);
    }
  }

  std::span<const ArmId> broadcasts() const override { return broadcasts_; }
  std::string name() const override { return "etc"; }

  std::size_t rank() const noexcept { return ranker_.rank(); }
  std::uint64_t exploration_length() const noexcept { return n_arms_ * h_; }
  ArmId committed_arm() const noexcept { return commit_; }
  std::span<const ArmStats> stats() const noexcept { return stats_; }

 private:
  std::size_t n_agents_;
  std::size_t n_arms_;
  std::uint64_t h_;
  SlotClock clock_;
  RankEstimator ranker_;
  std::vector<ArmStats> stats_;
  Slot explore_end_;
  Slot comm_end_;
  ArmId estimate_ = 0;
  ArmId commit_ = 0;
  std::vector<std::uint64_t> blocked_;
  std::vector<ArmId> dominated_;
  std::vector<ArmId> broadcasts_;
};

// Plays every arm once in index order, then the arm with the highest realized
// empirical mean (blocked rounds count as reward 0).
class GreedyAgent final : public Strategy {
 public:
  explicit GreedyAgent(std::size_t n_arms) : stats_(n_arms), arms_(all_arms(n_arms)) {}

  ArmId act(Slot t) override {
    clock_.on_act(t);
    if (t <= arms_.size()) return static_cast<ArmId>(t - 1);
    return empirical_argmax(stats_, arms_);
  }

  void observe(Slot t, ArmId arm, const AgentFeedback& fb) override {
    clock_.on_observe(t);
    stats_[arm].add(fb.matched ? fb.reward : 0.0);
  }

  std::string name() const override { return "greedy"; }

 private:
  SlotClock clock_;
  std::vector<ArmStats> stats_;
  std::vector<ArmId> arms_;
};

inline StrategyFactory naive_ucb_factory(double alpha = 2.0) {
  return [alpha](AgentId, std::size_t, std::size_t k) { return std::make_unique<NaiveUcbAgent>(k, alpha); };
}

inline StrategyFactory etc_factory(std::uint64_t h) {
  return [h](AgentId, std::size_t n, std::size_t k) { return std::make_unique<EtcAgent>(n, k, h); };
}

inline StrategyFactory greedy_factory() {
  return [](AgentId, std::size_t, std::size_t k) { return std::make_unique<GreedyAgent>(k); };
}

// Exploration length used for ETC in the published experiment families.
inline std::uint64_t default_etc_h(std::size_t n_agents, std::size_t n_arms, bool osb) {
  if (n_agents == 5 && n_arms == 7) return 801;
  if (n_agents == 10 && n_arms == 10) return 1117;
  if (n_agents == 10 && n_arms == 15) return osb ? 805 : 1610;
  return 801;
}

}  // namespace sdm
