#pragma once

// UCB with decentralized dominated-arm deletion: per-agent state machine.
//
// Slots 1..N-1 estimate the agent's rank from the first slot in which it is
// matched. Each phase then runs UCB over the active set for 2^(i-1) slots,
// picks the arm matched most often in that block as the agent's estimate of its
// stable partner, and broadcasts it through collisions: in sub-block l the
// agent ranked l+1 sweeps all K arms while every other agent sits on its own
// estimate, so the sweeping agent is blocked exactly on the estimates of the
// agents above it. Those arms are deleted for the next phase only.

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sdm/phase_layout.hpp"
#include "sdm/strategy.hpp"
#include "sdm/ucb.hpp"

namespace sdm {

class RankEstimator {
 public:
  explicit RankEstimator(std::size_t n_agents) : rank_(n_agents) {}

  // Arm played in slot t of the estimation window (1 <= t <= N-1).
  ArmId action(Slot t) const { return (t == 1 || !found_) ? t - 1 : rank_ - 1; }

  void update(Slot t, bool matched) {
    if (!found_ && matched) {
      rank_ = t;
      found_ = true;
    }
  }

  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
  bool found_ = false;
};

// Most matched arm in the phase's RM block; lowest index on ties, lowest
// active arm when nothing was matched.
inline ArmId most_matched(std::span<const std::uint64_t> phase_counts, std::span<const ArmId> active) {
  ArmId best = active.front();
  for (ArmId k : active) {
    if (phase_counts[k] > phase_counts[best] || (phase_counts[k] == phase_counts[best] && k < best)) {
      best = k;
    }
  }
  return best;
}

// Arm played at position `slot` of a communication block by the agent with
// the given rank (1-based) whose current estimate is `estimate`.
inline ArmId comm_action(std::size_t rank, std::uint64_t slot, std::size_t n_arms, ArmId estimate) {
  const std::uint64_t subblock = slot / n_arms + 1;
  if (rank == subblock + 1) return static_cast<ArmId>(slot % n_arms);
  return estimate;
}

inline bool in_own_subblock(std::size_t rank, std::uint64_t slot, std::size_t n_arms) {
  return rank >= 2 && slot / n_arms + 1 == rank - 1;
}

// Arms detected as dominated: those swept while blocked in the agent's own
// sub-block. `blocked_offsets` are positions inside that sub-block.
inline std::vector<ArmId> comm_decode(std::span<const std::uint64_t> blocked_offsets, std::size_t n_arms) {
  std::set<ArmId> arms;
  for (auto off : blocked_offsets) arms.insert(static_cast<ArmId>(off % n_arms));
  return {arms.begin(), arms.end()};
}

inline std::vector<ArmId> update_active_set(std::size_t n_arms, std::span<const ArmId> dominated) {
  std::vector<ArmId> active;
  for (ArmId k = 0; k < n_arms; ++k) {
    if (std::find(dominated.begin(), dominated.end(), k) == dominated.end()) active.push_back(k);
  }
  return active;
}

struct UcbD3Config {
  double alpha = 2.0;
  // Feed matches from rank-estimation and communication slots into the UCB
  // statistics as well.
  bool learn_outside_rm = true;
};

class UcbD3Agent final : public Strategy {
 public:
  UcbD3Agent(std::size_t n_agents, std::size_t n_arms, UcbD3Config cfg = {})
      : n_agents_(n_agents),
        n_arms_(n_arms),
        cfg_(cfg),
        ranker_(n_agents),
        stats_(n_arms),
        phase_counts_(n_arms, 0),
        active_(all_arms(n_arms)) {
    if (n_agents == 0 || n_arms < n_agents) throw std::invalid_argument("UcbD3Agent needs K >= N >= 1");
    if (cfg.alpha < 2.0) throw std::invalid_argument("UcbD3Agent needs alpha >= 2");
  }

  ArmId act(Slot t) override {
    clock_.on_act(t);
    const auto where = locate(t);
    switch (where.block) {
      case SlotInfo::Block::Rank:
        return ranker_.action(t);
      case SlotInfo::Block::Rm:
        return rm_select(t);
      case SlotInfo::Block::Comm:
        return comm_action(rank(), where.offset, n_arms_, estimate_);
    }
    return 0;
  }

  void observe(Slot t, ArmId arm, const AgentFeedback& fb) override {
    clock_.on_observe(t);
    const auto where = locate(t);
    const bool in_rm = where.block == SlotInfo::Block::Rm;

    if (fb.matched) {
      ++matched_total_;
      if (in_rm || cfg_.learn_outside_rm) stats_[arm].add(fb.reward);
      if (in_rm) ++phase_counts_[arm];
    } else {
      ++blocked_total_;
    }

    if (where.block == SlotInfo::Block::Rank) {
      ranker_.update(t, fb.matched);
      return;
    }
    if (where.block == SlotInfo::Block::Comm && !fb.matched &&
        in_own_subblock(rank(), where.offset, n_arms_)) {
      blocked_offsets_.push_back(where.offset % n_arms_);
    }

    const auto& lay = layout_;
    if (in_rm && t + 1 == lay.rm_end()) {
      estimate_ = most_matched(phase_counts_, active_);
      broadcasts_.push_back(estimate_);
    }
    if (t + 1 == lay.comm_end()) end_phase();
  }

  std::span<const ArmId> broadcasts() const override { return broadcasts_; }
  std::string name() const override { return "ucb_d3"; }

  std::size_t rank() const noexcept { return ranker_.rank(); }
  const std::vector<ArmId>& active_set() const noexcept { return active_; }
  const std::vector<ArmId>& detected_dominated() const noexcept { return dominated_; }
  std::span<const ArmStats> stats() const noexcept { return stats_; }
  std::span<const std::uint64_t> phase_match_counts() const noexcept { return phase_counts_; }
  std::uint64_t matched_total() const noexcept { return matched_total_; }
  std::uint64_t blocked_total() const noexcept { return blocked_total_; }

  ArmId rm_select(Slot t) const { return ucb_argmax(stats_, active_, t, cfg_.alpha); }

 private:
  SlotInfo locate(Slot t) {
    // Advance the cached layout instead of rescanning from phase 1.
    if (t < n_agents_) return {SlotInfo::Block::Rank, 0, t - 1};
    while (layout_.phase == 0 || t >= layout_.next_start()) {
      layout_ = phase_layout(layout_.phase + 1, n_agents_, n_arms_);
    }
    if (t < layout_.rm_end()) return {SlotInfo::Block::Rm, layout_.phase, t - layout_.start};
    return {SlotInfo::Block::Comm, layout_.phase, t - layout_.comm_begin()};
  }

  void end_phase() {
    dominated_ = comm_decode(blocked_offsets_, n_arms_);
    active_ = update_active_set(n_arms_, dominated_);
    // Only reachable when another agent breaks protocol (e.g. a deviant that
    // corrupts rank estimation); fall back to every arm.
    if (active_.empty()) active_ = all_arms(n_arms_);
    blocked_offsets_.clear();
    std::fill(phase_counts_.begin(), phase_counts_.end(), 0);
  }

  std::size_t n_agents_;
  std::size_t n_arms_;
  UcbD3Config cfg_;
  SlotClock clock_;
  RankEstimator ranker_;
  PhaseLayout layout_{0, 0, 0, 0, 0};

  std::vector<ArmStats> stats_;
  std::vector<std::uint64_t> phase_counts_;
  std::vector<ArmId> active_;
  std::vector<ArmId> dominated_;
  std::vector<std::uint64_t> blocked_offsets_;
  std::vector<ArmId> broadcasts_;
  ArmId estimate_ = 0;
  std::uint64_t matched_total_ = 0;
  std::uint64_t blocked_total_ = 0;
};

inline StrategyFactory ucbd3_factory(UcbD3Config cfg = {}) {
  return [cfg](AgentId, std::size_t n, std::size_t k) { return std::make_unique<UcbD3Agent>(n, k, cfg); };
}

}  // namespace sdm
