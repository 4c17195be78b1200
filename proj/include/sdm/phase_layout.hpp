#pragma once

// Time slots are numbered from 1. Slots 1..N-1 estimate ranks; from slot N on,
// phase i occupies [S_i, S_{i+1}) with
//   S_i = 2^(i-1) + (i-1)(N-1)K + N - 1,
// an RM block of 2^(i-1) slots followed by a communication block of (N-1)K
// slots split into N-1 sub-blocks of K slots.

#include <cstdint>
#include <stdexcept>

namespace sdm {

using Slot = std::uint64_t;

struct PhaseLayout {
  std::uint64_t phase = 1;
  Slot start = 0;
  std::uint64_t rm_length = 0;
  std::uint64_t comm_length = 0;
  std::uint64_t subblock_length = 0;

  Slot rm_begin() const noexcept { return start; }
  Slot rm_end() const noexcept { return start + rm_length; }  // one past
  Slot comm_begin() const noexcept { return rm_end(); }
  Slot comm_end() const noexcept { return rm_end() + comm_length; }  // one past
  Slot next_start() const noexcept { return comm_end(); }
};

inline Slot phase_start(std::uint64_t phase, std::uint64_t n_agents, std::uint64_t n_arms) {
  if (phase == 0 || phase > 62) throw std::out_of_range("phase index out of range");
  return (std::uint64_t{1} << (phase - 1)) + (phase - 1) * (n_agents - 1) * n_arms + n_agents - 1;
}

inline PhaseLayout phase_layout(std::uint64_t phase, std::uint64_t n_agents, std::uint64_t n_arms) {
  if (n_agents == 0 || n_arms < n_agents) throw std::invalid_argument("phase_layout needs K >= N >= 1");
  return PhaseLayout{phase, phase_start(phase, n_agents, n_arms), std::uint64_t{1} << (phase - 1),
                     (n_agents - 1) * n_arms, n_arms};
}

struct SlotInfo {
  enum class Block { Rank, Rm, Comm };
  Block block = Block::Rank;
  std::uint64_t phase = 0;   // 0 during rank estimation
  std::uint64_t offset = 0;  // position inside the block, from 0
};

inline SlotInfo locate_slot(Slot t, std::uint64_t n_agents, std::uint64_t n_arms) {
  if (t == 0) throw std::out_of_range("time slots start at 1");
  if (t < n_agents) return {SlotInfo::Block::Rank, 0, t - 1};
  for (std::uint64_t i = 1;; ++i) {
    const auto lay = phase_layout(i, n_agents, n_arms);
    if (t < lay.rm_end()) return {SlotInfo::Block::Rm, i, t - lay.start};
    if (t < lay.comm_end()) return {SlotInfo::Block::Comm, i, t - lay.comm_begin()};
  }
}

}  // namespace sdm
