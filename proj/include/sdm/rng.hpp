#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "sdm/market.hpp"

namespace sdm {

// SplitMix64 finalizer; used only to derive seeds, never as a sample source.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t value) noexcept {
  return mix64(seed ^ mix64(value + 0x632be59bd9b4e019ULL));
}

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t first, Rest... rest) noexcept {
  std::uint64_t s = combine_seed(seed, first);
  ((s = combine_seed(s, static_cast<std::uint64_t>(rest))), ...);
  return s;
}

// FNV-1a, for folding string identifiers into a seed.
constexpr std::uint64_t hash_id(std::string_view id) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : id) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// One independent Bernoulli sub-stream per (agent, arm). A sub-stream advances
// only when its pair is matched, so two policies that produce the same match
// sequence observe the same rewards.
class RewardStreams {
 public:
  RewardStreams(std::uint64_t run_seed, std::size_t n_agents, std::size_t n_arms)
      : n_arms_(n_arms) {
    engines_.reserve(n_agents * n_arms);
    for (std::size_t j = 0; j < n_agents; ++j) {
      for (std::size_t k = 0; k < n_arms; ++k) {
        engines_.emplace_back(derive_seed(run_seed, j, k));
      }
    }
  }

  double draw(AgentId j, ArmId k, double mean) {
    std::bernoulli_distribution coin(mean);
    return coin(engines_[j * n_arms_ + k]) ? 1.0 : 0.0;
  }

 private:
  std::size_t n_arms_;
  std::vector<std::mt19937_64> engines_;
};

}  // namespace sdm
