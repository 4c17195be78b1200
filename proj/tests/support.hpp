#pragma once

// Brute-force oracles and random generators shared by the test suites. None
// of these call into the library code they are used to check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "sdm/market.hpp"

namespace sdm::oracle {

// Agent j is matched iff no lower-indexed agent picked the same arm.
inline std::vector<bool> brute_matched(const std::vector<ArmId>& choices) {
  std::vector<bool> out(choices.size(), true);
  for (std::size_t j = 0; j < choices.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (choices[i] == choices[j]) out[j] = false;
    }
  }
  return out;
}

// Every injective agent->arm assignment with no blocking pair. Arms prefer
// lower agent indices.
inline std::vector<std::vector<ArmId>> brute_stable_matchings(const std::vector<std::vector<double>>& mu) {
  const std::size_t n = mu.size(), k = mu.front().size();
  std::vector<std::vector<ArmId>> stable;
  std::vector<ArmId> assign(n);
  std::vector<bool> used(k, false);
  auto check = [&] {
    std::vector<std::optional<std::size_t>> holder(k);
    for (std::size_t j = 0; j < n; ++j) holder[assign[j]] = j;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t a = 0; a < k; ++a) {
        if (a == assign[j] || !(mu[j][a] > mu[j][assign[j]])) continue;
        if (!holder[a] || *holder[a] > j) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == n) {
      if (check()) stable.push_back(assign);
      return;
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (used[a]) continue;
      used[a] = true;
      assign[j] = a;
      self(self, j + 1);
      used[a] = false;
    }
  };
  rec(rec, 0);
  return stable;
}

// Distinct means in (0,1) per row, drawn on a 1/1000 grid so near-ties show up.
inline std::vector<std::vector<double>> random_means(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<int> cell(1, 999);
  std::vector<std::vector<double>> rows(n);
  for (auto& row : rows) {
    std::set<int> seen;
    while (row.size() < k) {
      const int v = cell(rng);
      if (seen.insert(v).second) row.push_back(v / 1000.0);
    }
  }
  return rows;
}

// Random (N, K) with 1 <= N <= K, N <= max_n, K <= max_k.
inline std::pair<std::size_t, std::size_t> random_shape(std::mt19937_64& rng, std::size_t max_n, std::size_t max_k) {
  std::uniform_int_distribution<std::size_t> nd(1, max_n);
  const std::size_t n = nd(rng);
  std::uniform_int_distribution<std::size_t> kd(n, max_k);
  return {n, kd(rng)};
}

}  // namespace sdm::oracle
