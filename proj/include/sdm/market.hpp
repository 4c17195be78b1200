#pragma once

// Market model: N agents ranked 1..N (index 0 is the highest rank) competing
// for K arms. Arms accept the highest-ranked proposer, so the unique stable
// matching is obtained by serial dictatorship over the agents' mean rewards.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdm {

using AgentId = std::size_t;
using ArmId = std::size_t;

class InstanceError : public std::invalid_argument {
 public:
  enum class Kind { Distinctness, Range, Shape };

  InstanceError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Row-major N x K matrix of mean rewards; row j belongs to the agent ranked j+1.
class Instance {
 public:
  Instance() = default;

  // Builds without checking the model invariants. Used for illustrative
  // markets whose means touch the boundary of (0,1).
  static Instance from_raw(std::vector<std::vector<double>> rows) {
    Instance inst;
    inst.n_agents_ = rows.size();
    inst.n_arms_ = rows.empty() ? 0 : rows.front().size();
    inst.means_.reserve(inst.n_agents_ * inst.n_arms_);
    for (const auto& row : rows) {
      if (row.size() != inst.n_arms_) {
        throw InstanceError(InstanceError::Kind::Shape, "ragged means matrix");
      }
      inst.means_.insert(inst.means_.end(), row.begin(), row.end());
    }
    return inst;
  }

  std::size_t n_agents() const noexcept { return n_agents_; }
  std::size_t n_arms() const noexcept { return n_arms_; }

  double mean(AgentId j, ArmId k) const { return means_[j * n_arms_ + k]; }

  std::span<const double> row(AgentId j) const {
    return {means_.data() + j * n_arms_, n_arms_};
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out;
    for (AgentId j = 0; j < n_agents_; ++j) {
      auto r = row(j);
      out.emplace_back(r.begin(), r.end());
    }
    return out;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_agents_ = 0;
  std::size_t n_arms_ = 0;
  std::vector<double> means_;
};

// Checks K >= N >= 1, means in the open interval (0,1), and pairwise distinct
// means within every row.
inline Instance validate_instance(std::vector<std::vector<double>> rows) {
  using Kind = InstanceError::Kind;
  if (rows.empty() || rows.front().empty()) {
    throw InstanceError(Kind::Shape, "instance needs at least one agent and one arm");
  }
  const std::size_t n = rows.size();
  const std::size_t k = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != k) throw InstanceError(Kind::Shape, "ragged means matrix");
  }
  if (k < n) {
    throw InstanceError(Kind::Shape, "need at least as many arms as agents (K=" +
                                         std::to_string(k) + ", N=" + std::to_string(n) + ")");
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (double m : rows[j]) {
      if (!(m > 0.0 && m < 1.0)) {
        throw InstanceError(Kind::Range, "mean " + std::to_string(m) + " of agent " +
                                             std::to_string(j + 1) + " outside (0,1)");
      }
    }
    auto sorted = rows[j];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InstanceError(Kind::Distinctness,
                          "agent " + std::to_string(j + 1) + " has duplicate arm means");
    }
  }
  return Instance::from_raw(std::move(rows));
}

inline Instance validate_instance(const Instance& inst) { return validate_instance(inst.rows()); }

struct StableMatch {
  std::vector<ArmId> partner;  // partner[j] = stable arm of agent j

  // Arms held by agents ranked above j.
  std::vector<ArmId> dominated(AgentId j) const {
    return {partner.begin(), partner.begin() + static_cast<std::ptrdiff_t>(j)};
  }

  bool is_dominated(AgentId j, ArmId k) const {
    return std::find(partner.begin(), partner.begin() + static_cast<std::ptrdiff_t>(j), k) !=
           partner.begin() + static_cast<std::ptrdiff_t>(j);
  }

  friend bool operator==(const StableMatch&, const StableMatch&) = default;
};

// Serial dictatorship: agent j takes its best arm among those not taken by
// agents 0..j-1. Ties cannot occur on validated instances; on raw matrices the
// lowest arm index wins.
inline StableMatch stable_match(const Instance& inst) {
  StableMatch sm;
  std::vector<bool> taken(inst.n_arms(), false);
  for (AgentId j = 0; j < inst.n_agents(); ++j) {
    ArmId best = inst.n_arms();
    for (ArmId k = 0; k < inst.n_arms(); ++k) {
      if (taken[k]) continue;
      if (best == inst.n_arms() || inst.mean(j, k) > inst.mean(j, best)) best = k;
    }
    taken[best] = true;
    sm.partner.push_back(best);
  }
  return sm;
}

struct GapTable {
  // gap[j][k] = mu[j][partner j] - mu[j][k]; negative on dominated arms that
  // agent j prefers to its stable partner.
  std::vector<std::vector<double>> gap;
  // Smallest gap over every other arm (dominated arms included).
  std::vector<double> per_agent_min;
  // Smallest gap over non-dominated arms other than the partner.
  std::vector<double> per_agent_nondominated_min;
  double global_min = std::numeric_limits<double>::infinity();
};

inline GapTable gaps(const Instance& inst, const StableMatch& sm) {
  GapTable g;
  const auto n = inst.n_agents();
  const auto k_arms = inst.n_arms();
  g.gap.assign(n, std::vector<double>(k_arms, 0.0));
  g.per_agent_min.assign(n, std::numeric_limits<double>::infinity());
  g.per_agent_nondominated_min.assign(n, std::numeric_limits<double>::infinity());
  for (AgentId j = 0; j < n; ++j) {
    const double best = inst.mean(j, sm.partner[j]);
    for (ArmId k = 0; k < k_arms; ++k) {
      if (k == sm.partner[j]) continue;
      const double d = best - inst.mean(j, k);
      g.gap[j][k] = d;
      g.per_agent_min[j] = std::min(g.per_agent_min[j], d);
      if (!sm.is_dominated(j, k)) {
        g.per_agent_nondominated_min[j] = std::min(g.per_agent_nondominated_min[j], d);
      }
    }
    g.global_min = std::min(g.global_min, g.per_agent_nondominated_min[j]);
  }
  return g;
}

// Optimally stable: every agent's stable partner is its globally best arm.
inline bool classify_osb(const Instance& inst, const StableMatch& sm) {
  for (AgentId j = 0; j < inst.n_agents(); ++j) {
    const double best = inst.mean(j, sm.partner[j]);
    for (ArmId k = 0; k < inst.n_arms(); ++k) {
      if (k != sm.partner[j] && !(inst.mean(j, k) < best)) return false;
    }
  }
  return true;
}

inline bool classify_osb(const Instance& inst) { return classify_osb(inst, stable_match(inst)); }

}  // namespace sdm
