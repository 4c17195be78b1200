#pragma once

// Closed-form regret bounds. Logarithms are natural.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdm/kl.hpp"
#include "sdm/market.hpp"

namespace sdm {

class NotOsb : public std::invalid_argument {
 public:
  NotOsb() : std::invalid_argument("instance is not optimally stable; lower bound undefined") {}
};

// Smallest phase i with 20 N K alpha i / delta^2 <= 2^(i-1).
inline std::uint64_t i_star(std::size_t n_agents, std::size_t n_arms, double alpha, double delta) {
  const double c = 20.0 * static_cast<double>(n_agents * n_arms) * alpha / (delta * delta);
  std::uint64_t i = 1;
  while (c * static_cast<double>(i) > std::ldexp(1.0, static_cast<int>(i - 1))) ++i;
  return i;
}

// Leading log(T) term of the upper bound for the agent with the given rank
// (1-based); the additive O((NK)^2 + NK/delta^2 log(NK/delta^2)) remainder
// is not included.
inline double upper_bound_cor1(std::size_t rank, std::size_t n_arms, double delta, double horizon,
                               double alpha) {
  const double j = static_cast<double>(rank);
  const double k = static_cast<double>(n_arms);
  const double collision = (j - 1.0) * (k + 1.0 - j) / (delta * delta);
  const double suboptimal = std::max(k - 1.0 - j, 0.0) / delta;
  return 9.0 * alpha * std::log(horizon) * (collision + suboptimal);
}

inline double upper_bound_cor1(const Instance& inst, AgentId agent, double horizon, double alpha) {
  const auto g = gaps(inst, stable_match(inst));
  return upper_bound_cor1(agent + 1, inst.n_arms(), g.global_min, horizon, alpha);
}

// Asymptotic lower bound (coefficient of log T, times log T) for any
// uniformly consistent decentralized policy on an optimally stable instance
// with Bernoulli rewards.
inline double lower_bound_thm2(const Instance& inst, AgentId agent, double horizon) {
  const auto sm = stable_match(inst);
  if (!classify_osb(inst, sm)) throw NotOsb();
  const auto g = gaps(inst, sm);
  const ArmId own = sm.partner[agent];

  double collisions = 0.0;
  for (AgentId hi = 0; hi < agent; ++hi) {
    collisions += g.per_agent_min[agent] /
                  d_inf_bernoulli(inst.mean(hi, own), inst.mean(hi, sm.partner[hi]));
  }
  double exploration = 0.0;
  for (ArmId k = 0; k < inst.n_arms(); ++k) {
    if (k == own || sm.is_dominated(agent, k)) continue;
    exploration += g.gap[agent][k] / d_inf_bernoulli(inst.mean(agent, k), inst.mean(agent, own));
  }
  return std::log(horizon) * std::max(collisions, exploration);
}

// Closed form for the hard instance family: (j-1) log T / (16 delta^2).
inline double hard_instance_lower_bound(std::size_t rank, double delta, double horizon) {
  return static_cast<double>(rank - 1) * std::log(horizon) / (16.0 * delta * delta);
}

// Unilateral-deviation slack per agent given per-agent regrets:
//   eps_j = sum_{l<j} 1{mu[j][k*_l] > mu[j][k*_j]} mu[j][k*_l] / min_k mu[l][k] * R_l + R_j.
inline std::vector<double> epsilon_nash_bound(const Instance& inst, const StableMatch& sm,
                                              std::span<const double> regrets) {
  std::vector<double> eps(inst.n_agents());
  for (AgentId j = 0; j < inst.n_agents(); ++j) {
    const double own = inst.mean(j, sm.partner[j]);
    double e = regrets[j];
    for (AgentId l = 0; l < j; ++l) {
      const double theirs = inst.mean(j, sm.partner[l]);
      if (theirs > own) {
        const auto row = inst.row(l);
        e += theirs / *std::min_element(row.begin(), row.end()) * regrets[l];
      }
    }
    eps[j] = e;
  }
  return eps;
}

struct AgentBounds {
  std::size_t rank = 0;
  double upper = 0.0;
  std::optional<double> lower;  // empty when the instance is not optimally stable
  double epsilon = 0.0;         // from the upper bounds
};

struct BoundReport {
  double horizon = 0.0;
  double alpha = 2.0;
  double delta = 0.0;
  std::uint64_t i_star = 0;
  bool osb = false;
  std::vector<AgentBounds> agents;
};

inline BoundReport bound_report(const Instance& inst, double horizon, double alpha) {
  const auto sm = stable_match(inst);
  const auto g = gaps(inst, sm);
  BoundReport rep;
  rep.horizon = horizon;
  rep.alpha = alpha;
  rep.delta = g.global_min;
  rep.i_star = i_star(inst.n_agents(), inst.n_arms(), alpha, g.global_min);
  rep.osb = classify_osb(inst, sm);
  std::vector<double> uppers;
  for (AgentId j = 0; j < inst.n_agents(); ++j) {
    AgentBounds b;
    b.rank = j + 1;
    b.upper = upper_bound_cor1(j + 1, inst.n_arms(), g.global_min, horizon, alpha);
    if (rep.osb) b.lower = lower_bound_thm2(inst, j, horizon);
    uppers.push_back(b.upper);
    rep.agents.push_back(b);
  }
  const auto eps = epsilon_nash_bound(inst, sm, uppers);
  for (AgentId j = 0; j < inst.n_agents(); ++j) rep.agents[j].epsilon = eps[j];
  return rep;
}

}  // namespace sdm
