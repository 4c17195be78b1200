#pragma once

// Config-driven Monte-Carlo experiments. A run r of any algorithm draws its
// rewards from sub-streams seeded by derive_seed(master_seed, r), so results
// depend only on (config, r), never on how runs are scheduled.

#include <cmath>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdm/baselines.hpp"
#include "sdm/bounds.hpp"
#include "sdm/deviation.hpp"
#include "sdm/generators.hpp"
#include "sdm/heatmap.hpp"
#include "sdm/instance_io.hpp"
#include "sdm/parallel.hpp"
#include "sdm/profile.hpp"
#include "sdm/simulation.hpp"
#include "sdm/stats.hpp"
#include "sdm/table.hpp"
#include "sdm/ucbd3.hpp"

namespace sdm {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AlgorithmSpec {
  enum class Kind { UcbD3, CentralizedUcb, Etc, NaiveUcb };
  Kind kind = Kind::UcbD3;
  double alpha = 2.0;
  std::uint64_t etc_h = 0;

  std::string id() const {
    switch (kind) {
      case Kind::UcbD3: return "ucb_d3";
      case Kind::CentralizedUcb: return "centralized_ucb";
      case Kind::Etc: return "etc";
      case Kind::NaiveUcb: return "naive_ucb";
    }
    return "?";
  }
};

struct DeviationSpec {
  AgentId agent = 0;
  std::string strategy = "greedy";
};

struct ExperimentConfig {
  Instance instance;
  std::vector<AlgorithmSpec> algorithms;
  std::optional<DeviationSpec> deviation;
  Slot horizon = 100000;
  std::size_t num_runs = 30;
  std::uint64_t master_seed = 0;
  std::vector<Slot> checkpoints;
  std::filesystem::path output_dir = "out";
};

inline std::unique_ptr<Profile> make_profile(const AlgorithmSpec& spec, std::size_t n, std::size_t k) {
  switch (spec.kind) {
    case AlgorithmSpec::Kind::UcbD3:
      return std::make_unique<DecentralizedProfile>(ucbd3_factory({spec.alpha, true}), n, k);
    case AlgorithmSpec::Kind::CentralizedUcb:
      return std::make_unique<CentralizedUcb>(n, k, spec.alpha);
    case AlgorithmSpec::Kind::Etc:
      return std::make_unique<DecentralizedProfile>(etc_factory(spec.etc_h), n, k);
    case AlgorithmSpec::Kind::NaiveUcb:
      return std::make_unique<DecentralizedProfile>(naive_ucb_factory(spec.alpha), n, k);
  }
  return nullptr;
}

inline StrategyFactory strategy_by_name(const std::string& name, double alpha) {
  if (name == "greedy") return greedy_factory();
  if (name == "ucb_d3") return ucbd3_factory({alpha, true});
  if (name == "naive_ucb") return naive_ucb_factory(alpha);
  throw ConfigError("unknown deviation strategy '" + name + "'");
}

// `count` log-spaced slots ending at the horizon, plus the last slot of every
// phase when include_phase_ends is set.
inline std::vector<Slot> default_checkpoints(Slot horizon, std::size_t n_agents, std::size_t n_arms,
                                             std::size_t count = 100, bool include_phase_ends = true) {
  std::set<Slot> pts{horizon};
  if (count > 1) {
    const double top = std::log(static_cast<double>(horizon));
    for (std::size_t i = 0; i < count; ++i) {
      const double x = std::exp(top * static_cast<double>(i) / static_cast<double>(count - 1));
      pts.insert(std::clamp<Slot>(static_cast<Slot>(std::llround(x)), 1, horizon));
    }
  }
  if (include_phase_ends) {
    for (std::uint64_t i = 1; i < 62; ++i) {
      const Slot end = phase_layout(i, n_agents, n_arms).next_start() - 1;
      if (end > horizon) break;
      pts.insert(end);
    }
  }
  return {pts.begin(), pts.end()};
}

namespace detail {

inline Instance instance_from_spec(const nlohmann::json& spec, const std::filesystem::path& base,
                                   std::uint64_t master_seed) {
  if (spec.contains("means")) return instance_from_json(spec);
  if (spec.contains("file")) return load_instance(base / spec.at("file").get<std::string>());
  if (!spec.contains("generator")) throw ConfigError("instance needs 'means', 'file' or 'generator'");
  const auto gen = spec.at("generator").get<std::string>();
  const auto n = spec.at("agents").get<std::size_t>();
  const auto k = spec.at("arms").get<std::size_t>();
  const auto seed = spec.value("seed", master_seed);
  if (gen == "osb") return gen_osb(n, k, seed);
  if (gen == "spaced") return gen_spaced(n, k, seed);
  if (gen == "hard_lb" || gen == "hard-lb") {
    return gen_hard_lb(spec.at("target").get<std::size_t>(), n, k, spec.at("delta").get<double>(), seed);
  }
  throw ConfigError("unknown generator '" + gen + "'");
}

inline AlgorithmSpec algorithm_from_json(const nlohmann::json& j, double default_alpha,
                                         const Instance& inst) {
  AlgorithmSpec spec;
  const auto name = j.is_string() ? j.get<std::string>() : j.at("name").get<std::string>();
  spec.alpha = j.is_object() ? j.value("alpha", default_alpha) : default_alpha;
  if (name == "ucb_d3") spec.kind = AlgorithmSpec::Kind::UcbD3;
  else if (name == "centralized_ucb") spec.kind = AlgorithmSpec::Kind::CentralizedUcb;
  else if (name == "naive_ucb") spec.kind = AlgorithmSpec::Kind::NaiveUcb;
  else if (name == "etc") spec.kind = AlgorithmSpec::Kind::Etc;
  else throw ConfigError("unknown algorithm '" + name + "'");
  if (spec.kind == AlgorithmSpec::Kind::Etc) {
    spec.etc_h = j.is_object() && j.contains("h")
                     ? j.at("h").get<std::uint64_t>()
                     : default_etc_h(inst.n_agents(), inst.n_arms(), classify_osb(inst));
    if (spec.etc_h == 0) throw ConfigError("etc needs h >= 1");
  }
  if (spec.kind == AlgorithmSpec::Kind::UcbD3 && spec.alpha < 2.0) {
    throw ConfigError("ucb_d3 needs alpha >= 2");
  }
  return spec;
}

}  // namespace detail

// Relative paths inside the document resolve against `base`.
inline ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base = ".") {
  ExperimentConfig cfg;
  try {
    cfg.master_seed = doc.value("master_seed", std::uint64_t{0});
    cfg.horizon = doc.value("horizon", Slot{100000});
    cfg.num_runs = doc.value("num_runs", std::size_t{30});
    cfg.instance = detail::instance_from_spec(doc.at("instance"), base, cfg.master_seed);
    const double alpha = doc.value("alpha", 2.0);
    const auto& algs = doc.at("algorithms");
    if (!algs.is_array() || algs.empty()) throw ConfigError("'algorithms' must be a non-empty array");
    std::set<std::string> seen;
    for (const auto& a : algs) {
      cfg.algorithms.push_back(detail::algorithm_from_json(a, alpha, cfg.instance));
      if (!seen.insert(cfg.algorithms.back().id()).second) {
        throw ConfigError("algorithm '" + cfg.algorithms.back().id() + "' listed twice");
      }
    }
    if (doc.contains("deviation")) {
      const auto& d = doc.at("deviation");
      const auto agent = d.at("agent").get<std::size_t>();
      if (agent < 1 || agent > cfg.instance.n_agents()) throw ConfigError("deviation agent out of range");
      cfg.deviation = DeviationSpec{agent - 1, d.value("strategy", std::string("greedy"))};
      strategy_by_name(cfg.deviation->strategy, alpha);
    }
    const auto n = cfg.instance.n_agents();
    const auto k = cfg.instance.n_arms();
    if (cfg.horizon < n) throw ConfigError("horizon must be at least the number of agents");
    if (cfg.num_runs < 1) throw ConfigError("num_runs must be at least 1");
    if (!doc.contains("checkpoints")) {
      cfg.checkpoints = default_checkpoints(cfg.horizon, n, k);
    } else if (doc.at("checkpoints").is_number_integer()) {
      const auto c = doc.at("checkpoints").get<std::size_t>();
      if (c < 1) throw ConfigError("checkpoint count must be at least 1");
      cfg.checkpoints = default_checkpoints(cfg.horizon, n, k, c, false);
    } else {
      std::set<Slot> pts;
      for (auto c : doc.at("checkpoints").get<std::vector<Slot>>()) {
        if (c < 1 || c > cfg.horizon) throw ConfigError("checkpoint outside [1, horizon]");
        pts.insert(c);
      }
      if (pts.empty()) throw ConfigError("checkpoint list is empty");
      cfg.checkpoints.assign(pts.begin(), pts.end());
    }
    cfg.output_dir = base / doc.value("output_dir", std::string("out"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json_file(path), path.parent_path().empty() ? "." : path.parent_path());
}

inline std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run) {
  return derive_seed(master_seed, run);
}

struct AlgorithmResult {
  AlgorithmSpec spec;
  std::vector<RunRecord> runs;
};

struct ExperimentResult {
  std::vector<AlgorithmResult> algorithms;
  std::optional<DeviationResult> deviation;
};

inline ExperimentResult simulate_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1) {
  const auto n = cfg.instance.n_agents();
  const auto k = cfg.instance.n_arms();
  ExperimentResult res;
  for (const auto& spec : cfg.algorithms) {
    AlgorithmResult ar{spec, std::vector<RunRecord>(cfg.num_runs)};
    parallel_for(cfg.num_runs, jobs, [&](std::size_t r) {
      auto profile = make_profile(spec, n, k);
      ar.runs[r] = simulate(cfg.instance, *profile, cfg.horizon, run_seed(cfg.master_seed, r), cfg.checkpoints);
    });
    res.algorithms.push_back(std::move(ar));
  }
  if (cfg.deviation) {
    const double alpha = 2.0;
    res.deviation = deviation_harness(cfg.instance, ucbd3_factory({alpha, true}), cfg.deviation->agent,
                                      strategy_by_name(cfg.deviation->strategy, alpha), cfg.horizon,
                                      cfg.num_runs, cfg.master_seed, jobs);
  }
  return res;
}

// algorithm,run,checkpoint_t,agent,cum_regret,cum_collision_regret,blocked_count
inline Table regret_table(const ExperimentResult& res) {
  Table t{{"algorithm", "run", "checkpoint_t", "agent", "cum_regret", "cum_collision_regret", "blocked_count"}, {}};
  for (const auto& ar : res.algorithms) {
    for (std::size_t r = 0; r < ar.runs.size(); ++r) {
      const auto& s = ar.runs[r].series;
      for (std::size_t c = 0; c < s.checkpoints.size(); ++c) {
        for (AgentId j = 0; j < s.cum_regret.size(); ++j) {
          t.add({ar.spec.id(), std::uint64_t{r}, std::uint64_t{s.checkpoints[c]}, std::uint64_t{j + 1},
                 s.cum_regret[j][c], s.collision_regret[j][c], std::uint64_t{s.blocked[j][c]}});
        }
      }
    }
  }
  return t;
}

inline Table broadcast_table(const ExperimentResult& res) {
  Table t{{"algorithm", "run", "phase", "agent", "arm"}, {}};
  for (const auto& ar : res.algorithms) {
    for (std::size_t r = 0; r < ar.runs.size(); ++r) {
      const auto& b = ar.runs[r].broadcasts;
      for (AgentId j = 0; j < b.size(); ++j) {
        for (std::size_t i = 0; i < b[j].size(); ++i) {
          t.add({ar.spec.id(), std::uint64_t{r}, std::uint64_t{i + 1}, std::uint64_t{j + 1},
                 std::uint64_t{b[j][i] + 1}});
        }
      }
    }
  }
  return t;
}

inline Table heatmap_table(const Heatmap& h) {
  Table t{{"phase", "agent", "arm", "count"}, {}};
  for (std::size_t i = 0; i < h.phases(); ++i) {
    for (AgentId j = 0; j < h.agents(); ++j) {
      for (ArmId k = 0; k < h.arms(); ++k) {
        t.add({std::uint64_t{i + 1}, std::uint64_t{j + 1}, std::uint64_t{k + 1}, h.at(i, j, k)});
      }
    }
  }
  return t;
}

// Mean regret and confidence half-width per algorithm, agent and checkpoint.
inline Table summary_table(const ExperimentResult& res, double level = 0.95) {
  Table t{{"algorithm", "checkpoint_t", "agent", "mean_regret", "ci_half_width"}, {}};
  for (const auto& ar : res.algorithms) {
    if (ar.runs.empty()) continue;
    const auto& first = ar.runs.front().series;
    for (AgentId j = 0; j < first.cum_regret.size(); ++j) {
      std::vector<std::vector<double>> per_run;
      for (const auto& run : ar.runs) per_run.push_back(run.series.cum_regret[j]);
      std::vector<MeanCi> ci;
      if (per_run.size() >= 2) {
        ci = aggregate_ci(per_run, level);
      } else {
        for (double v : per_run.front()) ci.push_back({v, 0.0});
      }
      for (std::size_t c = 0; c < first.checkpoints.size(); ++c) {
        t.add({ar.spec.id(), std::uint64_t{first.checkpoints[c]}, std::uint64_t{j + 1}, ci[c].mean,
               ci[c].half_width});
      }
    }
  }
  return t;
}

inline Table bounds_table(const BoundReport& rep) {
  Table t{{"agent", "upper_bound", "lower_bound", "epsilon", "i_star", "delta", "horizon", "alpha"}, {}};
  for (const auto& a : rep.agents) {
    t.add({std::uint64_t{a.rank}, a.upper, a.lower ? Cell{*a.lower} : Cell{std::string("NotOSB")},
           a.epsilon, std::uint64_t{rep.i_star}, rep.delta, rep.horizon, rep.alpha});
  }
  return t;
}

inline Table deviation_table(const DeviationSpec& spec, const DeviationResult& dev,
                             const std::vector<double>& epsilon) {
  Table t{{"agent", "strategy", "mean_gain", "ci_low", "ci_high", "epsilon"}, {}};
  t.add({std::uint64_t{spec.agent + 1}, spec.strategy, dev.gain.mean, dev.gain.lower(), dev.gain.upper(),
         epsilon[spec.agent]});
  return t;
}

// Writes regret, broadcasts, heatmap (UCB-D3 runs), summary, bounds and the
// optional deviation report into cfg.output_dir.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1, bool json = false) {
  auto res = simulate_experiment(cfg, jobs);
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw IoError("cannot create " + cfg.output_dir.string() + ": " + ec.message());
  const std::string ext = json ? ".json" : ".csv";
  auto out = [&](const std::string& stem, const Table& t) {
    write_text_file(cfg.output_dir / (stem + ext), t.render(json));
  };
  out("regret", regret_table(res));
  out("broadcasts", broadcast_table(res));
  out("summary", summary_table(res));
  for (const auto& ar : res.algorithms) {
    if (ar.spec.kind != AlgorithmSpec::Kind::UcbD3) continue;
    std::vector<BroadcastLog> logs;
    for (const auto& r : ar.runs) logs.push_back(r.broadcasts);
    out("heatmap", heatmap_table(heatmap_aggregate(logs, cfg.instance.n_arms())));
  }
  const double alpha = cfg.algorithms.front().alpha;
  out("bounds", bounds_table(bound_report(cfg.instance, static_cast<double>(cfg.horizon), alpha)));
  if (res.deviation) {
    const auto sm = stable_match(cfg.instance);
    const auto eps = epsilon_nash_bound(cfg.instance, sm, res.deviation->baseline_mean_regret);
    out("deviation", deviation_table(*cfg.deviation, *res.deviation, eps));
  }
  save_instance(cfg.instance, cfg.output_dir / "instance.json");
  return res;
}

}  // namespace sdm
