// Command-line front end: run experiments, generate instances, print bounds
// and rebuild heatmaps from a finished run directory.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "sdm/experiment.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3 };

int cmd_run(const std::string& config_path, std::size_t jobs, std::optional<std::uint64_t> seed,
            const std::string& format) {
  auto cfg = sdm::load_config(config_path);
  if (seed) cfg.master_seed = *seed;
  sdm::run_experiment(cfg, jobs, format == "json");
  std::cout << "wrote " << cfg.output_dir.string() << "\n";
  return kOk;
}

int cmd_gen(const std::string& kind, std::size_t agents, std::size_t arms, std::uint64_t seed,
            std::size_t target, double delta, const std::string& out) {
  sdm::Instance inst;
  if (kind == "osb") inst = sdm::gen_osb(agents, arms, seed);
  else if (kind == "spaced") inst = sdm::gen_spaced(agents, arms, seed);
  else inst = sdm::gen_hard_lb(target, agents, arms, delta, seed);
  if (out.empty() || out == "-") std::cout << sdm::instance_to_json(inst).dump(2) << "\n";
  else sdm::save_instance(inst, out);
  return kOk;
}

int cmd_bounds(const std::string& path, std::size_t agent, double horizon, double alpha, bool json) {
  const auto inst = sdm::load_instance(path);
  if (agent < 1 || agent > inst.n_agents()) throw sdm::InstanceError(sdm::InstanceError::Kind::Range, "agent out of range");
  const auto rep = sdm::bound_report(inst, horizon, alpha);
  if (json) {
    std::cout << sdm::bounds_table(rep).to_json().dump(1) << "\n";
    return kOk;
  }
  const auto& a = rep.agents[agent - 1];
  std::cout << "agent " << agent << "\n";
  std::cout << "delta " << sdm::format_double(rep.delta) << "\n";
  std::cout << "i_star " << rep.i_star << "\n";
  std::cout << "upper " << sdm::format_double(a.upper) << "\n";
  std::cout << "lower " << (a.lower ? sdm::format_double(*a.lower) : std::string("NotOSB")) << "\n";
  std::cout << "\n" << sdm::bounds_table(rep).to_csv();
  return kOk;
}

int cmd_heatmap(const std::filesystem::path& dir, const std::string& algorithm, bool json) {
  const auto path = dir / "broadcasts.csv";
  std::ifstream in(path);
  if (!in) throw sdm::IoError("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  const auto header = sdm::split_csv_line(line);
  const std::vector<std::string> expect{"algorithm", "run", "phase", "agent", "arm"};
  if (header != expect) throw sdm::IoError(path.string() + ": unexpected header");
  // run -> log; keyed so runs come out in order
  std::map<std::uint64_t, sdm::BroadcastLog> runs;
  std::size_t arms = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = sdm::split_csv_line(line);
    if (f.size() != 5) throw sdm::IoError(path.string() + ": bad row '" + line + "'");
    if (f[0] != algorithm) continue;
    std::size_t run, phase, agent, arm;
    try {
      run = std::stoull(f[1]);
      phase = std::stoull(f[2]);
      agent = std::stoull(f[3]);
      arm = std::stoull(f[4]);
    } catch (const std::exception&) {
      throw sdm::IoError(path.string() + ": bad row '" + line + "'");
    }
    if (phase < 1 || agent < 1 || arm < 1) throw sdm::IoError(path.string() + ": bad row '" + line + "'");
    auto& log = runs[run];
    if (log.size() < agent) log.resize(agent);
    if (log[agent - 1].size() < phase) log[agent - 1].resize(phase);
    log[agent - 1][phase - 1] = arm - 1;
    arms = std::max(arms, arm);
  }
  if (std::filesystem::exists(dir / "instance.json")) {
    arms = std::max(arms, sdm::load_instance(dir / "instance.json").n_arms());
  }
  std::vector<sdm::BroadcastLog> logs;
  for (auto& [r, log] : runs) logs.push_back(std::move(log));
  std::cout << sdm::heatmap_table(sdm::heatmap_aggregate(logs, arms)).render(json);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized serial-dictatorship matching bandit simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::size_t jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  app.add_option("--jobs,-j", jobs, "Worker threads for run")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Master seed for run, generator seed for gen");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  std::string config;
  run->add_option("config", config, "Experiment config")->required();

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string kind;
  std::size_t agents = 0, arms = 0, target = 1;
  double delta = 0.1;
  std::string out;
  gen->add_option("kind", kind, "osb, spaced or hard-lb")->required()->check(CLI::IsMember({"osb", "spaced", "hard-lb"}));
  gen->add_option("--agents", agents)->required();
  gen->add_option("--arms", arms)->required();
  gen->add_option("--target", target, "Target agent rank for hard-lb");
  gen->add_option("--delta", delta, "Gap for hard-lb");
  gen->add_option("-o,--output", out, "Output file (stdout if omitted)");

  auto* bounds = app.add_subcommand("bounds", "Print regret bounds for an instance");
  std::string inst_path;
  std::size_t agent = 1;
  double horizon = 0, alpha = 2.0;
  bounds->add_option("instance", inst_path)->required();
  bounds->add_option("--agent", agent)->required();
  bounds->add_option("--horizon", horizon)->required()->check(CLI::PositiveNumber);
  bounds->add_option("--alpha", alpha);

  auto* heat = app.add_subcommand("heatmap", "Aggregate broadcasts of a finished run");
  std::string run_dir, algorithm = "ucb_d3";
  heat->add_option("run_dir", run_dir)->required();
  heat->add_option("--algorithm", algorithm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(config, jobs, seed, format);
    if (*gen) return cmd_gen(kind, agents, arms, seed.value_or(0), target, delta, out);
    if (*bounds) return cmd_bounds(inst_path, agent, horizon, alpha, format == "json");
    if (*heat) return cmd_heatmap(run_dir, algorithm, format == "json");
  } catch (const sdm::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}
