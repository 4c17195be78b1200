// Acceptance checks 1-12. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "sdm/experiment.hpp"
#include "sdm/kl.hpp"
#include "support.hpp"

using namespace sdm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr std::uint64_t kMasterSeed = 20240601;
constexpr std::uint64_t kInstanceSeed = 1;

Outcome c1_match_rule() {
  std::mt19937_64 rng(derive_seed(kMasterSeed, 1));
  std::size_t checked = 0, bad = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t k = 1; k <= 5; ++k) {
      std::uniform_int_distribution<ArmId> arm(0, k - 1);
      for (int trial = 0; trial < 1000; ++trial) {
        std::vector<ArmId> c(n);
        for (auto& a : c) a = arm(rng);
        const auto w = match_outcome(c, k);
        const auto expect = oracle::brute_matched(c);
        for (AgentId j = 0; j < n; ++j) bad += (w[c[j]] == j) != expect[j];
        ++checked;
      }
    }
  }
  return {bad == 0, fmt("%zu choice vectors, %zu mismatches", checked, bad)};
}

Outcome c2_stable_match() {
  std::mt19937_64 rng(derive_seed(kMasterSeed, 2));
  std::size_t bad = 0, non_unique = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto [n, k] = oracle::random_shape(rng, 5, 6);
    const auto rows = oracle::random_means(rng, n, k);
    const auto all = oracle::brute_stable_matchings(rows);
    non_unique += all.size() != 1;
    bad += all.empty() || stable_match(validate_instance(rows)).partner != all.front();
  }
  return {bad == 0 && non_unique == 0, fmt("500 instances, %zu mismatches, %zu non-unique", bad, non_unique)};
}

Outcome c3_rank_estimation() {
  std::size_t cases = 0, bad = 0;
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t k = n; k <= 20; ++k) {
      std::vector<UcbD3Agent*> raw;
      std::vector<std::unique_ptr<Strategy>> agents;
      for (AgentId j = 0; j < n; ++j) {
        auto a = std::make_unique<UcbD3Agent>(n, k);
        raw.push_back(a.get());
        agents.push_back(std::move(a));
      }
      DecentralizedProfile p(std::move(agents));
      Environment env(gen_osb(n, k, n * 100 + k), 0);
      std::vector<ArmId> c(n);
      for (Slot t = 1; t < n; ++t) {
        p.choose(t, c);
        p.observe(t, c, env.step(c));
      }
      for (AgentId j = 0; j < n; ++j) bad += raw[j]->rank() != j + 1;
      ++cases;
    }
  }
  return {bad == 0, fmt("%zu (N,K) pairs, %zu wrong ranks", cases, bad)};
}

Outcome c4_comm_decode() {
  std::size_t vectors = 0, bad = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t k = 2; k <= 5; ++k) {
      std::vector<ArmId> o(n, 0);
      for (;;) {
        std::vector<std::vector<std::uint64_t>> blocked(n);
        std::vector<ArmId> c(n);
        for (std::uint64_t off = 0; off < (n - 1) * k; ++off) {
          for (AgentId j = 0; j < n; ++j) c[j] = comm_action(j + 1, off, k, o[j]);
          const auto w = match_outcome(c, k);
          for (AgentId j = 0; j < n; ++j) {
            if (w[c[j]] != j && in_own_subblock(j + 1, off, k)) blocked[j].push_back(off % k);
          }
        }
        for (AgentId j = 0; j < n; ++j) {
          const std::set<ArmId> expect(o.begin(), o.begin() + static_cast<std::ptrdiff_t>(j));
          const auto d = comm_decode(blocked[j], k);
          bad += std::set<ArmId>(d.begin(), d.end()) != expect;
        }
        ++vectors;
        std::size_t pos = 0;
        while (pos < n && ++o[pos] == k) o[pos++] = 0;
        if (pos == n) break;
      }
    }
  }
  return {bad == 0, fmt("%zu estimate vectors, %zu wrong decodes", vectors, bad)};
}

Outcome c5_freezing() {
  const auto inst = gen_osb(5, 5, kInstanceSeed);
  const auto sm = stable_match(inst);
  const Slot horizon = phase_start(14, 5, 5) - 1;
  std::vector<bool> all_right(100);
  parallel_for(100, 1, [&](std::size_t r) {
    DecentralizedProfile p(ucbd3_factory(), 5, 5);
    const auto rec = simulate(inst, p, horizon, derive_seed(kMasterSeed, 5, r), {horizon});
    bool ok = true;
    for (AgentId j = 0; j < 5; ++j) ok &= rec.broadcasts[j].size() == 13 && rec.broadcasts[j][12] == sm.partner[j];
    all_right[r] = ok;
  });
  const auto hits = std::count(all_right.begin(), all_right.end(), true);
  return {hits >= 95, fmt("T=%llu (13 phases), %ld/100 runs with every agent on its partner", (unsigned long long)horizon, hits)};
}

ExperimentConfig ordering_config(const fs::path& out) {
  ExperimentConfig cfg;
  cfg.instance = gen_osb(5, 5, kInstanceSeed);
  cfg.algorithms = {{AlgorithmSpec::Kind::UcbD3, 2.0, 0},
                    {AlgorithmSpec::Kind::Etc, 2.0, 801},
                    {AlgorithmSpec::Kind::CentralizedUcb, 2.0, 0}};
  cfg.horizon = 100000;
  cfg.num_runs = 30;
  cfg.master_seed = kMasterSeed;
  cfg.checkpoints = default_checkpoints(cfg.horizon, 5, 5);
  cfg.checkpoints.push_back(25000);
  cfg.checkpoints.push_back(50000);
  std::sort(cfg.checkpoints.begin(), cfg.checkpoints.end());
  cfg.checkpoints.erase(std::unique(cfg.checkpoints.begin(), cfg.checkpoints.end()), cfg.checkpoints.end());
  cfg.output_dir = out;
  return cfg;
}

// Mean over runs of the agent-summed regret at checkpoint t.
double mean_total_regret(const AlgorithmResult& ar, Slot t) {
  double total = 0.0;
  for (const auto& run : ar.runs) {
    const auto& s = run.series;
    const auto c = static_cast<std::size_t>(std::lower_bound(s.checkpoints.begin(), s.checkpoints.end(), t) -
                                            s.checkpoints.begin());
    for (const auto& agent : s.cum_regret) total += agent.at(c);
  }
  return total / static_cast<double>(ar.runs.size());
}

const fs::path kWork = fs::temp_directory_path() / "sdm_acceptance";
ExperimentResult g_ordering;

Outcome c6_ordering() {
  fs::remove_all(kWork);
  g_ordering = run_experiment(ordering_config(kWork / "jobs1"), 1);
  const double ucb = mean_total_regret(g_ordering.algorithms[0], 100000);
  const double etc = mean_total_regret(g_ordering.algorithms[1], 100000);
  const double cen = mean_total_regret(g_ordering.algorithms[2], 100000);
  return {ucb <= 0.8 * etc && ucb <= 5.0 * cen,
          fmt("UCB-D3 %.1f, ETC %.1f (ratio %.3f <= 0.8), centralized %.1f (ratio %.3f <= 5)", ucb, etc,
              ucb / etc, cen, ucb / cen)};
}

Outcome c7_counterexample() {
  const auto inst = Instance::from_raw({{1.0, 0.5}, {1.0, 0.05}});
  std::vector<double> naive(30), d3(30);
  for (std::size_t r = 0; r < 30; ++r) {
    const auto seed = derive_seed(kMasterSeed, 7, r);
    DecentralizedProfile pn(naive_ucb_factory(), 2, 2);
    naive[r] = simulate(inst, pn, 100000, seed, {}).final_regret[1];
    DecentralizedProfile pd(ucbd3_factory(), 2, 2);
    d3[r] = simulate(inst, pd, 100000, seed, {}).final_regret[1];
  }
  const double mn = std::accumulate(naive.begin(), naive.end(), 0.0) / 30;
  const double md = std::accumulate(d3.begin(), d3.end(), 0.0) / 30;
  return {mn > md && mn >= 2.0 * md, fmt("agent 2 regret: naive %.2f, UCB-D3 %.2f (factor %.2f >= 2)", mn, md, mn / md)};
}

Outcome c8_log_growth() {
  const auto& ucb = g_ordering.algorithms[0];
  const double r_half = mean_total_regret(ucb, 25000);
  const double r_t = mean_total_regret(ucb, 50000);
  const double r_2t = mean_total_regret(ucb, 100000);
  const double lhs = r_2t - r_t, rhs = 1.5 * (r_t - r_half);
  return {lhs <= rhs, fmt("R(25k)=%.1f R(50k)=%.1f R(100k)=%.1f; %.1f <= %.1f", r_half, r_t, r_2t, lhs, rhs)};
}

Outcome c9_bounds() {
  // Written out independently of the library expression.
  const long double lnT = std::log(100000.0L);
  const long double expect_upper = 9.0L * 2.0L * lnT * (2.0L * 3.0L / 0.01L + 1.0L / 0.1L);
  const double upper = upper_bound_cor1(3, 5, 0.1, 1e5, 2.0);
  const bool upper_ok = std::fabs(upper - static_cast<double>(expect_upper)) <= 1e-3 * static_cast<double>(expect_upper) &&
                        std::fabs(upper - 126412.0) <= 1e-3 * 126412.0;
  const double lower = lower_bound_thm2(gen_hard_lb(3, 3, 3, 0.1), 2, 1e5);
  const double closed = static_cast<double>(2.0L * lnT / (16.0L * 0.01L));
  const bool lower_ok = lower >= 143.9 && lower >= closed;
  std::mt19937_64 rng(derive_seed(kMasterSeed, 9));
  std::size_t tested = 0, violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> kd(3, 8);
    const std::size_t k = kd(rng);
    std::uniform_int_distribution<std::size_t> nd(1, k);
    const std::size_t n = nd(rng);
    const auto inst = gen_osb(n, k, rng());
    for (const auto& a : bound_report(inst, 1e6, 2.0).agents) {
      violations += !(*a.lower <= a.upper);
      ++tested;
    }
  }
  return {upper_ok && lower_ok && violations == 0,
          fmt("upper %.2f (re-derived %.2f); hard lower %.2f >= %.2f; %zu agent bounds (K >= 3), %zu with lower > upper",
              upper, static_cast<double>(expect_upper), lower, closed, tested, violations)};
}

Outcome c10_kl() {
  using mp = boost::multiprecision::cpp_dec_float_50;
  double worst = 0.0;
  std::size_t points = 0, pinsker_bad = 0;
  for (int i = 0; i <= 39; ++i) {
    for (int m = 0; m < 25; ++m) {
      const double p = i / 39.0, q = (m + 0.5) / 25.0;
      const mp P(p), Q(q);
      mp ref = 0;
      if (p > 0) ref += P * boost::multiprecision::log(P / Q);
      if (p < 1) ref += (1 - P) * boost::multiprecision::log((1 - P) / (1 - Q));
      const double got = kl_bernoulli(p, q);
      const double rel = static_cast<double>(boost::multiprecision::abs((mp(got) - ref) / ref));
      worst = std::max(worst, rel);
      pinsker_bad += got < 2.0 * (p - q) * (p - q);
      ++points;
    }
  }
  return {worst <= 1e-9 && pinsker_bad == 0 && points == 1000,
          fmt("%zu grid points, max relative error %.3g, %zu Pinsker violations", points, worst, pinsker_bad)};
}

Outcome c11_deviation() {
  const auto inst = gen_osb(3, 3, kInstanceSeed);
  const auto sm = stable_match(inst);
  bool ok = true;
  std::string detail;
  for (AgentId j = 0; j < 3; ++j) {
    const auto dev = deviation_harness(inst, ucbd3_factory(), j, greedy_factory(), 100000, 20,
                                       derive_seed(kMasterSeed, 11));
    const auto eps = epsilon_nash_bound(inst, sm, dev.baseline_mean_regret);
    ok &= dev.gain.upper() <= eps[j];
    detail += fmt("%sagent %zu gain mean %.1f CI [%.1f, %.1f] vs eps %.1f", j ? "; " : "", j + 1, dev.gain.mean,
                  dev.gain.lower(), dev.gain.upper(), eps[j]);
  }
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c12_determinism() {
  run_experiment(ordering_config(kWork / "jobs4"), 4);
  std::size_t files = 0, differ = 0;
  for (const auto& e : fs::directory_iterator(kWork / "jobs1")) {
    if (e.path().extension() != ".csv") continue;
    ++files;
    differ += slurp(e.path()) != slurp(kWork / "jobs4" / e.path().filename());
  }
  return {files >= 5 && differ == 0, fmt("%zu CSV files compared (--jobs 1 vs 4), %zu differ", files, differ)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::function<Outcome()> fn;
    double limit_s;  // runtime budget; 0 means none
  };
  const std::vector<Criterion> criteria{
      {1, c1_match_rule, 1},      {2, c2_stable_match, 10},   {3, c3_rank_estimation, 1},
      {4, c4_comm_decode, 30},    {5, c5_freezing, 120},      {6, c6_ordering, 300},
      {7, c7_counterexample, 120}, {8, c8_log_growth, 0},     {9, c9_bounds, 1},
      {10, c10_kl, 1},            {11, c11_deviation, 120},   {12, c12_determinism, 0}};
  int failed = 0;
  for (const auto& [id, fn, limit] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs > limit) {
      o.pass = false;
      o.detail += fmt("; over the %.0fs budget", limit);
    }
    std::printf("criterion %2d: %s  %s  [%.2fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
