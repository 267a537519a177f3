// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Pass a criterion name to run only that
// one: acceptance [determinism|invariants|homogeneity|diversity|intrinsic|baselines]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ndp/commands.hpp"
#include "ndp/config.hpp"
#include "ndp/devgraph.hpp"
#include "ndp/es.hpp"
#include "ndp/growth.hpp"
#include "ndp/metrics.hpp"
#include "ndp/nn.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ndp;
namespace fs = std::filesystem;

namespace {

// Tolerances
constexpr double kAttentionTol = 1e-6;
constexpr double kOracleTol = 1e-9;

// Thresholds
constexpr std::size_t kDiversitySeeds = 10;
constexpr double kCollapseFraction = 0.10;
constexpr std::size_t kCollapseMin = 8;
constexpr std::size_t kInhibitionWinsMin = 9;
constexpr double kDiversityBudgetSeconds = 300.0;

constexpr std::size_t kTrainSeeds = 3;
constexpr std::size_t kTrainMajority = 2;
constexpr double kSolvedReturn = 450.0;
constexpr double kTrivialReturn = 200.0;
constexpr double kSeedBudgetSeconds = 900.0;

const fs::path kWork = fs::temp_directory_path() / "ndp_acceptance";

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Counts failed checks and keeps the first message.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  bool ok() const { return failures == 0; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

NdpGenome random_genome(const NdpLayout& layout, Rng& rng, double scale) {
  return NdpGenome::from_flat(layout, test::random_vec(rng, layout.genome_length(), scale));
}

// ---------------------------------------------------------------- determinism

Outcome determinism() {
  RunConfig c;
  c.env = "cartpole";
  c.es.population_size = 32;
  c.es.generations = 6;
  c.eval_interval = 3;
  c.master_seed = 12345;
  RunConfig a = c, b = c;
  a.run_dir = kWork / "det_a";
  b.run_dir = kWork / "det_b";
  b.workers = 1;
  fs::remove_all(a.run_dir);
  fs::remove_all(b.run_dir);
  cmd_train(a);
  cmd_train(b);
  const bool csv = slurp(a.run_dir / "fitness.csv") == slurp(b.run_dir / "fitness.csv") &&
                   !slurp(a.run_dir / "fitness.csv").empty();

  std::size_t identical = 0;
  const std::size_t trials = 20;
  Rng grng(7);
  for (std::size_t t = 0; t < trials; ++t) {
    const NdpLayout layout(5);
    const NdpGenome g = random_genome(layout, grng, 0.7);
    Rng r1(t), r2(t);
    const DevGraph x = develop(g, 4, 1, GrowthConfig{}, r1);
    const DevGraph y = develop(g, 4, 1, GrowthConfig{}, r2);
    if (x == y && graph_snapshot_json(x, 15) == graph_snapshot_json(y, 15)) ++identical;
  }
  return {csv && identical == trials,
          fmt("fitness.csv byte-identical: %s; develop bit-identical %zu/%zu", csv ? "yes" : "no", identical, trials)};
}

// ----------------------------------------------------------------- invariants

void attention_and_forward_oracles(Tally& t) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t heads = 1 + trial % 2, out = 2 * (1 + trial % 4), in = 1 + trial % 7, n = 1 + trial % 9;
    const GatSpec spec(in, out, heads);
    const Vec p = test::random_vec(rng, gat_param_count(spec));
    std::vector<Vec> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(test::random_vec(rng, in));
    const Neighbourhoods nb = test::random_neighbourhoods(rng, n);
    const auto alpha = gat_attention(spec, p, x, nb);
    const auto y = gat_forward(spec, p, x, nb);
    const auto o = test::gat_oracle(in, out, heads, p, x, nb, spec.negative_slope, true);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t h = 0; h < heads; ++h) {
        double s = 0;
        for (double a : alpha[i][h]) s += a;
        t.expect(std::abs(s - 1.0) <= kAttentionTol, "attention does not sum to one");
      }
      for (std::size_t k = 0; k < out; ++k)
        t.expect(std::abs(y[i][k] - o.y[i][k]) <= kOracleTol, "gat_forward differs from oracle");
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> sizes = {1 + static_cast<std::size_t>(trial % 6)};
    for (int l = 0; l < 1 + trial % 3; ++l) sizes.push_back(1 + (trial * 7 + l) % 9);
    const MlpSpec spec(sizes, Activation::Relu, trial % 2 ? Activation::Tanh : Activation::Linear);
    const Vec p = test::random_vec(rng, mlp_param_count(spec));
    const Vec x = test::random_vec(rng, sizes.front());
    const Vec y = mlp_forward(spec, p, x);
    const Vec o = test::mlp_oracle(sizes, p, x, spec.hidden, spec.output);
    for (std::size_t k = 0; k < y.size(); ++k)
      t.expect(std::abs(y[k] - o[k]) <= kOracleTol * std::max(1.0, std::abs(o[k])), "mlp_forward differs from oracle");
  }
}

void flatten_identity(Tally& t) {
  Rng rng(12);
  for (std::size_t il = 2; il < 12; ++il) {
    const NdpLayout layout(il);
    const Vec flat = test::random_vec(rng, layout.genome_length());
    const NdpGenome g = NdpGenome::from_flat(layout, flat);
    t.expect(g.flatten() == flat, "genome flatten(from_flat(x)) != x");
    t.expect(flatten_gat(unflatten_gat(layout.diff, g.diff_params)) == g.diff_params, "gat flatten identity");
    t.expect(flatten_mlp(unflatten_mlp(layout.gen, g.gen_params)) == g.gen_params, "gen flatten identity");
    t.expect(flatten_mlp(unflatten_mlp(layout.edge, g.edge_params)) == g.edge_params, "edge flatten identity");
  }
}

void lineage_and_onehot(Tally& t) {
  Rng grng(13);
  std::size_t steps = 0;
  for (int trial = 0; steps < 1000; ++trial) {
    const std::size_t obs = 1 + trial % 4, act = 1 + trial % 2;
    const NdpLayout layout(obs + act);
    const NdpGenome g = random_genome(layout, grng, 0.5 + 0.02 * (trial % 40));
    GrowthConfig cfg;
    cfg.inhibition_enabled = trial % 2 == 0;
    cfg.intrinsic_enabled = trial % 3 != 0;
    std::vector<std::size_t> lineage;
    Rng rng(trial);
    develop(g, obs, act, cfg, rng, [&](const DevGraph& s, std::size_t step) {
      if (step > 0) ++steps;
      for (const auto& c : s.cells()) {
        Vec onehot(obs + act, 0.0);
        if (c.lineage < obs + act) onehot[c.lineage] = 1.0;
        t.expect(c.lineage < obs + act && c.intrinsic == onehot, "intrinsic state is not the one-hot of its lineage");
        if (c.id < lineage.size()) t.expect(c.lineage == lineage[c.id], "lineage changed");
        if (c.id < obs + act) t.expect(c.lineage == c.id, "founder lineage");
      }
      for (std::size_t i = lineage.size(); i < s.size(); ++i) lineage.push_back(s.cell(i).lineage);
    });
  }
}

void inhibited_silence(Tally& t) {
  Rng grng(14);
  std::size_t seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const NdpLayout layout(6);
    const NdpGenome g = random_genome(layout, grng, 0.6);
    std::vector<DevGraph> snaps;
    std::vector<StepRecord> records;
    Rng rng(200 + trial);
    develop(g, 4, 2, GrowthConfig{}, rng, [&](const DevGraph& s, std::size_t) { snaps.push_back(s); }, &records);
    for (std::size_t s = 0; s < records.size(); ++s) {
      const DevGraph& before = snaps[s];
      const DevGraph& after = snaps[s + 1];
      for (CellId c = 0; c < before.size(); ++c) {
        const Cell& b = before.cell(c);
        const auto& rec = records[s].cells[c];
        if (b.inhibited(ActionKind::Differentiate)) {
          ++seen;
          t.expect(!rec.differentiated && after.cell(c).extrinsic == b.extrinsic, "inhibited cell differentiated");
        }
        if (b.inhibited(ActionKind::Grow))
          t.expect(!rec.grow_decision && !rec.child, "inhibited cell grew");
        if (b.inhibited(ActionKind::UpdateEdge)) {
          bool same = rec.edges_updated == 0;
          for (CellId d = 0; d < before.size(); ++d)
            same = same && after.has_edge(c, d) == before.has_edge(c, d) && after.weight(c, d) == before.weight(c, d);
          t.expect(same, "inhibited cell updated its edges");
        }
      }
    }
  }
  t.expect(seen > 0, "no inhibited cells observed");
}

void es_properties(Tally& t) {
  EsConfig c;
  c.population_size = 16;
  Rng rng(15);
  EsState s = es_init(9, c);
  double prev = s.best_fitness;
  for (int gen = 0; gen < 50; ++gen) {
    const Population pop = es_ask(s, c, rng);
    Vec f = test::random_vec(rng, 16, 5.0);
    if (gen % 5 == 0) f[2] = NAN;
    Vec g(16), h(16);
    for (std::size_t i = 0; i < 16; ++i) {
      g[i] = std::isnan(f[i]) ? f[i] : std::exp(f[i] / 5.0);
      h[i] = std::isnan(f[i]) ? f[i] : 2.0 * f[i] * f[i] * f[i] - 7.0;
    }
    const EsState a = es_tell(s, pop, f, c);
    t.expect(a.mean == es_tell(s, pop, g, c).mean && a.mean == es_tell(s, pop, h, c).mean,
             "update changed under a monotone fitness transform");
    t.expect(a.best_fitness >= prev, "best-so-far fitness decreased");
    prev = a.best_fitness;
    s = a;
  }
}

void diversity_oracle(Tally& t) {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 37, d = 1 + trial % 8, k = 1 + trial % 12;
    std::vector<Vec> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(test::random_vec(rng, d));
    const double want = test::diversity_oracle(s, k);
    t.expect(std::abs(*neuronal_diversity(s, k) - want) <= kOracleTol * std::max(1.0, want),
             "neuronal_diversity differs from oracle");
  }
}

Outcome invariants() {
  std::vector<std::pair<const char*, std::function<void(Tally&)>>> parts = {
      {"attention/forward oracles", attention_and_forward_oracles},
      {"flatten identity", flatten_identity},
      {"lineage/one-hot", lineage_and_onehot},
      {"inhibited silence", inhibited_silence},
      {"es monotone/rank invariance", es_properties},
      {"diversity oracle", diversity_oracle},
  };
  std::string detail;
  bool pass = true;
  for (auto& [name, fn] : parts) {
    Tally t;
    fn(t);
    pass = pass && t.ok();
    detail += fmt("%s%s %zu/%zu", detail.empty() ? "" : "; ", name, t.checks - t.failures, t.checks);
    if (!t.ok()) detail += " (" + t.first + ")";
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- homogeneity

Outcome homogeneity() {
  Rng grng(17);
  std::size_t uniform = 0;
  const std::size_t genomes = 100;
  for (std::size_t trial = 0; trial < genomes; ++trial) {
    const NdpLayout layout(5);
    const NdpGenome g = random_genome(layout, grng, 0.8);
    GrowthConfig cfg;
    cfg.intrinsic_enabled = false;
    cfg.inhibition_enabled = false;
    DevGraph graph(4, 1);
    const Vec shared = test::uniform_vec(grng, 8);
    for (int i = 0; i < 5; ++i) graph.add_founder(i < 4 ? CellRole::Observation : CellRole::Action, shared);
    if (trial % 2)
      for (CellId s = 0; s < 5; ++s)
        for (CellId d = 0; d < 5; ++d) graph.set_edge(s, d, 0.1);
    bool same = true;
    for (std::size_t step = 0; step < cfg.growth_steps; ++step) {
      StepRecord r;
      grow_step(graph, layout, g, cfg, &r);
      const auto& c0 = r.cells.front();
      for (const auto& c : r.cells)
        same = same && c.differentiated == c0.differentiated && c.grow_decision == c0.grow_decision &&
               c.synaptogenesis_ran == c0.synaptogenesis_ran;
      for (const auto& c : graph.cells()) same = same && c.extrinsic == graph.cell(0).extrinsic;
    }
    if (same) ++uniform;
  }
  return {uniform == genomes, fmt("identical decisions at every step for %zu/%zu genomes", uniform, genomes)};
}

// ------------------------------------------------------------------ diversity

Outcome diversity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t collapsed = 0, wins = 0;
  std::string values;
  for (std::size_t seed = 0; seed < kDiversitySeeds; ++seed) {
    RunConfig base;
    base.env = "point_reacher";
    base.es.population_size = 32;
    base.es.generations = 20;
    base.master_seed = seed;
    base.run_dir = kWork / fmt("diversity_%zu", seed);
    fs::remove_all(base.run_dir);
    const DiversityResult r = cmd_diversity(base);
    const double w0 = r.without_inhibition.front().value_or(NAN);
    const double wT = r.without_inhibition.back().value_or(NAN);
    const double iT = r.with_inhibition.back().value_or(NAN);
    if (wT < kCollapseFraction * w0) ++collapsed;
    if (iT > wT) ++wins;
    values += fmt(" [%.3g->%.3g | %.3g]", w0, wT, iT);
  }
  const double secs = seconds_since(t0);
  const bool pass = collapsed >= kCollapseMin && wins >= kInhibitionWinsMin && secs < kDiversityBudgetSeconds;
  return {pass, fmt("collapse <10%% of step 0 in %zu/%zu seeds, inhibition higher in %zu/%zu, %.0f s;",
                    collapsed, kDiversitySeeds, wins, kDiversitySeeds, secs) +
                    " per seed [no-inh step0->final | inh final]:" + values};
}

// ------------------------------------------------------------ trained policies

struct TrainOutcome {
  double peak = -INFINITY;
  double seconds = 0.0;
};

TrainOutcome train_cartpole(Encoding enc, bool inhibition, std::uint64_t seed) {
  RunConfig c;
  c.env = "cartpole";
  c.encoding.encoding = enc;
  c.encoding.growth.inhibition_enabled = inhibition;
  c.master_seed = seed;
  c.run_dir = kWork / fmt("train_%s_%s_%llu", encoding_name(enc).c_str(), inhibition ? "inh" : "noinh",
                          static_cast<unsigned long long>(seed));
  fs::remove_all(c.run_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const TrainResult r = cmd_train(c);
  TrainOutcome o;
  o.seconds = seconds_since(t0);
  for (const auto& e : r.evals) o.peak = std::max(o.peak, e.mean);
  return o;
}

std::string seed_list(const std::vector<TrainOutcome>& v) {
  std::string s;
  for (const auto& o : v) s += fmt(" %.1f (%.0f s)", o.peak, o.seconds);
  return s;
}

Outcome intrinsic() {
  std::vector<TrainOutcome> with, without;
  std::size_t solved = 0, trivial = 0;
  bool in_budget = true;
  for (std::size_t seed = 0; seed < kTrainSeeds; ++seed) {
    with.push_back(train_cartpole(Encoding::Ndp, true, seed));
    without.push_back(train_cartpole(Encoding::NdpNoIntrinsic, false, seed));
    if (with.back().peak >= kSolvedReturn) ++solved;
    if (without.back().peak < kTrivialReturn) ++trivial;
    in_budget = in_budget && with.back().seconds < kSeedBudgetSeconds && without.back().seconds < kSeedBudgetSeconds;
  }
  const bool pass = solved >= kTrainMajority && trivial >= kTrainMajority && in_budget;
  return {pass, fmt("ndp peak eval >= 450 in %zu/%zu seeds:", solved, kTrainSeeds) + seed_list(with) +
                    fmt("; ndp_no_intrinsic (no inhibition) peak < 200 in %zu/%zu seeds:", trivial, kTrainSeeds) +
                    seed_list(without)};
}

Outcome baselines() {
  std::vector<TrainOutcome> direct, one_shot;
  std::size_t d_ok = 0, o_ok = 0;
  for (std::size_t seed = 0; seed < kTrainSeeds; ++seed) {
    direct.push_back(train_cartpole(Encoding::Direct, true, seed));
    one_shot.push_back(train_cartpole(Encoding::OneShot, true, seed));
    if (direct.back().peak >= kSolvedReturn) ++d_ok;
    if (one_shot.back().peak >= kSolvedReturn) ++o_ok;
  }
  const bool pass = d_ok >= kTrainMajority && o_ok >= kTrainMajority;
  return {pass, fmt("direct peak eval >= 450 in %zu/%zu seeds:", d_ok, kTrainSeeds) + seed_list(direct) +
                    fmt("; one_shot in %zu/%zu seeds:", o_ok, kTrainSeeds) + seed_list(one_shot)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"determinism", determinism}, {"invariants", invariants}, {"homogeneity", homogeneity},
      {"diversity", diversity},     {"intrinsic", intrinsic},   {"baselines", baselines},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  fs::create_directories(kWork);
  int failed = 0, ran = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && only != name) continue;
    ++ran;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %-12s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
