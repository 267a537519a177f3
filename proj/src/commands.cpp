#include "ndp/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "ndp/error.hpp"

namespace ndp {

namespace fs = std::filesystem;

namespace {

struct GenerationStats {
  double best = 0.0, mean = 0.0, std = 0.0;
  std::size_t best_index = 0;
};

GenerationStats summarize(const std::vector<double>& f) {
  GenerationStats s;
  s.best = -INFINITY;
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += f[i];
    if (f[i] > s.best) {
      s.best = f[i];
      s.best_index = i;
    }
  }
  s.mean = sum / static_cast<double>(f.size());
  double sq = 0.0;
  for (double v : f) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(f.size()));
  return s;
}

std::vector<std::optional<double>> growth_diversity(const ParamVector& genome, const RunConfig& cfg,
                                                    const EnvSpec& env, std::uint64_t seed) {
  std::vector<std::optional<double>> out;
  develop_genome(genome, cfg.encoding, env, seed,
                 [&](const DevGraph& g, std::size_t) { out.push_back(neuronal_diversity(extrinsic_states(g))); });
  return out;
}

void write_snapshot(const RunConfig& cfg) {
  std::ofstream os(cfg.run_dir / kConfigSnapshot, std::ios::trunc);
  if (!os) throw ConfigError("cannot write config snapshot in " + cfg.run_dir.string());
  os << to_json(cfg).dump(2) << '\n';
}

}  // namespace

TrainResult cmd_train(const RunConfig& cfg, const TrainOptions& opt) {
  cfg.validate();
  const EnvSpec env = cfg.env_spec();
  const std::size_t dim = genome_length(cfg.encoding, env);
  const std::uint64_t hash = config_hash(cfg);

  std::error_code ec;
  fs::create_directories(cfg.run_dir, ec);
  if (ec) throw ConfigError("cannot create run directory " + cfg.run_dir.string() + ": " + ec.message());

  EsState state = es_init(dim, cfg.es);
  const fs::path ckpt_path = cfg.run_dir / kCheckpointFile;
  std::optional<std::size_t> resume_at;
  if (opt.resume && fs::exists(ckpt_path)) {
    Checkpoint c = read_checkpoint(ckpt_path);
    if (c.config_hash != hash) throw ConfigError("checkpoint was written by a different configuration");
    if (c.state.mean.size() != dim) throw ConfigError("checkpoint genome length does not match configuration");
    state = std::move(c.state);
    resume_at = state.generation;
  }
  write_snapshot(cfg);
  RunLogger log(cfg.run_dir, resume_at);

  TrainResult result;
  ParamVector last_best = state.best_genome;
  const bool developmental = is_developmental(cfg.encoding.encoding);

  while (state.generation < cfg.es.generations) {
    const std::size_t gen = state.generation;
    Rng ask_rng(derive_seed(cfg.master_seed, Stream::Ask, gen));
    const Population pop = es_ask(state, cfg.es, ask_rng);
    const auto fitness =
        evaluate_population(pop.candidates, cfg.encoding, env, cfg.es.eval_episodes, cfg.master_seed, gen, cfg.workers);
    const GenerationStats gs = summarize(fitness);
    log.fitness(gen, gs.best, gs.mean, gs.std);
    last_best = pop.candidates[gs.best_index];
    state = es_tell(std::move(state), pop, fitness, cfg.es);

    const std::size_t done = state.generation;
    if (done % cfg.eval_interval == 0 || done == cfg.es.generations) {
      const auto ev = evaluate_episodes(last_best, cfg.encoding, env, cfg.eval_episodes,
                                        derive_seed(cfg.master_seed, Stream::Eval, gen));
      log.eval(gen, ev.mean, ev.std);
      result.evals.push_back({gen, ev.mean, ev.std});
      if (developmental) {
        const auto div = growth_diversity(last_best, cfg, env, derive_seed(cfg.master_seed, Stream::Diversity, gen));
        log.diversity({DiversityContext::PerGeneration, gen, div.back()});
      }
      write_checkpoint(ckpt_path, {hash, state});
      if (opt.progress)
        *opt.progress << "gen " << gen << " best " << gs.best << " mean " << gs.mean << " eval " << ev.mean
                      << " +- " << ev.std << std::endl;
    }
  }

  if (developmental) {
    result.growth_diversity =
        growth_diversity(last_best, cfg, env, derive_seed(cfg.master_seed, Stream::Diversity, cfg.es.generations));
    for (std::size_t s = 0; s < result.growth_diversity.size(); ++s)
      log.diversity({DiversityContext::PerGrowthStep, s, result.growth_diversity[s]});
  }
  write_checkpoint(ckpt_path, {hash, state});
  result.state = std::move(state);
  return result;
}

namespace {

std::pair<RunConfig, Checkpoint> load_run(const fs::path& checkpoint) {
  Checkpoint c = read_checkpoint(checkpoint);
  const fs::path cfg_path = checkpoint.parent_path() / kConfigSnapshot;
  RunConfig cfg = load_config(cfg_path);
  if (config_hash(cfg) != c.config_hash) throw ConfigError("checkpoint does not match " + cfg_path.string());
  if (c.state.best_genome.size() != genome_length(cfg.encoding, cfg.env_spec()))
    throw ConfigError("checkpoint genome length does not match configuration");
  return {std::move(cfg), std::move(c)};
}

}  // namespace

EvalSummary cmd_eval(const fs::path& checkpoint, std::size_t episodes, std::uint64_t seed) {
  if (episodes < 1) throw ConfigError("episodes must be >= 1");
  auto [cfg, ckpt] = load_run(checkpoint);
  const auto s = evaluate_episodes(ckpt.state.best_genome, cfg.encoding, cfg.env_spec(), episodes, seed);
  return {s.mean, s.std, s.returns};
}

std::vector<fs::path> cmd_trace(const fs::path& checkpoint, std::uint64_t seed, const fs::path& out_dir) {
  auto [cfg, ckpt] = load_run(checkpoint);
  if (!is_developmental(cfg.encoding.encoding)) throw ConfigError("trace requires an ndp encoding");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create trace directory " + out_dir.string());
  std::vector<fs::path> files;
  develop_genome(ckpt.state.best_genome, cfg.encoding, cfg.env_spec(), seed, [&](const DevGraph& g, std::size_t step) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%02zu.json", step);
    const fs::path p = out_dir / name;
    std::ofstream os(p, std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + p.string());
    os << graph_snapshot_json(g, step) << '\n';
    files.push_back(p);
  });
  return files;
}

std::pair<RunConfig, RunConfig> diversity_conditions(const RunConfig& base) {
  RunConfig with = base;
  with.encoding.encoding = Encoding::NdpNoIntrinsic;
  RunConfig without = with;
  with.encoding.growth.inhibition_enabled = true;
  without.encoding.growth.inhibition_enabled = false;
  with.run_dir = base.run_dir / "inhibition";
  without.run_dir = base.run_dir / "no_inhibition";
  return {with, without};
}

DiversityResult cmd_diversity(const RunConfig& base, std::ostream* progress) {
  auto [with, without] = diversity_conditions(base);
  TrainOptions opt;
  opt.progress = progress;
  DiversityResult r;
  r.with_inhibition = cmd_train(with, opt).growth_diversity;
  r.without_inhibition = cmd_train(without, opt).growth_diversity;

  std::ofstream os(base.run_dir / "diversity_paired.csv", std::ios::trunc);
  if (!os) throw ConfigError("cannot write diversity_paired.csv");
  os << "step,with_inhibition,without_inhibition\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  for (std::size_t s = 0; s < r.with_inhibition.size(); ++s)
    os << s << ',' << cell(r.with_inhibition[s]) << ',' << cell(r.without_inhibition[s]) << '\n';
  return r;
}

}  // namespace ndp
