// ndp: train, evaluate, trace and measure developmental policies.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime failure.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "ndp/commands.hpp"
#include "ndp/error.hpp"

namespace {

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> encoding;
  std::optional<std::string> env;
  std::optional<int> workers;
  std::optional<std::string> run_dir;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;
  bool resume = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--encoding", f.encoding, "ndp | ndp_no_intrinsic | direct | one_shot");
  cmd->add_option("--env", f.env, "cartpole | pendulum | point_reacher");
  cmd->add_option("--workers", f.workers, "evaluation threads (0 = all cores)");
  cmd->add_option("--run-dir", f.run_dir, "output directory");
  cmd->add_option("--generations", f.generations, "ES generations");
  cmd->add_option("--population", f.population, "ES population size");
}

ndp::RunConfig resolve(const RunFlags& f) {
  ndp::RunConfig c = f.config.empty() ? ndp::RunConfig{} : ndp::load_config(f.config);
  if (f.seed) c.master_seed = *f.seed;
  if (f.encoding) c.encoding.encoding = ndp::parse_encoding(*f.encoding);
  if (f.env) c.env = *f.env;
  if (f.workers) c.workers = *f.workers;
  if (f.run_dir) c.run_dir = *f.run_dir;
  if (f.generations) c.es.generations = *f.generations;
  if (f.population) c.es.population_size = *f.population;
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural developmental programs grown by evolution strategies"};
  app.require_subcommand(1);

  RunFlags train_flags;
  auto* train = app.add_subcommand("train", "run the ES training loop");
  add_run_flags(train, train_flags);
  train->add_flag("--resume", train_flags.resume, "continue from run_dir/checkpoint.bin");

  std::string eval_ckpt;
  std::size_t eval_episodes = 10;
  std::uint64_t eval_seed = 0;
  auto* eval = app.add_subcommand("eval", "evaluate the best genome of a checkpoint");
  eval->add_option("--checkpoint", eval_ckpt, "checkpoint.bin path")->required();
  eval->add_option("--episodes", eval_episodes, "episodes");
  eval->add_option("--seed", eval_seed, "evaluation seed");

  std::string trace_ckpt, trace_out;
  std::uint64_t trace_seed = 0;
  auto* trace = app.add_subcommand("trace", "write per-step growth snapshots");
  trace->add_option("--checkpoint", trace_ckpt, "checkpoint.bin path")->required();
  trace->add_option("--seed", trace_seed, "development seed");
  trace->add_option("--out", trace_out, "output directory (default: <run_dir>/trace)");

  RunFlags div_flags;
  auto* diversity = app.add_subcommand("diversity", "inhibition vs no inhibition diversity experiment");
  add_run_flags(diversity, div_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*train) {
      const auto cfg = resolve(train_flags);
      ndp::TrainOptions opt;
      opt.resume = train_flags.resume;
      opt.progress = &std::cout;
      const auto r = ndp::cmd_train(cfg, opt);
      std::cout << "done: " << r.state.generation << " generations, best fitness " << r.state.best_fitness
                << ", run dir " << cfg.run_dir.string() << '\n';
    } else if (*eval) {
      const auto s = ndp::cmd_eval(eval_ckpt, eval_episodes, eval_seed);
      std::printf("return %.6f +- %.6f over %zu episodes\n", s.mean, s.std, s.returns.size());
    } else if (*trace) {
      const std::filesystem::path ckpt(trace_ckpt);
      const std::filesystem::path out = trace_out.empty() ? ckpt.parent_path() / "trace" : std::filesystem::path(trace_out);
      const auto files = ndp::cmd_trace(ckpt, trace_seed, out);
      std::cout << "wrote " << files.size() << " snapshots to " << out.string() << '\n';
    } else if (*diversity) {
      const auto cfg = resolve(div_flags);
      const auto r = ndp::cmd_diversity(cfg, &std::cout);
      auto fmt = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string("-"); };
      std::cout << "step  with_inhibition  without_inhibition\n";
      for (std::size_t s = 0; s < r.with_inhibition.size(); ++s)
        std::cout << s << "  " << fmt(r.with_inhibition[s]) << "  " << fmt(r.without_inhibition[s]) << '\n';
    }
  } catch (const ndp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
