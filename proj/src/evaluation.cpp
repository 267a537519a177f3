#include "ndp/evaluation.hpp"

#include <cmath>
#include <omp.h>

#include "ndp/baselines.hpp"
#include "ndp/error.hpp"

namespace ndp {

Encoding parse_encoding(std::string_view name) {
  if (name == "ndp") return Encoding::Ndp;
  if (name == "ndp_no_intrinsic") return Encoding::NdpNoIntrinsic;
  if (name == "direct") return Encoding::Direct;
  if (name == "one_shot") return Encoding::OneShot;
  throw ConfigError("unknown encoding '" + std::string(name) + "'");
}

std::string encoding_name(Encoding e) {
  switch (e) {
    case Encoding::Ndp: return "ndp";
    case Encoding::NdpNoIntrinsic: return "ndp_no_intrinsic";
    case Encoding::Direct: return "direct";
    case Encoding::OneShot: return "one_shot";
  }
  return "?";
}

bool is_developmental(Encoding e) { return e == Encoding::Ndp || e == Encoding::NdpNoIntrinsic; }

GrowthConfig EncodingConfig::effective_growth() const {
  GrowthConfig g = growth;
  g.intrinsic_enabled = encoding == Encoding::Ndp;
  return g;
}

std::size_t genome_length(const EncodingConfig& enc, const EnvSpec& env) {
  switch (enc.encoding) {
    case Encoding::Ndp:
    case Encoding::NdpNoIntrinsic:
      return NdpLayout(env.obs_dim + env.act_dim, enc.growth.extrinsic_dim).genome_length();
    case Encoding::Direct: return direct_genome_length(enc.neurons);
    case Encoding::OneShot: return one_shot_genome_length(enc.neurons);
  }
  return 0;
}

DevGraph develop_genome(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                        std::uint64_t develop_seed, const GrowthHook& hook) {
  require(is_developmental(enc.encoding), "develop_genome: encoding is not developmental");
  const GrowthConfig growth = enc.effective_growth();
  const NdpLayout layout(env.obs_dim + env.act_dim, growth.extrinsic_dim);
  const NdpGenome g = NdpGenome::from_flat(layout, genome);
  Rng rng(develop_seed);
  return develop(g, env.obs_dim, env.act_dim, growth, rng, hook);
}

Policy build_policy(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                    std::uint64_t develop_seed) {
  require(genome.size() == genome_length(enc, env), "build_policy: genome length mismatch");
  switch (enc.encoding) {
    case Encoding::Ndp:
    case Encoding::NdpNoIntrinsic: return compile(develop_genome(genome, enc, env, develop_seed));
    case Encoding::Direct: return build_direct(genome, env.obs_dim, env.act_dim, enc.neurons);
    case Encoding::OneShot: return build_one_shot(genome, env.obs_dim, env.act_dim, enc.neurons);
  }
  throw ContractViolation("build_policy: unknown encoding");
}

EpisodeStats evaluate_episodes(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                               std::size_t episodes, std::uint64_t seed) {
  require(episodes >= 1, "evaluate: episodes must be >= 1");
  EpisodeStats s;
  s.returns.assign(episodes, env.worst_return);
  bool built = true;
  Policy policy;
  try {
    policy = build_policy(genome, enc, env, derive_seed(seed, Stream::Develop, 0));
  } catch (const InfiniteWeight&) {
    built = false;
  }
  if (built) {
    for (std::size_t e = 0; e < episodes; ++e) {
      Rng rng(derive_seed(seed, Stream::Episode, e));
      s.returns[e] = rollout(policy, env, env.max_steps, rng);
    }
  }
  double sum = 0.0;
  for (double r : s.returns) sum += r;
  s.mean = sum / static_cast<double>(episodes);
  double sq = 0.0;
  for (double r : s.returns) sq += (r - s.mean) * (r - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(episodes));
  return s;
}

double evaluate(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                std::size_t episodes, std::uint64_t seed) {
  return evaluate_episodes(genome, enc, env, episodes, seed).mean;
}

std::uint64_t candidate_seed(std::uint64_t master_seed, std::size_t generation, std::size_t index) {
  return derive_seed(master_seed, Stream::Candidate, generation, index);
}

std::vector<double> evaluate_population_serial(const std::vector<ParamVector>& candidates,
                                               const EncodingConfig& enc, const EnvSpec& env,
                                               std::size_t episodes, std::uint64_t master_seed,
                                               std::size_t generation) {
  std::vector<double> f(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    f[i] = evaluate(candidates[i], enc, env, episodes, candidate_seed(master_seed, generation, i));
  return f;
}

std::vector<double> evaluate_population(const std::vector<ParamVector>& candidates, const EncodingConfig& enc,
                                        const EnvSpec& env, std::size_t episodes, std::uint64_t master_seed,
                                        std::size_t generation, int workers) {
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
  std::vector<double> f(candidates.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    f[k] = evaluate(candidates[k], enc, env, episodes, candidate_seed(master_seed, generation, k));
  }
  return f;
}

}  // namespace ndp
