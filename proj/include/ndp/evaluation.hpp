#pragma once

// Genome -> policy -> fitness, and the population evaluation kernels: an
// OpenMP version used for training and a serial reference kept for testing.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ndp/envs.hpp"
#include "ndp/es.hpp"
#include "ndp/growth.hpp"
#include "ndp/phenotype.hpp"

namespace ndp {

enum class Encoding { Ndp, NdpNoIntrinsic, Direct, OneShot };

Encoding parse_encoding(std::string_view name);  // throws ConfigError
std::string encoding_name(Encoding e);
bool is_developmental(Encoding e);

struct EncodingConfig {
  Encoding encoding = Encoding::Ndp;
  GrowthConfig growth;  // NDP encodings only; intrinsic_enabled follows the encoding
  std::size_t neurons = 100;  // direct / one-shot network size

  GrowthConfig effective_growth() const;
};

std::size_t genome_length(const EncodingConfig& enc, const EnvSpec& env);

// Throws InfiniteWeight for NDP / one-shot genomes producing non-finite weights.
Policy build_policy(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                    std::uint64_t develop_seed);

// Develops an NDP genome with the seed evaluate() would use.
DevGraph develop_genome(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                        std::uint64_t develop_seed, const GrowthHook& hook = {});

// Build once, then average `episodes` rollouts. Every random draw is derived
// from `seed`; failures map to env.worst_return.
double evaluate(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                std::size_t episodes, std::uint64_t seed);

struct EpisodeStats {
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> returns;
};

// Per-episode returns for a fixed build (used by periodic evaluation and cmd_eval).
EpisodeStats evaluate_episodes(std::span<const double> genome, const EncodingConfig& enc, const EnvSpec& env,
                               std::size_t episodes, std::uint64_t seed);

std::uint64_t candidate_seed(std::uint64_t master_seed, std::size_t generation, std::size_t index);

std::vector<double> evaluate_population_serial(const std::vector<ParamVector>& candidates,
                                               const EncodingConfig& enc, const EnvSpec& env,
                                               std::size_t episodes, std::uint64_t master_seed,
                                               std::size_t generation);

// workers == 0 uses the OpenMP default thread count.
std::vector<double> evaluate_population(const std::vector<ParamVector>& candidates, const EncodingConfig& enc,
                                        const EnvSpec& env, std::size_t episodes, std::uint64_t master_seed,
                                        std::size_t generation, int workers = 0);

}  // namespace ndp
