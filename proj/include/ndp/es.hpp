#pragma once

// OpenAI-style evolution strategy: antithetic Gaussian perturbations,
// centered-rank fitness shaping, plain gradient ascent on the mean.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "ndp/nn.hpp"
#include "ndp/rng.hpp"

namespace ndp {

struct EsConfig {
  std::size_t population_size = 256;
  double learning_rate = 0.1;
  double sigma_init = 0.1;
  double sigma_decay = 0.999;
  std::size_t generations = 300;
  std::size_t eval_episodes = 3;

  void validate() const;
};

struct EsState {
  ParamVector mean;
  double sigma = 0.0;
  std::size_t generation = 0;
  double best_fitness = -std::numeric_limits<double>::infinity();
  ParamVector best_genome;
};

// Zero mean, sigma = sigma_init.
EsState es_init(std::size_t dim, const EsConfig& config);

struct Population {
  std::vector<ParamVector> candidates;  // [2k] = mean + sigma*eps_k, [2k+1] = mean - sigma*eps_k
  std::vector<ParamVector> noise;       // eps_k, population_size / 2 entries
};

Population es_ask(const EsState& state, const EsConfig& config, Rng& rng);

// Ranks mapped to [-0.5, 0.5]; ties share their average rank, non-finite
// fitness ranks below everything else.
Vec centered_ranks(std::span<const double> fitness);

EsState es_tell(EsState state, const Population& population, std::span<const double> fitness,
                const EsConfig& config);

}  // namespace ndp
