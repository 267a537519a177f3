#include "ndp/es.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ndp/error.hpp"

namespace ndp {

void EsConfig::validate() const {
  require(population_size >= 2 && population_size % 2 == 0, "EsConfig: population_size must be even and >= 2");
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "EsConfig: learning_rate must be positive");
  require(sigma_init > 0.0 && std::isfinite(sigma_init), "EsConfig: sigma_init must be positive");
  require(sigma_decay > 0.0 && sigma_decay <= 1.0, "EsConfig: sigma_decay must be in (0, 1]");
  require(generations >= 1, "EsConfig: generations must be >= 1");
  require(eval_episodes >= 1, "EsConfig: eval_episodes must be >= 1");
}

EsState es_init(std::size_t dim, const EsConfig& config) {
  EsState s;
  s.mean.assign(dim, 0.0);
  s.sigma = config.sigma_init;
  s.best_genome = s.mean;
  return s;
}

Population es_ask(const EsState& state, const EsConfig& config, Rng& rng) {
  require(config.population_size % 2 == 0, "es_ask: population_size must be even");
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t dim = state.mean.size();
  const std::size_t pairs = config.population_size / 2;
  Population pop;
  pop.noise.resize(pairs);
  pop.candidates.reserve(config.population_size);
  for (std::size_t k = 0; k < pairs; ++k) {
    ParamVector eps(dim);
    for (auto& e : eps) e = normal(rng);
    ParamVector plus(dim), minus(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      plus[i] = state.mean[i] + state.sigma * eps[i];
      minus[i] = state.mean[i] - state.sigma * eps[i];
    }
    pop.candidates.push_back(std::move(plus));
    pop.candidates.push_back(std::move(minus));
    pop.noise[k] = std::move(eps);
  }
  return pop;
}

Vec centered_ranks(std::span<const double> fitness) {
  const std::size_t n = fitness.size();
  Vec u(n, 0.0);
  if (n < 2) return u;
  auto key = [&](std::size_t i) {
    return std::isfinite(fitness[i]) ? fitness[i] : -std::numeric_limits<double>::infinity();
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && key(order[j + 1]) == key(order[i])) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) u[order[k]] = avg_rank / static_cast<double>(n - 1) - 0.5;
    i = j + 1;
  }
  return u;
}

EsState es_tell(EsState state, const Population& population, std::span<const double> fitness,
                const EsConfig& config) {
  const std::size_t n = population.candidates.size();
  require(fitness.size() == n, "es_tell: fitness count mismatch");
  require(population.noise.size() * 2 == n, "es_tell: noise count mismatch");
  const Vec u = centered_ranks(fitness);

  std::size_t best = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(fitness[i])) continue;
    if (best == n || fitness[i] > fitness[best]) best = i;
  }
  if (best < n && fitness[best] > state.best_fitness) {
    state.best_fitness = fitness[best];
    state.best_genome = population.candidates[best];
  }

  if (state.sigma > 0.0) {
    const std::size_t dim = state.mean.size();
    const double scale = config.learning_rate / (static_cast<double>(n) * state.sigma);
    Vec grad(dim, 0.0);
    for (std::size_t k = 0; k < population.noise.size(); ++k) {
      const double w = u[2 * k] - u[2 * k + 1];
      if (w == 0.0) continue;
      const auto& eps = population.noise[k];
      for (std::size_t i = 0; i < dim; ++i) grad[i] += w * eps[i];
    }
    for (std::size_t i = 0; i < dim; ++i) state.mean[i] += scale * grad[i];
  }
  state.sigma *= config.sigma_decay;
  ++state.generation;
  return state;
}

}  // namespace ndp
