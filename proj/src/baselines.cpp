#include "ndp/baselines.hpp"

#include <cmath>
#include <numeric>
#include <omp.h>

#include "ndp/error.hpp"
#include "ndp/growth.hpp"

namespace ndp {

namespace {

void check_dims(std::size_t obs_dim, std::size_t act_dim, std::size_t n) {
  require(obs_dim >= 1 && act_dim >= 1, "baseline: obs_dim and act_dim must be >= 1");
  require(n >= obs_dim + act_dim, "baseline: neuron count below obs_dim + act_dim");
}

Policy with_roles(Vec w, std::size_t obs_dim, std::size_t act_dim, std::size_t n) {
  std::vector<std::size_t> obs(obs_dim), act(act_dim);
  std::iota(obs.begin(), obs.end(), 0);
  std::iota(act.begin(), act.end(), obs_dim);
  return Policy(n, std::move(w), std::move(obs), std::move(act));
}

}  // namespace

std::size_t direct_genome_length(std::size_t n) { return n * n; }

Policy build_direct(std::span<const double> genome, std::size_t obs_dim, std::size_t act_dim, std::size_t n) {
  check_dims(obs_dim, act_dim, n);
  require(genome.size() == direct_genome_length(n), "build_direct: genome length must be n*n");
  return with_roles(Vec(genome.begin(), genome.end()), obs_dim, act_dim, n);
}

MlpSpec one_shot_spec(std::size_t n) { return MlpSpec({2 * n, 16, 16, 1}, Activation::Relu, Activation::Linear); }

std::size_t one_shot_genome_length(std::size_t n) { return mlp_param_count(one_shot_spec(n)); }

Policy build_one_shot(std::span<const double> genome, std::size_t obs_dim, std::size_t act_dim, std::size_t n) {
  check_dims(obs_dim, act_dim, n);
  const MlpSpec spec = one_shot_spec(n);
  require(genome.size() == mlp_param_count(spec), "build_one_shot: genome length mismatch");

  std::vector<Vec> codes(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) codes[i][i] = 1.0;
  const PairKernel kernel(spec, genome, codes);

  // by source: src_rows[j * n + i] = E(j, i), transposed into W below
  Vec src_rows(n * n);
  bool finite = true;
#pragma omp parallel for schedule(static) if (!omp_in_parallel()) reduction(&& : finite)
  for (std::size_t j = 0; j < n; ++j) {
    std::span<double> row(src_rows.data() + j * n, n);
    kernel.row(j, row);
    for (double w : row) finite = finite && std::isfinite(w);
  }
  if (!finite) throw InfiniteWeight();

  Vec w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = src_rows[j * n + i];
  return with_roles(std::move(w), obs_dim, act_dim, n);
}

Policy build_one_shot_reference(std::span<const double> genome, std::size_t obs_dim, std::size_t act_dim,
                                std::size_t n) {
  check_dims(obs_dim, act_dim, n);
  const MlpSpec spec = one_shot_spec(n);
  Vec w(n * n);
  Vec pair(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(pair.begin(), pair.end(), 0.0);
      pair[j] = 1.0;
      pair[n + i] = 1.0;
      const double v = mlp_forward(spec, genome, pair)[0];
      if (!std::isfinite(v)) throw InfiniteWeight();
      w[i * n + j] = v;
    }
  }
  return with_roles(std::move(w), obs_dim, act_dim, n);
}

}  // namespace ndp
