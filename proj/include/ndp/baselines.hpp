#pragma once

// Comparison encodings: a direct encoding of all recurrent weights, and a
// single-shot indirect encoding where an EdgeModel maps fixed one-hot neuron
// codes to every weight of a fully connected network.

#include <cstddef>
#include <span>

#include "ndp/nn.hpp"
#include "ndp/phenotype.hpp"

namespace ndp {

inline constexpr std::size_t kDefaultBaselineNeurons = 100;

std::size_t direct_genome_length(std::size_t n);

// genome is W in row-major order (weights[i * n + j] = j -> i). The first
// obs_dim neurons observe, the next act_dim act.
Policy build_direct(std::span<const double> genome, std::size_t obs_dim, std::size_t act_dim, std::size_t n);

MlpSpec one_shot_spec(std::size_t n);
std::size_t one_shot_genome_length(std::size_t n);

// W[i][j] = E(onehot(j) ++ onehot(i)) for all ordered pairs, self-connections included.
// Throws InfiniteWeight on a non-finite weight.
Policy build_one_shot(std::span<const double> genome, std::size_t obs_dim, std::size_t act_dim, std::size_t n);

// Double loop over mlp_forward; kept as the reference for build_one_shot.
Policy build_one_shot_reference(std::span<const double> genome, std::size_t obs_dim, std::size_t act_dim,
                                std::size_t n);

}  // namespace ndp
