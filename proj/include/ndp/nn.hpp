#pragma once

// Dense MLP and single-layer graph attention primitives on flat parameter
// vectors. Parameter layout (fixed): layer-major; within a layer the weight
// matrix row-major (out x in), bias last.

#include <cstddef>
#include <span>
#include <vector>

namespace ndp {

using ParamVector = std::vector<double>;
using Vec = std::vector<double>;

enum class Activation { Linear, Relu, Tanh };

double activate(Activation a, double x);

struct MlpSpec {
  std::vector<std::size_t> layer_sizes;  // input, hidden..., output
  Activation hidden = Activation::Relu;
  Activation output = Activation::Linear;

  MlpSpec() = default;
  MlpSpec(std::vector<std::size_t> sizes, Activation hidden_act, Activation output_act);

  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }
};

std::size_t mlp_param_count(const MlpSpec& spec);

Vec mlp_forward(const MlpSpec& spec, std::span<const double> params, std::span<const double> input);

// Single GAT layer. Per head h (head_dim = out_dim / heads):
//   z_j   = W_h x_j
//   e_ij  = leaky_relu(a_dst_h . z_i + a_src_h . z_j)
//   alpha = softmax over the in-neighbourhood of i
//   y_i   = act(concat_h(sum_j alpha_ij z_j) + bias)
// Layout: for each head [W_h row-major, a_src_h, a_dst_h], then bias(out_dim).
struct GatSpec {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::size_t heads = 1;
  double negative_slope = 0.2;
  Activation output = Activation::Tanh;

  GatSpec() = default;
  GatSpec(std::size_t in, std::size_t out, std::size_t n_heads = 1, Activation output_act = Activation::Tanh);

  std::size_t head_dim() const { return out_dim / heads; }
};

std::size_t gat_param_count(const GatSpec& spec);

using Neighbourhoods = std::vector<std::vector<std::size_t>>;

// coefficients[node][head][k] pairs with in_neighbors[node][k].
using AttentionCoefficients = std::vector<std::vector<Vec>>;

AttentionCoefficients gat_attention(const GatSpec& spec, std::span<const double> params,
                                    const std::vector<Vec>& node_states, const Neighbourhoods& in_neighbors);

std::vector<Vec> gat_forward(const GatSpec& spec, std::span<const double> params,
                             const std::vector<Vec>& node_states, const Neighbourhoods& in_neighbors);

// Structured view of an MLP's parameters; flatten/unflatten are exact inverses.
struct DenseLayer {
  std::size_t in = 0, out = 0;
  Vec weights;  // row-major out x in
  Vec bias;
  bool operator==(const DenseLayer&) const = default;
};

std::vector<DenseLayer> unflatten_mlp(const MlpSpec& spec, std::span<const double> params);
ParamVector flatten_mlp(const std::vector<DenseLayer>& layers);

struct GatHead {
  Vec weights;  // head_dim x in_dim
  Vec att_src;
  Vec att_dst;
  bool operator==(const GatHead&) const = default;
};

struct GatParams {
  std::vector<GatHead> heads;
  Vec bias;
  bool operator==(const GatParams&) const = default;
};

GatParams unflatten_gat(const GatSpec& spec, std::span<const double> params);
ParamVector flatten_gat(const GatParams& p);

}  // namespace ndp
