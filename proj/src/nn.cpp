#include "ndp/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndp/error.hpp"

namespace ndp {

double activate(Activation a, double x) {
  switch (a) {
    case Activation::Linear: return x;
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Tanh: return std::tanh(x);
  }
  return x;
}

MlpSpec::MlpSpec(std::vector<std::size_t> sizes, Activation hidden_act, Activation output_act)
    : layer_sizes(std::move(sizes)), hidden(hidden_act), output(output_act) {
  require(layer_sizes.size() >= 2, "MlpSpec needs at least input and output sizes");
  for (auto s : layer_sizes) require(s >= 1, "MlpSpec layer sizes must be >= 1");
}

std::size_t mlp_param_count(const MlpSpec& spec) {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l)
    n += (spec.layer_sizes[l] + 1) * spec.layer_sizes[l + 1];
  return n;
}

Vec mlp_forward(const MlpSpec& spec, std::span<const double> params, std::span<const double> input) {
  require(params.size() == mlp_param_count(spec), "mlp_forward: parameter length mismatch");
  require(input.size() == spec.input_size(), "mlp_forward: input length mismatch");

  Vec cur(input.begin(), input.end());
  Vec next;
  std::size_t off = 0;
  const std::size_t n_layers = spec.layer_sizes.size() - 1;
  for (std::size_t l = 0; l < n_layers; ++l) {
    const std::size_t in = spec.layer_sizes[l];
    const std::size_t out = spec.layer_sizes[l + 1];
    const double* w = params.data() + off;
    const double* b = w + in * out;
    const Activation act = (l + 1 == n_layers) ? spec.output : spec.hidden;
    next.assign(out, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      double acc = b[o];
      const double* row = w + o * in;
      for (std::size_t i = 0; i < in; ++i) acc += row[i] * cur[i];
      next[o] = activate(act, acc);
    }
    off += (in + 1) * out;
    cur.swap(next);
  }
  return cur;
}

GatSpec::GatSpec(std::size_t in, std::size_t out, std::size_t n_heads, Activation output_act)
    : in_dim(in), out_dim(out), heads(n_heads), output(output_act) {
  require(in >= 1 && out >= 1 && n_heads >= 1, "GatSpec dimensions must be positive");
  require(out % n_heads == 0, "GatSpec out_dim must be divisible by heads");
}

std::size_t gat_param_count(const GatSpec& spec) {
  const std::size_t hd = spec.head_dim();
  return spec.heads * (hd * spec.in_dim + 2 * hd) + spec.out_dim;
}

namespace {

struct GatPrepared {
  // z[node][head*hd + k], per-node per-head src/dst scores
  std::vector<Vec> z;
  std::vector<Vec> score_src;
  std::vector<Vec> score_dst;
};

void check_gat_inputs(const GatSpec& spec, std::span<const double> params, const std::vector<Vec>& states,
                      const Neighbourhoods& nbrs) {
  require(params.size() == gat_param_count(spec), "gat_forward: parameter length mismatch");
  require(nbrs.size() == states.size(), "gat_forward: neighbourhood count mismatch");
  for (const auto& s : states) require(s.size() == spec.in_dim, "gat_forward: state length mismatch");
  for (const auto& nb : nbrs) {
    require(!nb.empty(), "gat_forward: empty neighbourhood");
    for (auto j : nb) require(j < states.size(), "gat_forward: neighbour index out of range");
  }
}

GatPrepared prepare(const GatSpec& spec, std::span<const double> params, const std::vector<Vec>& states) {
  const std::size_t hd = spec.head_dim();
  const std::size_t per_head = hd * spec.in_dim + 2 * hd;
  GatPrepared p;
  p.z.assign(states.size(), Vec(spec.out_dim, 0.0));
  p.score_src.assign(states.size(), Vec(spec.heads, 0.0));
  p.score_dst.assign(states.size(), Vec(spec.heads, 0.0));
  for (std::size_t n = 0; n < states.size(); ++n) {
    for (std::size_t h = 0; h < spec.heads; ++h) {
      const double* w = params.data() + h * per_head;
      const double* a_src = w + hd * spec.in_dim;
      const double* a_dst = a_src + hd;
      double ss = 0.0, sd = 0.0;
      for (std::size_t k = 0; k < hd; ++k) {
        double acc = 0.0;
        const double* row = w + k * spec.in_dim;
        for (std::size_t i = 0; i < spec.in_dim; ++i) acc += row[i] * states[n][i];
        p.z[n][h * hd + k] = acc;
        ss += a_src[k] * acc;
        sd += a_dst[k] * acc;
      }
      p.score_src[n][h] = ss;
      p.score_dst[n][h] = sd;
    }
  }
  return p;
}

Vec softmax_scores(const GatSpec& spec, const GatPrepared& p, std::size_t node, std::size_t head,
                   const std::vector<std::size_t>& nb) {
  Vec e(nb.size());
  double mx = -INFINITY;
  for (std::size_t k = 0; k < nb.size(); ++k) {
    double s = p.score_dst[node][head] + p.score_src[nb[k]][head];
    s = s > 0.0 ? s : spec.negative_slope * s;
    e[k] = s;
    mx = std::max(mx, s);
  }
  double sum = 0.0;
  for (auto& v : e) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (auto& v : e) v /= sum;
  return e;
}

}  // namespace

AttentionCoefficients gat_attention(const GatSpec& spec, std::span<const double> params,
                                    const std::vector<Vec>& node_states, const Neighbourhoods& in_neighbors) {
  check_gat_inputs(spec, params, node_states, in_neighbors);
  const auto p = prepare(spec, params, node_states);
  AttentionCoefficients out(node_states.size());
  for (std::size_t n = 0; n < node_states.size(); ++n) {
    out[n].resize(spec.heads);
    for (std::size_t h = 0; h < spec.heads; ++h) out[n][h] = softmax_scores(spec, p, n, h, in_neighbors[n]);
  }
  return out;
}

std::vector<Vec> gat_forward(const GatSpec& spec, std::span<const double> params,
                             const std::vector<Vec>& node_states, const Neighbourhoods& in_neighbors) {
  check_gat_inputs(spec, params, node_states, in_neighbors);
  const auto p = prepare(spec, params, node_states);
  const std::size_t hd = spec.head_dim();
  const double* bias = params.data() + params.size() - spec.out_dim;

  std::vector<Vec> out(node_states.size(), Vec(spec.out_dim, 0.0));
  for (std::size_t n = 0; n < node_states.size(); ++n) {
    const auto& nb = in_neighbors[n];
    for (std::size_t h = 0; h < spec.heads; ++h) {
      // z_n + sum_k alpha_k (z_k - z_n): equal to sum_k alpha_k z_k, and exact
      // when every neighbour carries the same state.
      const Vec alpha = softmax_scores(spec, p, n, h, nb);
      const Vec& zn = p.z[n];
      for (std::size_t d = 0; d < hd; ++d) {
        double acc = 0.0;
        for (std::size_t k = 0; k < nb.size(); ++k) acc += alpha[k] * (p.z[nb[k]][h * hd + d] - zn[h * hd + d]);
        out[n][h * hd + d] = zn[h * hd + d] + acc;
      }
    }
    for (std::size_t d = 0; d < spec.out_dim; ++d) out[n][d] = activate(spec.output, out[n][d] + bias[d]);
  }
  return out;
}

std::vector<DenseLayer> unflatten_mlp(const MlpSpec& spec, std::span<const double> params) {
  require(params.size() == mlp_param_count(spec), "unflatten_mlp: length mismatch");
  std::vector<DenseLayer> layers;
  std::size_t off = 0;
  for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l) {
    DenseLayer d;
    d.in = spec.layer_sizes[l];
    d.out = spec.layer_sizes[l + 1];
    d.weights.assign(params.begin() + off, params.begin() + off + d.in * d.out);
    off += d.in * d.out;
    d.bias.assign(params.begin() + off, params.begin() + off + d.out);
    off += d.out;
    layers.push_back(std::move(d));
  }
  return layers;
}

ParamVector flatten_mlp(const std::vector<DenseLayer>& layers) {
  ParamVector v;
  for (const auto& l : layers) {
    require(l.weights.size() == l.in * l.out && l.bias.size() == l.out, "flatten_mlp: malformed layer");
    v.insert(v.end(), l.weights.begin(), l.weights.end());
    v.insert(v.end(), l.bias.begin(), l.bias.end());
  }
  return v;
}

GatParams unflatten_gat(const GatSpec& spec, std::span<const double> params) {
  require(params.size() == gat_param_count(spec), "unflatten_gat: length mismatch");
  const std::size_t hd = spec.head_dim();
  GatParams g;
  auto it = params.begin();
  for (std::size_t h = 0; h < spec.heads; ++h) {
    GatHead head;
    head.weights.assign(it, it + hd * spec.in_dim);
    it += hd * spec.in_dim;
    head.att_src.assign(it, it + hd);
    it += hd;
    head.att_dst.assign(it, it + hd);
    it += hd;
    g.heads.push_back(std::move(head));
  }
  g.bias.assign(it, params.end());
  return g;
}

ParamVector flatten_gat(const GatParams& p) {
  ParamVector v;
  for (const auto& h : p.heads) {
    v.insert(v.end(), h.weights.begin(), h.weights.end());
    v.insert(v.end(), h.att_src.begin(), h.att_src.end());
    v.insert(v.end(), h.att_dst.begin(), h.att_dst.end());
  }
  v.insert(v.end(), p.bias.begin(), p.bias.end());
  return v;
}

}  // namespace ndp
