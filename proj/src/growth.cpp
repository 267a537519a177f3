#include "ndp/growth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "ndp/error.hpp"

namespace ndp {

void GrowthConfig::validate() const {
  require(growth_steps >= 1, "GrowthConfig: growth_steps must be >= 1");
  require(inhibition_steps >= 0, "GrowthConfig: inhibition_steps must be >= 0");
  require(max_cells >= 2, "GrowthConfig: max_cells must be >= 2");
  require(extrinsic_dim >= 1, "GrowthConfig: extrinsic_dim must be >= 1");
  require(std::isfinite(edge_threshold) && edge_threshold >= 0.0, "GrowthConfig: edge_threshold must be >= 0");
}

NdpLayout::NdpLayout(std::size_t intrinsic_length, std::size_t extrinsic_length)
    : intrinsic_len(intrinsic_length),
      extrinsic_dim(extrinsic_length),
      diff(intrinsic_length + extrinsic_length, extrinsic_length, 1, Activation::Tanh),
      gen({intrinsic_length + extrinsic_length, 32, 1}, Activation::Relu, Activation::Tanh),
      edge({2 * (intrinsic_length + extrinsic_length), 16, 16, 1}, Activation::Relu, Activation::Linear) {}

NdpGenome NdpGenome::from_flat(const NdpLayout& layout, std::span<const double> flat) {
  require(flat.size() == layout.genome_length(), "NdpGenome: flat length mismatch");
  NdpGenome g;
  auto it = flat.begin();
  g.diff_params.assign(it, it + layout.diff_count());
  it += layout.diff_count();
  g.gen_params.assign(it, it + layout.gen_count());
  it += layout.gen_count();
  g.edge_params.assign(it, flat.end());
  return g;
}

ParamVector NdpGenome::flatten() const {
  ParamVector v;
  v.reserve(diff_params.size() + gen_params.size() + edge_params.size());
  v.insert(v.end(), diff_params.begin(), diff_params.end());
  v.insert(v.end(), gen_params.begin(), gen_params.end());
  v.insert(v.end(), edge_params.begin(), edge_params.end());
  return v;
}

Vec cell_input(const Cell& cell, bool intrinsic_enabled) {
  Vec v;
  v.reserve(cell.intrinsic.size() + cell.extrinsic.size());
  if (intrinsic_enabled)
    v.insert(v.end(), cell.intrinsic.begin(), cell.intrinsic.end());
  else
    v.resize(cell.intrinsic.size(), 0.0);
  v.insert(v.end(), cell.extrinsic.begin(), cell.extrinsic.end());
  return v;
}

bool gen_decision(const NdpLayout& layout, const NdpGenome& genome, std::span<const double> cell_in) {
  return mlp_forward(layout.gen, genome.gen_params, cell_in)[0] > 0.0;
}

double edge_weight(const NdpLayout& layout, const NdpGenome& genome, std::span<const double> src_in,
                   std::span<const double> dst_in) {
  Vec pair(src_in.begin(), src_in.end());
  pair.insert(pair.end(), dst_in.begin(), dst_in.end());
  const double w = mlp_forward(layout.edge, genome.edge_params, pair)[0];
  if (!std::isfinite(w)) throw InfiniteWeight();
  return w;
}

PairKernel::PairKernel(const MlpSpec& spec, std::span<const double> params, const std::vector<Vec>& node_inputs)
    : spec_(spec), params_(params), n_(node_inputs.size()) {
  require(params.size() == mlp_param_count(spec), "PairKernel: parameter length mismatch");
  require(spec.layer_sizes.size() >= 3 && spec.output_size() == 1, "PairKernel: expects [2d, hidden..., 1]");
  require(spec.input_size() % 2 == 0, "PairKernel: input size must be even");
  const std::size_t d = spec.input_size() / 2;
  h1_ = spec.layer_sizes[1];
  max_width_ = *std::max_element(spec.layer_sizes.begin() + 1, spec.layer_sizes.end());

  src_half_.assign(n_ * h1_, 0.0);
  dst_half_.assign(n_ * h1_, 0.0);
  const double* w = params.data();
  const double* b = w + 2 * d * h1_;
  for (std::size_t node = 0; node < n_; ++node) {
    require(node_inputs[node].size() == d, "PairKernel: node input length mismatch");
    const double* x = node_inputs[node].data();
    for (std::size_t o = 0; o < h1_; ++o) {
      const double* row = w + o * 2 * d;
      double s = b[o], t = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        s += row[i] * x[i];
        t += row[d + i] * x[i];
      }
      src_half_[node * h1_ + o] = s;
      dst_half_[node * h1_ + o] = t;
    }
  }
}

double PairKernel::eval(const double* src_half, const double* dst_half, double* a, double* b) const {
  const auto& sizes = spec_.layer_sizes;
  const std::size_t n_layers = sizes.size() - 1;
  const Activation first_act = n_layers == 1 ? spec_.output : spec_.hidden;
  for (std::size_t o = 0; o < h1_; ++o) a[o] = activate(first_act, src_half[o] + dst_half[o]);

  std::size_t off = (sizes[0] + 1) * sizes[1];
  for (std::size_t l = 1; l < n_layers; ++l) {
    const std::size_t in = sizes[l], out = sizes[l + 1];
    const double* w = params_.data() + off;
    const double* bias = w + in * out;
    const Activation act = (l + 1 == n_layers) ? spec_.output : spec_.hidden;
    for (std::size_t o = 0; o < out; ++o) {
      double acc = bias[o];
      const double* row = w + o * in;
      for (std::size_t i = 0; i < in; ++i) acc += row[i] * a[i];
      b[o] = activate(act, acc);
    }
    off += (in + 1) * out;
    std::swap(a, b);
  }
  return a[0];
}

double PairKernel::operator()(std::size_t src, std::size_t dst) const {
  require(src < n_ && dst < n_, "PairKernel: node index out of range");
  std::vector<double> a(max_width_), b(max_width_);
  return eval(&src_half_[src * h1_], &dst_half_[dst * h1_], a.data(), b.data());
}

void PairKernel::row(std::size_t src, std::span<double> out) const {
  require(src < n_ && out.size() == n_, "PairKernel: row shape mismatch");
  std::vector<double> a(max_width_), b(max_width_);
  const double* s = &src_half_[src * h1_];
  for (std::size_t dst = 0; dst < n_; ++dst) out[dst] = eval(s, &dst_half_[dst * h1_], a.data(), b.data());
}

namespace {

std::vector<Vec> all_inputs(const DevGraph& g, bool intrinsic_enabled) {
  std::vector<Vec> v;
  v.reserve(g.size());
  for (const auto& c : g.cells()) v.push_back(cell_input(c, intrinsic_enabled));
  return v;
}

}  // namespace

void grow_step(DevGraph& graph, const NdpLayout& layout, const NdpGenome& genome, const GrowthConfig& config,
               StepRecord* record) {
  require(layout.intrinsic_len == graph.founder_count(), "grow_step: layout does not match graph founders");
  require(layout.extrinsic_dim == graph.extrinsic_dim(), "grow_step: extrinsic length mismatch");

  const std::size_t n0 = graph.size();
  const bool emit = config.inhibition_enabled && config.inhibition_steps > 0;
  std::vector<std::pair<CellId, ActionKind>> emitted;
  auto signal = [&](CellId from, ActionKind k) {
    if (!emit) return;
    for (CellId nb : graph.neighbors(from)) emitted.emplace_back(nb, k);
  };

  std::vector<CellStepRecord> rec(n0);
  for (CellId i = 0; i < n0; ++i)
    for (auto k : kAllActions) rec[i].inhibited[static_cast<std::size_t>(k)] = graph.cell(i).inhibited(k);
  auto blocked = [&](CellId i, ActionKind k) { return rec[i].inhibited[static_cast<std::size_t>(k)]; };

  const std::vector<Vec> snapshot = all_inputs(graph, config.intrinsic_enabled);

  // (1) Differentiation from the step-start snapshot.
  Neighbourhoods nbhd(n0);
  for (CellId i = 0; i < n0; ++i) {
    nbhd[i].push_back(i);
    for (CellId nb : graph.neighbors(i)) nbhd[i].push_back(nb);
  }
  auto proposals = gat_forward(layout.diff, genome.diff_params, snapshot, nbhd);
  for (CellId i = 0; i < n0; ++i) {
    if (blocked(i, ActionKind::Differentiate)) continue;
    if (proposals[i] == graph.cell(i).extrinsic) continue;
    graph.set_extrinsic(i, std::move(proposals[i]));
    rec[i].differentiated = true;
    signal(i, ActionKind::Differentiate);
  }

  // (2) Neurogenesis; decisions and the initial parent->child weight use the
  // snapshot, the child copies the parent's current (differentiated) state.
  for (CellId i = 0; i < n0; ++i) {
    if (blocked(i, ActionKind::Grow)) continue;
    const bool grow = gen_decision(layout, genome, snapshot[i]);
    rec[i].grow_decision = grow;
    if (!grow || graph.full()) continue;
    const double w = edge_weight(layout, genome, snapshot[i], snapshot[i]);
    rec[i].child = graph.add_cell(i, w);
    signal(i, ActionKind::Grow);
  }

  // (3) Synaptogenesis with current states. Existing out-edges are refreshed
  // and at most one new out-edge appears: the strongest missing one, if its
  // magnitude exceeds the threshold (lowest target id on ties).
  const std::vector<Vec> current = all_inputs(graph, config.intrinsic_enabled);
  const PairKernel kernel(layout.edge, genome.edge_params, current);
  std::vector<double> row(graph.size());
  for (CellId s = 0; s < n0; ++s) {
    if (blocked(s, ActionKind::UpdateEdge)) continue;
    rec[s].synaptogenesis_ran = true;
    kernel.row(s, row);
    std::optional<CellId> best;
    for (CellId d = 0; d < graph.size(); ++d) {
      const double w = row[d];
      if (!std::isfinite(w)) throw InfiniteWeight();
      if (graph.has_edge(s, d)) {
        graph.set_edge(s, d, w);
        ++rec[s].edges_updated;
      } else if (std::abs(w) > config.edge_threshold && (!best || std::abs(w) > std::abs(row[*best]))) {
        best = d;
      }
    }
    if (best) {
      graph.set_edge(s, *best, row[*best]);
      ++rec[s].edges_updated;
    }
    if (rec[s].edges_updated > 0) signal(s, ActionKind::UpdateEdge);
  }

  graph.tick_inhibition();
  for (const auto& [cell, kind] : emitted) graph.inhibit(cell, kind, config.inhibition_steps);

  if (record) record->cells = std::move(rec);
}

DevGraph develop(const NdpGenome& genome, std::size_t obs_dim, std::size_t act_dim, const GrowthConfig& config,
                 Rng& rng, const GrowthHook& hook, std::vector<StepRecord>* records) {
  config.validate();
  const NdpLayout layout(obs_dim + act_dim, config.extrinsic_dim);
  DevGraph g = init_graph(obs_dim, act_dim, rng, config.extrinsic_dim, config.max_cells);
  if (hook) hook(g, 0);
  for (std::size_t step = 1; step <= config.growth_steps; ++step) {
    StepRecord r;
    r.step = step;
    grow_step(g, layout, genome, config, records ? &r : nullptr);
    if (records) records->push_back(std::move(r));
    if (hook) hook(g, step);
  }
  return g;
}

}  // namespace ndp
