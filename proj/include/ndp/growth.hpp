#pragma once

// The neural developmental program: three shared cell models (DiffModel as a
// graph attention layer, GenModel and EdgeModel as MLPs) and the growth engine.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ndp/devgraph.hpp"
#include "ndp/nn.hpp"
#include "ndp/rng.hpp"

namespace ndp {

struct GrowthConfig {
  std::size_t growth_steps = 15;
  int inhibition_steps = 2;
  bool inhibition_enabled = true;
  bool intrinsic_enabled = true;
  std::size_t max_cells = kDefaultMaxCells;
  std::size_t extrinsic_dim = kDefaultExtrinsicDim;
  // Synaptogenesis creates a missing edge src->dst only when |E(src,dst)| exceeds this.
  double edge_threshold = 0.05;

  void validate() const;
};

// Model shapes for a given founder count (= intrinsic length).
struct NdpLayout {
  std::size_t intrinsic_len = 0;
  std::size_t extrinsic_dim = kDefaultExtrinsicDim;
  GatSpec diff;
  MlpSpec gen;
  MlpSpec edge;

  NdpLayout(std::size_t intrinsic_length, std::size_t extrinsic_length = kDefaultExtrinsicDim);

  std::size_t cell_input_len() const { return intrinsic_len + extrinsic_dim; }
  std::size_t diff_count() const { return gat_param_count(diff); }
  std::size_t gen_count() const { return mlp_param_count(gen); }
  std::size_t edge_count() const { return mlp_param_count(edge); }
  std::size_t genome_length() const { return diff_count() + gen_count() + edge_count(); }
};

struct NdpGenome {
  ParamVector diff_params;
  ParamVector gen_params;
  ParamVector edge_params;

  // Flat order: DiffModel, GenModel, EdgeModel.
  static NdpGenome from_flat(const NdpLayout& layout, std::span<const double> flat);
  ParamVector flatten() const;
  bool operator==(const NdpGenome&) const = default;
};

Vec cell_input(const Cell& cell, bool intrinsic_enabled);

bool gen_decision(const NdpLayout& layout, const NdpGenome& genome, std::span<const double> cell_in);

// Throws InfiniteWeight on non-finite output.
double edge_weight(const NdpLayout& layout, const NdpGenome& genome, std::span<const double> src_in,
                   std::span<const double> dst_in);

// Fast all-pairs evaluation of a pair MLP of shape [2d, hidden..., 1]. The first
// layer is split into its source and destination halves and precomputed per
// node, so each pair costs only the hidden layers.
class PairKernel {
 public:
  PairKernel(const MlpSpec& spec, std::span<const double> params, const std::vector<Vec>& node_inputs);

  std::size_t nodes() const { return n_; }
  double operator()(std::size_t src, std::size_t dst) const;
  // out[dst] = weight(src, dst) for every node.
  void row(std::size_t src, std::span<double> out) const;

 private:
  double eval(const double* src_half, const double* dst_half, double* buf_a, double* buf_b) const;

  MlpSpec spec_;
  std::span<const double> params_;
  std::size_t n_;
  std::size_t h1_;
  std::size_t max_width_;
  std::vector<double> src_half_;  // n x h1, includes first-layer bias
  std::vector<double> dst_half_;  // n x h1
};

// Per-cell record of one growth step, for instrumentation and tests.
struct CellStepRecord {
  std::array<bool, kActionKinds> inhibited{};  // state at step start
  bool differentiated = false;                 // adopted a changed extrinsic state
  std::optional<bool> grow_decision;           // evaluated only when not inhibited
  std::optional<CellId> child;
  std::size_t edges_updated = 0;
  bool synaptogenesis_ran = false;
};

struct StepRecord {
  std::size_t step = 0;
  std::vector<CellStepRecord> cells;  // cells existing at step start
};

// One synchronous growth step: differentiate, grow, update edges, then tick
// inhibition. Newly emitted inhibition blocks the following `inhibition_steps` steps.
void grow_step(DevGraph& graph, const NdpLayout& layout, const NdpGenome& genome, const GrowthConfig& config,
               StepRecord* record = nullptr);

using GrowthHook = std::function<void(const DevGraph&, std::size_t step)>;

// init_graph followed by config.growth_steps grow_steps. The hook (if any) sees
// the initial graph as step 0 and the graph after each step.
DevGraph develop(const NdpGenome& genome, std::size_t obs_dim, std::size_t act_dim, const GrowthConfig& config,
                 Rng& rng, const GrowthHook& hook = {}, std::vector<StepRecord>* records = nullptr);

}  // namespace ndp
