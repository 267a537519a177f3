#pragma once

// Recurrent policy compiled from a developmental graph (or built directly by
// the baseline encodings) and its rollout loop.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "ndp/devgraph.hpp"
#include "ndp/envs.hpp"
#include "ndp/nn.hpp"
#include "ndp/rng.hpp"

namespace ndp {

inline constexpr double kActivationGuard = 1e6;

// n-neuron fully recurrent network. weights[i * n + j] is the weight of the
// connection j -> i. Observation neurons are linear inputs, hidden neurons
// use ReLU, action neurons are linear readouts.
class Policy {
 public:
  Policy() = default;
  Policy(std::size_t n, Vec weights, std::vector<std::size_t> obs_idx, std::vector<std::size_t> act_idx);

  std::size_t size() const { return n_; }
  const Vec& weights() const { return weights_; }
  double weight(std::size_t to, std::size_t from) const { return weights_[to * n_ + from]; }
  const std::vector<std::size_t>& obs_idx() const { return obs_idx_; }
  const std::vector<std::size_t>& act_idx() const { return act_idx_; }
  const std::vector<Activation>& activations() const { return act_; }

  // pre = W a; pre[obs] += obs; a' = act(pre). Uses the sparse row lists.
  void propagate(std::span<const double> state, std::span<const double> obs, std::span<double> pre) const;

  bool operator==(const Policy& o) const {
    return n_ == o.n_ && weights_ == o.weights_ && obs_idx_ == o.obs_idx_ && act_idx_ == o.act_idx_;
  }

 private:
  std::size_t n_ = 0;
  Vec weights_;
  std::vector<std::size_t> obs_idx_;
  std::vector<std::size_t> act_idx_;
  std::vector<Activation> act_;
  // CSR of non-zero weights per target row
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> col_;
  Vec val_;
};

struct PolicyState {
  Vec activations;
};

PolicyState initial_state(const Policy& p);

Policy compile(const DevGraph& graph);

struct ActionBounds {
  Vec low;
  Vec high;
};

// Returns the clipped action and advances the recurrent state.
// Throws PolicyDiverged when an activation is non-finite or exceeds kActivationGuard.
Vec policy_step(const Policy& policy, PolicyState& state, std::span<const double> obs, const ActionBounds& bounds);

// Sum of rewards over one episode from a zero recurrent state; PolicyDiverged
// yields env.worst_return.
double rollout(const Policy& policy, const EnvSpec& env, std::size_t max_steps, Rng& rng);

// Plain-text export: header line, index lines, then n rows of W.
void write_policy(std::ostream& os, const Policy& p);
Policy read_policy(std::istream& is);

}  // namespace ndp
