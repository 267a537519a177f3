#include "ndp/phenotype.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "ndp/error.hpp"

namespace ndp {

Policy::Policy(std::size_t n, Vec weights, std::vector<std::size_t> obs_idx, std::vector<std::size_t> act_idx)
    : n_(n), weights_(std::move(weights)), obs_idx_(std::move(obs_idx)), act_idx_(std::move(act_idx)) {
  require(weights_.size() == n_ * n_, "Policy: weight matrix must be n x n");
  for (double w : weights_) require(std::isfinite(w), "Policy: non-finite weight");
  act_.assign(n_, Activation::Relu);
  std::vector<char> used(n_, 0);
  for (auto i : obs_idx_) {
    require(i < n_ && !used[i], "Policy: bad observation index");
    used[i] = 1;
    act_[i] = Activation::Linear;
  }
  for (auto i : act_idx_) {
    require(i < n_ && !used[i], "Policy: bad action index");
    used[i] = 1;
    act_[i] = Activation::Linear;
  }
  row_start_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double w = weights_[i * n_ + j];
      if (w != 0.0) {
        col_.push_back(j);
        val_.push_back(w);
      }
    }
    row_start_[i + 1] = col_.size();
  }
}

void Policy::propagate(std::span<const double> state, std::span<const double> obs, std::span<double> pre) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) acc += val_[k] * state[col_[k]];
    pre[i] = acc;
  }
  for (std::size_t k = 0; k < obs_idx_.size(); ++k) pre[obs_idx_[k]] += obs[k];
}

PolicyState initial_state(const Policy& p) { return {Vec(p.size(), 0.0)}; }

Policy compile(const DevGraph& graph) {
  const std::size_t n = graph.size();
  Vec w(n * n, 0.0);
  for (const auto& e : graph.edges()) w[e.dst * n + e.src] = e.weight;
  std::vector<std::size_t> obs, act;
  for (const auto& c : graph.cells()) {
    if (c.role == CellRole::Observation) obs.push_back(c.id);
    if (c.role == CellRole::Action) act.push_back(c.id);
  }
  return Policy(n, std::move(w), std::move(obs), std::move(act));
}

Vec policy_step(const Policy& policy, PolicyState& state, std::span<const double> obs, const ActionBounds& bounds) {
  require(obs.size() == policy.obs_idx().size(), "policy_step: observation length mismatch");
  require(state.activations.size() == policy.size(), "policy_step: state length mismatch");
  const auto& act_idx = policy.act_idx();
  require(bounds.low.size() == act_idx.size() && bounds.high.size() == act_idx.size(),
          "policy_step: action bounds mismatch");

  Vec pre(policy.size());
  policy.propagate(state.activations, obs, pre);
  const auto& fn = policy.activations();
  for (std::size_t i = 0; i < pre.size(); ++i) {
    const double a = activate(fn[i], pre[i]);
    if (!std::isfinite(a) || std::abs(a) > kActivationGuard) throw PolicyDiverged();
    state.activations[i] = a;
  }
  Vec action(act_idx.size());
  for (std::size_t k = 0; k < act_idx.size(); ++k)
    action[k] = std::clamp(pre[act_idx[k]], bounds.low[k], bounds.high[k]);
  return action;
}

double rollout(const Policy& policy, const EnvSpec& env, std::size_t max_steps, Rng& rng) {
  require(policy.obs_idx().size() == env.obs_dim && policy.act_idx().size() == env.act_dim,
          "rollout: policy does not match environment");
  const ActionBounds bounds{env.action_low, env.action_high};
  EnvState st = env_reset(env, rng);
  Vec obs = env_observe(env, st);
  PolicyState ps = initial_state(policy);
  double ret = 0.0;
  try {
    for (std::size_t t = 0; t < max_steps && !st.done; ++t) {
      const Vec action = policy_step(policy, ps, obs, bounds);
      auto r = env_step(env, st, action);
      ret += r.reward;
      obs = std::move(r.obs);
    }
  } catch (const PolicyDiverged&) {
    return env.worst_return;
  }
  return ret;
}

void write_policy(std::ostream& os, const Policy& p) {
  os << "policy " << p.size() << ' ' << p.obs_idx().size() << ' ' << p.act_idx().size() << '\n';
  os << "obs";
  for (auto i : p.obs_idx()) os << ' ' << i;
  os << "\nact";
  for (auto i : p.act_idx()) os << ' ' << i;
  os << '\n';
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p.weight(i, j));
      os << (j ? " " : "") << buf;
    }
    os << '\n';
  }
}

Policy read_policy(std::istream& is) {
  std::string tag;
  std::size_t n = 0, n_obs = 0, n_act = 0;
  if (!(is >> tag >> n >> n_obs >> n_act) || tag != "policy") throw ConfigError("policy file: bad header");
  auto read_idx = [&](const char* want, std::size_t count) {
    std::string t;
    if (!(is >> t) || t != want) throw ConfigError(std::string("policy file: expected '") + want + "'");
    std::vector<std::size_t> v(count);
    for (auto& x : v)
      if (!(is >> x)) throw ConfigError("policy file: truncated index list");
    return v;
  };
  auto obs = read_idx("obs", n_obs);
  auto act = read_idx("act", n_act);
  Vec w(n * n);
  for (auto& x : w) {
    std::string tok;
    if (!(is >> tok)) throw ConfigError("policy file: truncated weight matrix");
    x = std::stod(tok);
  }
  return Policy(n, std::move(w), std::move(obs), std::move(act));
}

}  // namespace ndp
