#include "ndp/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ndp/error.hpp"

namespace ndp {

namespace {

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a + std::numbers::pi, two_pi);
  if (r < 0) r += two_pi;
  return r - std::numbers::pi;
}

}  // namespace

EnvSpec make_env(EnvKind kind) {
  EnvSpec s;
  s.kind = kind;
  switch (kind) {
    case EnvKind::CartPole:
      s.obs_dim = 4;
      s.act_dim = 1;
      s.action_low = {-s.cartpole.force_limit};
      s.action_high = {s.cartpole.force_limit};
      s.max_steps = 500;
      s.worst_return = 0.0;
      break;
    case EnvKind::Pendulum: {
      s.obs_dim = 3;
      s.act_dim = 1;
      s.action_low = {-s.pendulum.max_torque};
      s.action_high = {s.pendulum.max_torque};
      s.max_steps = 200;
      const auto& p = s.pendulum;
      const double worst_cost = std::numbers::pi * std::numbers::pi + 0.1 * p.max_speed * p.max_speed +
                                0.001 * p.max_torque * p.max_torque;
      s.worst_return = -worst_cost * static_cast<double>(s.max_steps);
      break;
    }
    case EnvKind::PointReacher: {
      s.obs_dim = 4;
      s.act_dim = 2;
      s.action_low = {-s.reacher.force_limit, -s.reacher.force_limit};
      s.action_high = {s.reacher.force_limit, s.reacher.force_limit};
      s.max_steps = 100;
      const double diag = std::sqrt(2.0) * (s.reacher.arena + s.reacher.spawn);
      s.worst_return = -diag * static_cast<double>(s.max_steps);
      break;
    }
  }
  return s;
}

EnvSpec make_env(std::string_view name) {
  if (name == "cartpole") return make_env(EnvKind::CartPole);
  if (name == "pendulum") return make_env(EnvKind::Pendulum);
  if (name == "point_reacher") return make_env(EnvKind::PointReacher);
  throw ConfigError("unknown environment '" + std::string(name) + "'");
}

std::string env_name(EnvKind kind) {
  switch (kind) {
    case EnvKind::CartPole: return "cartpole";
    case EnvKind::Pendulum: return "pendulum";
    case EnvKind::PointReacher: return "point_reacher";
  }
  return "?";
}

Vec env_observe(const EnvSpec& spec, const EnvState& st) {
  const auto& x = st.x;
  switch (spec.kind) {
    case EnvKind::CartPole: return {x[0], x[1], x[2], x[3]};
    case EnvKind::Pendulum: return {std::cos(x[0]), std::sin(x[0]), x[1]};
    case EnvKind::PointReacher: return {x[0] - x[4], x[1] - x[5], x[2], x[3]};
  }
  return {};
}

EnvState env_reset(const EnvSpec& spec, Rng& rng) {
  EnvState st;
  switch (spec.kind) {
    case EnvKind::CartPole: {
      std::uniform_real_distribution<double> u(-spec.cartpole.reset_range, spec.cartpole.reset_range);
      st.x.resize(4);
      for (auto& v : st.x) v = u(rng);
      break;
    }
    case EnvKind::Pendulum: {
      std::uniform_real_distribution<double> th(-std::numbers::pi, std::numbers::pi);
      std::uniform_real_distribution<double> om(-1.0, 1.0);
      const double theta = th(rng);
      st.x = {theta, om(rng)};
      break;
    }
    case EnvKind::PointReacher: {
      std::uniform_real_distribution<double> u(-spec.reacher.spawn, spec.reacher.spawn);
      const double px = u(rng), py = u(rng), tx = u(rng), ty = u(rng);
      st.x = {px, py, 0.0, 0.0, tx, ty};
      break;
    }
  }
  return st;
}

StepResult env_step(const EnvSpec& spec, EnvState& st, std::span<const double> action) {
  require(action.size() == spec.act_dim, "env_step: action length mismatch");
  for (double a : action) require(std::isfinite(a), "env_step: non-finite action");
  if (st.done) return {env_observe(spec, st), 0.0, true};

  Vec u(action.begin(), action.end());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::clamp(u[i], spec.action_low[i], spec.action_high[i]);

  double reward = 0.0;
  bool failed = false;
  auto& x = st.x;
  switch (spec.kind) {
    case EnvKind::CartPole: {
      const auto& p = spec.cartpole;
      const double total_mass = p.cart_mass + p.pole_mass;
      const double pole_ml = p.pole_mass * p.half_length;
      const double cos_t = std::cos(x[2]), sin_t = std::sin(x[2]);
      const double temp = (u[0] + pole_ml * x[3] * x[3] * sin_t) / total_mass;
      const double theta_acc = (p.gravity * sin_t - cos_t * temp) /
                               (p.half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
      const double x_acc = temp - pole_ml * theta_acc * cos_t / total_mass;
      x[0] += p.dt * x[1];
      x[1] += p.dt * x_acc;
      x[2] += p.dt * x[3];
      x[3] += p.dt * theta_acc;
      failed = std::abs(x[0]) > p.x_limit || std::abs(x[2]) > p.theta_limit;
      reward = failed ? 0.0 : 1.0;
      break;
    }
    case EnvKind::Pendulum: {
      const auto& p = spec.pendulum;
      const double th = wrap_angle(x[0]);
      reward = -(th * th + 0.1 * x[1] * x[1] + 0.001 * u[0] * u[0]);
      // theta = 0 is upright
      double omega = x[1] + (3.0 * p.gravity / (2.0 * p.length) * std::sin(x[0]) +
                             3.0 / (p.mass * p.length * p.length) * u[0]) *
                                p.dt;
      omega = std::clamp(omega, -p.max_speed, p.max_speed);
      x[0] += omega * p.dt;
      x[1] = omega;
      break;
    }
    case EnvKind::PointReacher: {
      const auto& p = spec.reacher;
      for (std::size_t d = 0; d < 2; ++d) {
        x[2 + d] += p.dt * (u[d] / p.mass - p.damping * x[2 + d]);
        x[d] += p.dt * x[2 + d];
        if (std::abs(x[d]) > p.arena) {
          x[d] = std::clamp(x[d], -p.arena, p.arena);
          x[2 + d] = 0.0;
        }
      }
      reward = -std::hypot(x[0] - x[4], x[1] - x[5]);
      break;
    }
  }
  ++st.steps;
  st.done = failed || st.steps >= spec.max_steps;
  return {env_observe(spec, st), reward, st.done};
}

}  // namespace ndp
