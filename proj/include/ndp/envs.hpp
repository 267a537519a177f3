#pragma once

// Small control tasks sharing one reset/step interface.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "ndp/nn.hpp"
#include "ndp/rng.hpp"

namespace ndp {

enum class EnvKind { CartPole, Pendulum, PointReacher };

struct CartPolePhysics {
  double gravity = 9.8;
  double cart_mass = 1.0;
  double pole_mass = 0.1;
  double half_length = 0.5;
  double force_limit = 10.0;
  double dt = 0.02;
  double theta_limit = 12.0 * 3.14159265358979323846 / 180.0;
  double x_limit = 2.4;
  double reset_range = 0.05;
};

struct PendulumPhysics {
  double gravity = 10.0;
  double mass = 1.0;
  double length = 1.0;
  double dt = 0.05;
  double max_speed = 8.0;
  double max_torque = 2.0;
};

struct PointReacherPhysics {
  double mass = 1.0;
  double damping = 0.5;
  double dt = 0.1;
  double force_limit = 1.0;
  double arena = 2.0;  // positions are clamped to [-arena, arena]
  double spawn = 1.0;  // start and target drawn from [-spawn, spawn]^2
};

struct EnvSpec {
  EnvKind kind = EnvKind::CartPole;
  std::size_t obs_dim = 0;
  std::size_t act_dim = 0;
  Vec action_low;
  Vec action_high;
  std::size_t max_steps = 0;
  double worst_return = 0.0;  // lower bound on the episode return; assigned to failed genomes
  CartPolePhysics cartpole;
  PendulumPhysics pendulum;
  PointReacherPhysics reacher;
};

EnvSpec make_env(EnvKind kind);
EnvSpec make_env(std::string_view name);  // throws ConfigError on unknown names
std::string env_name(EnvKind kind);

struct EnvState {
  // cartpole: x, x_dot, theta, theta_dot
  // pendulum: theta, theta_dot
  // point_reacher: px, py, vx, vy, tx, ty
  Vec x;
  std::size_t steps = 0;
  bool done = false;
};

struct StepResult {
  Vec obs;
  double reward = 0.0;
  bool done = false;
};

Vec env_observe(const EnvSpec& spec, const EnvState& state);

EnvState env_reset(const EnvSpec& spec, Rng& rng);

// Actions outside the bounds are clipped. Stepping a finished episode is a
// no-op returning zero reward.
StepResult env_step(const EnvSpec& spec, EnvState& state, std::span<const double> action);

}  // namespace ndp
