#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ndp/envs.hpp"
#include "ndp/error.hpp"
#include "test_util.hpp"

using namespace ndp;

TEST_CASE("environment dimensions") {
  CHECK(make_env("cartpole").obs_dim == 4);
  CHECK(make_env("cartpole").act_dim == 1);
  CHECK(make_env("pendulum").obs_dim == 3);
  CHECK(make_env("pendulum").act_dim == 1);
  CHECK(make_env("point_reacher").obs_dim == 4);
  CHECK(make_env("point_reacher").act_dim == 2);
  CHECK(make_env("cartpole").max_steps == 500);
  CHECK(make_env("pendulum").max_steps == 200);
  CHECK(make_env("point_reacher").max_steps == 100);
  CHECK_THROWS_AS(make_env("ant"), ConfigError);
}

TEST_CASE("cartpole upright equilibrium is stationary") {
  const EnvSpec env = make_env(EnvKind::CartPole);
  EnvState st;
  st.x = {0, 0, 0, 0};
  const auto r = env_step(env, st, Vec{0.0});
  CHECK(st.x == Vec{0, 0, 0, 0});
  CHECK(r.reward == 1.0);
  CHECK_FALSE(r.done);
}

TEST_CASE("cartpole falls toward its lean and force accelerates the cart") {
  const EnvSpec env = make_env(EnvKind::CartPole);
  EnvState st;
  st.x = {0, 0, 0.05, 0};
  env_step(env, st, Vec{0.0});
  env_step(env, st, Vec{0.0});
  CHECK(st.x[3] > 0.0);
  EnvState push;
  push.x = {0, 0, 0, 0};
  env_step(env, push, Vec{100.0});  // clipped to 10 N
  env_step(env, push, Vec{0.0});
  // x_acc = F/M - m l theta_acc cos / M with theta_acc = -F/M / (l (4/3 - m/M)) at theta=0
  const auto& p = env.cartpole;
  const double M = p.cart_mass + p.pole_mass;
  const double th_acc = -(10.0 / M) / (p.half_length * (4.0 / 3.0 - p.pole_mass / M));
  const double x_acc = 10.0 / M - p.pole_mass * p.half_length * th_acc / M;
  CHECK(push.x[1] == doctest::Approx(p.dt * x_acc).epsilon(1e-6));
}

TEST_CASE("pendulum hanging at rest scores -pi^2") {
  const EnvSpec env = make_env(EnvKind::Pendulum);
  EnvState st;
  st.x = {std::numbers::pi, 0.0};
  const auto r = env_step(env, st, Vec{0.0});
  CHECK(r.reward == doctest::Approx(-std::numbers::pi * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("point reacher at the target at rest scores zero") {
  const EnvSpec env = make_env(EnvKind::PointReacher);
  EnvState st;
  st.x = {0.3, -0.2, 0.0, 0.0, 0.3, -0.2};
  const auto r = env_step(env, st, Vec{0.0, 0.0});
  CHECK(r.reward == 0.0);
  CHECK(r.obs == Vec{0, 0, 0, 0});
}

TEST_CASE("episodes are deterministic, bounded and absorbing") {
  for (auto kind : {EnvKind::CartPole, EnvKind::Pendulum, EnvKind::PointReacher}) {
    const EnvSpec env = make_env(kind);
    for (int trial = 0; trial < 20; ++trial) {
      Rng ra(trial), rb(trial), act(1000 + trial);
      EnvState a = env_reset(env, ra), b = env_reset(env, rb);
      CHECK(a.x == b.x);
      double ret = 0.0;
      std::size_t steps = 0;
      while (!a.done) {
        const Vec u = test::uniform_vec(act, env.act_dim, -2.0 * env.action_high[0], 2.0 * env.action_high[0]);
        const auto r1 = env_step(env, a, u);
        const auto r2 = env_step(env, b, u);
        CHECK(r1.obs == r2.obs);
        CHECK(r1.reward == r2.reward);
        ret += r1.reward;
        ++steps;
      }
      CHECK(steps <= env.max_steps);
      const auto after = env_step(env, a, Vec(env.act_dim, 0.0));
      CHECK(after.done);
      CHECK(after.reward == 0.0);
      CHECK(ret >= env.worst_return);
      if (kind == EnvKind::CartPole) CHECK((ret >= 0.0 && ret <= 500.0));
      else CHECK(ret <= 0.0);
    }
  }
}

TEST_CASE("non-finite actions are rejected") {
  const EnvSpec env = make_env(EnvKind::CartPole);
  Rng rng(0);
  EnvState st = env_reset(env, rng);
  CHECK_THROWS_AS(env_step(env, st, Vec{NAN}), ContractViolation);
  CHECK_THROWS_AS(env_step(env, st, Vec{0.0, 0.0}), ContractViolation);
}
