#include <doctest.h>

#include <cmath>

#include "ndp/baselines.hpp"
#include "ndp/error.hpp"
#include "ndp/evaluation.hpp"
#include "test_util.hpp"

using namespace ndp;

TEST_CASE("encoding names") {
  for (auto e : {Encoding::Ndp, Encoding::NdpNoIntrinsic, Encoding::Direct, Encoding::OneShot})
    CHECK(parse_encoding(encoding_name(e)) == e);
  CHECK_THROWS_AS(parse_encoding("hyperneat"), ConfigError);
  CHECK(is_developmental(Encoding::NdpNoIntrinsic));
  CHECK_FALSE(is_developmental(Encoding::OneShot));
}

TEST_CASE("genome lengths per encoding") {
  const EnvSpec env = make_env(EnvKind::CartPole);
  EncodingConfig enc;
  CHECK(genome_length(enc, env) == 1330);
  enc.encoding = Encoding::NdpNoIntrinsic;
  CHECK(genome_length(enc, env) == 1330);
  enc.encoding = Encoding::Direct;
  CHECK(genome_length(enc, env) == 10000);
  enc.encoding = Encoding::OneShot;
  CHECK(genome_length(enc, env) == 3505);
}

TEST_CASE("effective growth follows the encoding") {
  EncodingConfig enc;
  CHECK(enc.effective_growth().intrinsic_enabled);
  enc.encoding = Encoding::NdpNoIntrinsic;
  CHECK_FALSE(enc.effective_growth().intrinsic_enabled);
}

TEST_CASE("single-episode evaluation equals one rollout of the built policy") {
  const EnvSpec env = make_env(EnvKind::CartPole);
  EncodingConfig enc;
  enc.encoding = Encoding::Direct;
  enc.neurons = 12;
  Rng rng(1);
  const Vec g = test::random_vec(rng, genome_length(enc, env), 0.3);
  const std::uint64_t seed = 77;
  const Policy p = build_direct(g, 4, 1, 12);
  Rng ep(derive_seed(seed, Stream::Episode, 0));
  CHECK(evaluate(g, enc, env, 1, seed) == rollout(p, env, env.max_steps, ep));
}

TEST_CASE("evaluation is deterministic in its seed") {
  const EnvSpec env = make_env(EnvKind::Pendulum);
  for (auto e : {Encoding::Ndp, Encoding::NdpNoIntrinsic, Encoding::OneShot}) {
    EncodingConfig enc;
    enc.encoding = e;
    enc.neurons = 20;
    Rng rng(2);
    const Vec g = test::random_vec(rng, genome_length(enc, env), 0.2);
    CHECK(evaluate(g, enc, env, 3, 5) == evaluate(g, enc, env, 3, 5));
    const auto stats = evaluate_episodes(g, enc, env, 4, 5);
    CHECK(stats.returns.size() == 4);
    CHECK(std::isfinite(stats.mean));
  }
}

TEST_CASE("failed builds score the worst return") {
  const EnvSpec env = make_env(EnvKind::CartPole);
  EncodingConfig enc;
  enc.encoding = Encoding::OneShot;
  enc.neurons = 8;
  Vec g(genome_length(enc, env), 0.0);
  g.back() = NAN;
  CHECK(evaluate(g, enc, env, 2, 0) == env.worst_return);
}

TEST_CASE("parallel population evaluation matches the serial reference bit for bit") {
  const EnvSpec env = make_env(EnvKind::CartPole);
  for (auto e : {Encoding::Ndp, Encoding::Direct, Encoding::OneShot}) {
    EncodingConfig enc;
    enc.encoding = e;
    enc.neurons = 16;
    Rng rng(3);
    std::vector<ParamVector> cands;
    for (int i = 0; i < 12; ++i) cands.push_back(test::random_vec(rng, genome_length(enc, env), 0.3));
    const auto serial = evaluate_population_serial(cands, enc, env, 2, 11, 4);
    for (int w : {0, 1, 2, 4}) CHECK(evaluate_population(cands, enc, env, 2, 11, 4, w) == serial);
    CHECK(serial[0] == evaluate(cands[0], enc, env, 2, candidate_seed(11, 4, 0)));
  }
}

TEST_CASE("candidate seeds differ across generations and indices") {
  CHECK(candidate_seed(0, 0, 1) != candidate_seed(0, 1, 0));
  CHECK(candidate_seed(0, 0, 0) != candidate_seed(1, 0, 0));
  CHECK(candidate_seed(3, 4, 5) == candidate_seed(3, 4, 5));
}
