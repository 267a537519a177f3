#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "ndp/envs.hpp"
#include "ndp/es.hpp"
#include "ndp/evaluation.hpp"

namespace ndp {

struct RunConfig {
  EncodingConfig encoding;
  std::string env = "cartpole";
  EsConfig es;
  std::uint64_t master_seed = 0;
  std::filesystem::path run_dir = "runs/default";
  int workers = 0;                  // 0 = all available cores
  std::size_t eval_interval = 10;   // generations between evaluations of the current best
  std::size_t eval_episodes = 10;   // episodes per periodic evaluation

  EnvSpec env_spec() const { return make_env(env); }
  // Throws ConfigError on any invalid or inconsistent field.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& c);

// Strict: unknown keys and wrong types are ConfigError. Missing keys keep defaults.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path);

// Identity of a run: everything except run_dir, workers and the generation
// budget, so a finished run can be resumed with a larger budget.
std::uint64_t config_hash(const RunConfig& c);

}  // namespace ndp
