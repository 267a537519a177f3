#include "ndp/config.hpp"

#include <fstream>
#include <set>

#include "ndp/error.hpp"

namespace ndp {

using nlohmann::json;

void RunConfig::validate() const {
  try {
    const EnvSpec spec = env_spec();
    es.validate();
    encoding.growth.validate();
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (eval_interval < 1) throw ConfigError("evaluation.interval must be >= 1");
    if (eval_episodes < 1) throw ConfigError("evaluation.episodes must be >= 1");
    const std::size_t founders = spec.obs_dim + spec.act_dim;
    if (is_developmental(encoding.encoding) && encoding.growth.max_cells < founders)
      throw ConfigError("growth.max_cells is smaller than the environment's observation + action size");
    if (!is_developmental(encoding.encoding) && encoding.neurons < founders)
      throw ConfigError("baseline.neurons is smaller than the environment's observation + action size");
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const RunConfig& c) {
  const auto& g = c.encoding.growth;
  return json{
      {"encoding", encoding_name(c.encoding.encoding)},
      {"env", c.env},
      {"master_seed", c.master_seed},
      {"run_dir", c.run_dir.string()},
      {"workers", c.workers},
      {"growth",
       {{"growth_steps", g.growth_steps},
        {"inhibition_steps", g.inhibition_steps},
        {"inhibition_enabled", g.inhibition_enabled},
        {"max_cells", g.max_cells},
        {"extrinsic_dim", g.extrinsic_dim},
        {"edge_threshold", g.edge_threshold}}},
      {"es",
       {{"population_size", c.es.population_size},
        {"learning_rate", c.es.learning_rate},
        {"sigma_init", c.es.sigma_init},
        {"sigma_decay", c.es.sigma_decay},
        {"generations", c.es.generations},
        {"eval_episodes", c.es.eval_episodes}}},
      {"baseline", {{"neurons", c.encoding.neurons}}},
      {"evaluation", {{"interval", c.eval_interval}, {"episodes", c.eval_episodes}}},
  };
}

namespace {

void check_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) throw ConfigError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError("");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("");
    } else {
      if (!v.is_string()) throw ConfigError("");
    }
    out = v.get<T>();
  } catch (const std::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
  check_keys(j, "config",
             {"encoding", "env", "master_seed", "run_dir", "workers", "growth", "es", "baseline", "evaluation"});
  std::string enc = encoding_name(c.encoding.encoding);
  read(j, "encoding", enc, "config");
  c.encoding.encoding = parse_encoding(enc);
  read(j, "env", c.env, "config");
  read(j, "master_seed", c.master_seed, "config");
  std::string dir = c.run_dir.string();
  read(j, "run_dir", dir, "config");
  c.run_dir = dir;
  read(j, "workers", c.workers, "config");

  if (j.contains("growth")) {
    const json& g = j.at("growth");
    check_keys(g, "growth",
               {"growth_steps", "inhibition_steps", "inhibition_enabled", "max_cells", "extrinsic_dim",
                "edge_threshold"});
    auto& gc = c.encoding.growth;
    read(g, "growth_steps", gc.growth_steps, "growth");
    read(g, "inhibition_steps", gc.inhibition_steps, "growth");
    read(g, "inhibition_enabled", gc.inhibition_enabled, "growth");
    read(g, "max_cells", gc.max_cells, "growth");
    read(g, "extrinsic_dim", gc.extrinsic_dim, "growth");
    read(g, "edge_threshold", gc.edge_threshold, "growth");
  }
  if (j.contains("es")) {
    const json& e = j.at("es");
    check_keys(e, "es",
               {"population_size", "learning_rate", "sigma_init", "sigma_decay", "generations", "eval_episodes"});
    read(e, "population_size", c.es.population_size, "es");
    read(e, "learning_rate", c.es.learning_rate, "es");
    read(e, "sigma_init", c.es.sigma_init, "es");
    read(e, "sigma_decay", c.es.sigma_decay, "es");
    read(e, "generations", c.es.generations, "es");
    read(e, "eval_episodes", c.es.eval_episodes, "es");
  }
  if (j.contains("baseline")) {
    const json& b = j.at("baseline");
    check_keys(b, "baseline", {"neurons"});
    read(b, "neurons", c.encoding.neurons, "baseline");
  }
  if (j.contains("evaluation")) {
    const json& e = j.at("evaluation");
    check_keys(e, "evaluation", {"interval", "episodes"});
    read(e, "interval", c.eval_interval, "evaluation");
    read(e, "episodes", c.eval_episodes, "evaluation");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

std::uint64_t config_hash(const RunConfig& c) {
  json j = to_json(c);
  j.erase("run_dir");
  j.erase("workers");
  j["es"].erase("generations");
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ndp
