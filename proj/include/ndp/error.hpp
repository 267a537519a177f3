#pragma once

#include <stdexcept>
#include <string>

namespace ndp {

// Precondition or shape violation by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The EdgeModel produced a non-finite weight; the genome is rejected.
class InfiniteWeight : public std::runtime_error {
 public:
  InfiniteWeight() : std::runtime_error("edge model produced a non-finite weight") {}
};

// Recurrent activations left the finite/bounded regime during a rollout.
class PolicyDiverged : public std::runtime_error {
 public:
  PolicyDiverged() : std::runtime_error("policy activations diverged") {}
};

// Malformed configuration or checkpoint (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace ndp
