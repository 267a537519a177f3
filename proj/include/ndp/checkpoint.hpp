#pragma once

// Binary checkpoint, all fields little-endian:
//   offset 0   char[8]  magic "NDPCKPT1"
//   offset 8   u64      config hash
//   offset 16  u64      generation (completed generations)
//   offset 24  u64      genome length L
//   offset 32  f64      sigma
//   offset 40  f64      best fitness
//   offset 48  f64[L]   mean
//   then       f64[L]   best genome

#include <cstdint>
#include <filesystem>

#include "ndp/es.hpp"

namespace ndp {

struct Checkpoint {
  std::uint64_t config_hash = 0;
  EsState state;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::filesystem::path& path);  // throws ConfigError

}  // namespace ndp
