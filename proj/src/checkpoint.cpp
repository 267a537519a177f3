#include "ndp/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "ndp/error.hpp"

namespace ndp {

namespace {

constexpr std::array<char, 8> kMagic = {'N', 'D', 'P', 'C', 'K', 'P', 'T', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw ConfigError("checkpoint truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  const auto& s = ckpt.state;
  if (s.best_genome.size() != s.mean.size()) throw ContractViolation("checkpoint: best genome length mismatch");
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write checkpoint " + tmp.string());
    os.write(kMagic.data(), kMagic.size());
    put_u64(os, ckpt.config_hash);
    put_u64(os, s.generation);
    put_u64(os, s.mean.size());
    put_f64(os, s.sigma);
    put_f64(os, s.best_fitness);
    for (double v : s.mean) put_f64(os, v);
    for (double v : s.best_genome) put_f64(os, v);
    if (!os) throw ConfigError("error writing checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open checkpoint " + path.string());
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw ConfigError("not a checkpoint file");
  Checkpoint c;
  c.config_hash = get_u64(is);
  c.state.generation = get_u64(is);
  const std::uint64_t len = get_u64(is);
  if (len > (std::uint64_t{1} << 32)) throw ConfigError("checkpoint genome length implausible");
  c.state.sigma = get_f64(is);
  c.state.best_fitness = get_f64(is);
  c.state.mean.resize(len);
  c.state.best_genome.resize(len);
  for (auto& v : c.state.mean) v = get_f64(is);
  for (auto& v : c.state.best_genome) v = get_f64(is);
  if (is.peek() != std::char_traits<char>::eof()) throw ConfigError("checkpoint has trailing bytes");
  return c;
}

}  // namespace ndp
