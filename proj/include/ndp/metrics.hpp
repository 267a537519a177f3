#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "ndp/devgraph.hpp"
#include "ndp/nn.hpp"

namespace ndp {

inline constexpr std::size_t kDiversityNeighbours = 10;

// Mean over states of the mean Euclidean distance to the min(k, n-1) nearest
// other states. nullopt with fewer than two states.
std::optional<double> neuronal_diversity(const std::vector<Vec>& states, std::size_t k = kDiversityNeighbours);

std::vector<Vec> extrinsic_states(const DevGraph& g);

enum class DiversityContext { PerGrowthStep, PerGeneration };

struct DiversityRecord {
  DiversityContext context = DiversityContext::PerGrowthStep;
  std::size_t index = 0;  // growth step or generation
  std::optional<double> diversity;
};

std::string format_real(double v);

// Append-only CSV logs in a run directory:
//   fitness.csv   generation,best,mean,std
//   eval.csv      generation,mean_return,std_return
//   diversity.csv context,index,diversity   (empty diversity = undefined)
class RunLogger {
 public:
  // Fresh runs truncate the files and write headers. Resumed runs keep only
  // rows whose generation is below `resume_generation`.
  RunLogger(const std::filesystem::path& dir, std::optional<std::size_t> resume_generation = std::nullopt);

  void fitness(std::size_t generation, double best, double mean, double std);
  void eval(std::size_t generation, double mean, double std);
  void diversity(const DiversityRecord& r);

 private:
  std::ofstream fitness_;
  std::ofstream eval_;
  std::ofstream diversity_;
};

}  // namespace ndp
