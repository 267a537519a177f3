#include "ndp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ndp/error.hpp"

namespace ndp {

std::optional<double> neuronal_diversity(const std::vector<Vec>& states, std::size_t k) {
  const std::size_t n = states.size();
  if (n < 2) return std::nullopt;
  require(k >= 1, "neuronal_diversity: k must be >= 1");
  for (const auto& s : states) require(s.size() == states[0].size(), "neuronal_diversity: unequal state lengths");
  const std::size_t kk = std::min(k, n - 1);

  // Pairwise distance matrix, then partial selection per row.
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t d = 0; d < states[i].size(); ++d) {
        const double diff = states[i][d] - states[j][d];
        sq += diff * diff;
      }
      dist[i * n + j] = dist[j * n + i] = std::sqrt(sq);
    }

  double total = 0.0;
  std::vector<double> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row.push_back(dist[i * n + j]);
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kk - 1), row.end());
    std::sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kk));
    double s = 0.0;
    for (std::size_t m = 0; m < kk; ++m) s += row[m];
    total += s / static_cast<double>(kk);
  }
  return total / static_cast<double>(n);
}

std::vector<Vec> extrinsic_states(const DevGraph& g) {
  std::vector<Vec> v;
  v.reserve(g.size());
  for (const auto& c : g.cells()) v.push_back(c.extrinsic);
  return v;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const char* kFitnessHeader = "generation,best,mean,std";
const char* kEvalHeader = "generation,mean_return,std_return";
const char* kDiversityHeader = "context,index,diversity";

std::ofstream open_log(const std::filesystem::path& path, const char* header, std::optional<std::size_t> resume,
                       bool keep_by_generation) {
  std::vector<std::string> kept;
  if (resume) {
    std::ifstream in(path);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        continue;
      }
      if (line.empty()) continue;
      if (keep_by_generation) {
        const auto gen = std::stoull(line.substr(0, line.find(',')));
        if (gen >= *resume) continue;
      } else {
        // per_generation rows carry a generation index; per-step rows belong to the final pass
        std::istringstream ss(line);
        std::string ctx, idx;
        std::getline(ss, ctx, ',');
        std::getline(ss, idx, ',');
        if (ctx != "per_generation" || std::stoull(idx) >= *resume) continue;
      }
      kept.push_back(line);
    }
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write log file " + path.string());
  out << header << '\n';
  for (const auto& l : kept) out << l << '\n';
  out.flush();
  return out;
}

}  // namespace

RunLogger::RunLogger(const std::filesystem::path& dir, std::optional<std::size_t> resume_generation) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create run directory " + dir.string() + ": " + ec.message());
  fitness_ = open_log(dir / "fitness.csv", kFitnessHeader, resume_generation, true);
  eval_ = open_log(dir / "eval.csv", kEvalHeader, resume_generation, true);
  diversity_ = open_log(dir / "diversity.csv", kDiversityHeader, resume_generation, false);
}

void RunLogger::fitness(std::size_t generation, double best, double mean, double std) {
  fitness_ << generation << ',' << format_real(best) << ',' << format_real(mean) << ',' << format_real(std) << '\n';
  fitness_.flush();
}

void RunLogger::eval(std::size_t generation, double mean, double std) {
  eval_ << generation << ',' << format_real(mean) << ',' << format_real(std) << '\n';
  eval_.flush();
}

void RunLogger::diversity(const DiversityRecord& r) {
  diversity_ << (r.context == DiversityContext::PerGrowthStep ? "per_growth_step" : "per_generation") << ','
             << r.index << ',' << (r.diversity ? format_real(*r.diversity) : std::string()) << '\n';
  diversity_.flush();
}

}  // namespace ndp
