#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ndp/nn.hpp"
#include "ndp/rng.hpp"

namespace ndp {

using CellId = std::size_t;

enum class ActionKind : std::size_t { Differentiate = 0, Grow = 1, UpdateEdge = 2 };
inline constexpr std::size_t kActionKinds = 3;
inline constexpr std::array<ActionKind, kActionKinds> kAllActions = {ActionKind::Differentiate, ActionKind::Grow,
                                                                    ActionKind::UpdateEdge};

const char* to_string(ActionKind k);

enum class CellRole { Observation, Action, Hidden };

const char* to_string(CellRole r);

inline constexpr std::size_t kDefaultExtrinsicDim = 8;
inline constexpr std::size_t kDefaultMaxCells = 100;

struct Cell {
  CellId id = 0;
  CellRole role = CellRole::Hidden;
  std::size_t lineage = 0;  // founder whose intrinsic state this cell carries
  Vec intrinsic;            // one-hot at `lineage`, never modified
  Vec extrinsic;
  std::array<int, kActionKinds> inhibition{};

  int inhibition_for(ActionKind k) const { return inhibition[static_cast<std::size_t>(k)]; }
  bool inhibited(ActionKind k) const { return inhibition_for(k) > 0; }
  bool operator==(const Cell&) const = default;
};

struct Edge {
  CellId src = 0;
  CellId dst = 0;
  double weight = 0.0;
  bool operator==(const Edge&) const = default;
};

// Directed developmental graph. Cell ids equal their creation index; cells
// are never removed. Adjacency is stored densely up to max_cells.
class DevGraph {
 public:
  DevGraph(std::size_t obs_dim, std::size_t act_dim, std::size_t extrinsic_dim = kDefaultExtrinsicDim,
           std::size_t max_cells = kDefaultMaxCells);

  std::size_t obs_dim() const { return obs_dim_; }
  std::size_t act_dim() const { return act_dim_; }
  std::size_t founder_count() const { return obs_dim_ + act_dim_; }
  std::size_t extrinsic_dim() const { return extrinsic_dim_; }
  std::size_t max_cells() const { return max_cells_; }
  std::size_t size() const { return cells_.size(); }
  bool full() const { return cells_.size() >= max_cells_; }

  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(CellId id) const;

  // Appends a founder with a one-hot intrinsic state; only used by init_graph.
  CellId add_founder(CellRole role, Vec extrinsic);

  // Child inherits lineage, intrinsic and extrinsic state from its parent and
  // receives the edge parent->child with the given weight. nullopt when full.
  std::optional<CellId> add_cell(CellId parent, double edge_weight);

  void set_extrinsic(CellId id, Vec extrinsic);

  void set_edge(CellId src, CellId dst, double weight);
  bool has_edge(CellId src, CellId dst) const;
  double weight(CellId src, CellId dst) const;  // 0 if absent
  std::size_t edge_count() const { return edge_count_; }
  std::vector<Edge> edges() const;  // sorted by (src, dst)

  // Union of in- and out-neighbours, ascending, excluding the cell itself.
  std::vector<CellId> neighbors(CellId id) const;

  // Sets the counter to max(current, duration).
  void inhibit(CellId id, ActionKind k, int duration);
  void tick_inhibition();

  bool operator==(const DevGraph&) const = default;

 private:
  void check_id(CellId id) const;

  std::size_t obs_dim_;
  std::size_t act_dim_;
  std::size_t extrinsic_dim_;
  std::size_t max_cells_;
  std::vector<Cell> cells_;
  std::vector<double> weights_;  // max_cells x max_cells, [src * max + dst]
  std::vector<unsigned char> present_;
  std::size_t edge_count_ = 0;
};

// obs_dim + act_dim founders with unique one-hot intrinsic states and
// extrinsic states i.i.d. uniform in [-1, 1]; no edges.
DevGraph init_graph(std::size_t obs_dim, std::size_t act_dim, Rng& rng,
                    std::size_t extrinsic_dim = kDefaultExtrinsicDim, std::size_t max_cells = kDefaultMaxCells);

// Structured-text snapshot (JSON) used by the trace command.
std::string graph_snapshot_json(const DevGraph& g, std::size_t step);

}  // namespace ndp
