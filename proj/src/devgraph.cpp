#include "ndp/devgraph.hpp"

#include <cmath>
#include <json.hpp>
#include <random>

#include "ndp/error.hpp"

namespace ndp {

const char* to_string(ActionKind k) {
  switch (k) {
    case ActionKind::Differentiate: return "differentiate";
    case ActionKind::Grow: return "grow";
    case ActionKind::UpdateEdge: return "update_edge";
  }
  return "?";
}

const char* to_string(CellRole r) {
  switch (r) {
    case CellRole::Observation: return "observation";
    case CellRole::Action: return "action";
    case CellRole::Hidden: return "hidden";
  }
  return "?";
}

DevGraph::DevGraph(std::size_t obs_dim, std::size_t act_dim, std::size_t extrinsic_dim, std::size_t max_cells)
    : obs_dim_(obs_dim), act_dim_(act_dim), extrinsic_dim_(extrinsic_dim), max_cells_(max_cells) {
  require(obs_dim >= 1 && act_dim >= 1, "DevGraph: obs_dim and act_dim must be >= 1");
  require(extrinsic_dim >= 1, "DevGraph: extrinsic_dim must be >= 1");
  require(max_cells >= obs_dim + act_dim, "DevGraph: max_cells smaller than founder count");
  cells_.reserve(max_cells);
  weights_.assign(max_cells * max_cells, 0.0);
  present_.assign(max_cells * max_cells, 0);
}

void DevGraph::check_id(CellId id) const { require(id < cells_.size(), "DevGraph: unknown cell id"); }

const Cell& DevGraph::cell(CellId id) const {
  check_id(id);
  return cells_[id];
}

CellId DevGraph::add_founder(CellRole role, Vec extrinsic) {
  require(cells_.size() < founder_count(), "DevGraph: founders already complete");
  require(extrinsic.size() == extrinsic_dim_, "DevGraph: extrinsic length mismatch");
  Cell c;
  c.id = cells_.size();
  c.role = role;
  c.lineage = c.id;
  c.intrinsic.assign(founder_count(), 0.0);
  c.intrinsic[c.id] = 1.0;
  c.extrinsic = std::move(extrinsic);
  cells_.push_back(std::move(c));
  return cells_.back().id;
}

std::optional<CellId> DevGraph::add_cell(CellId parent, double edge_weight) {
  check_id(parent);
  require(cells_.size() >= founder_count(), "DevGraph: founders incomplete");
  if (full()) return std::nullopt;
  require(std::isfinite(edge_weight), "DevGraph: non-finite edge weight");
  const Cell& p = cells_[parent];
  Cell c;
  c.id = cells_.size();
  c.role = CellRole::Hidden;
  c.lineage = p.lineage;
  c.intrinsic = p.intrinsic;
  c.extrinsic = p.extrinsic;
  cells_.push_back(std::move(c));
  set_edge(parent, cells_.back().id, edge_weight);
  return cells_.back().id;
}

void DevGraph::set_extrinsic(CellId id, Vec extrinsic) {
  check_id(id);
  require(extrinsic.size() == extrinsic_dim_, "DevGraph: extrinsic length mismatch");
  cells_[id].extrinsic = std::move(extrinsic);
}

void DevGraph::set_edge(CellId src, CellId dst, double weight) {
  check_id(src);
  check_id(dst);
  require(std::isfinite(weight), "DevGraph: non-finite edge weight");
  const std::size_t k = src * max_cells_ + dst;
  if (!present_[k]) {
    present_[k] = 1;
    ++edge_count_;
  }
  weights_[k] = weight;
}

bool DevGraph::has_edge(CellId src, CellId dst) const {
  check_id(src);
  check_id(dst);
  return present_[src * max_cells_ + dst] != 0;
}

double DevGraph::weight(CellId src, CellId dst) const {
  check_id(src);
  check_id(dst);
  return weights_[src * max_cells_ + dst];
}

std::vector<Edge> DevGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (CellId s = 0; s < cells_.size(); ++s)
    for (CellId d = 0; d < cells_.size(); ++d)
      if (present_[s * max_cells_ + d]) out.push_back({s, d, weights_[s * max_cells_ + d]});
  return out;
}

std::vector<CellId> DevGraph::neighbors(CellId id) const {
  check_id(id);
  std::vector<CellId> out;
  for (CellId o = 0; o < cells_.size(); ++o) {
    if (o == id) continue;
    if (present_[id * max_cells_ + o] || present_[o * max_cells_ + id]) out.push_back(o);
  }
  return out;
}

void DevGraph::inhibit(CellId id, ActionKind k, int duration) {
  check_id(id);
  require(duration >= 0, "DevGraph: negative inhibition duration");
  auto& c = cells_[id].inhibition[static_cast<std::size_t>(k)];
  if (duration > c) c = duration;
}

void DevGraph::tick_inhibition() {
  for (auto& c : cells_)
    for (auto& v : c.inhibition)
      if (v > 0) --v;
}

DevGraph init_graph(std::size_t obs_dim, std::size_t act_dim, Rng& rng, std::size_t extrinsic_dim,
                    std::size_t max_cells) {
  DevGraph g(obs_dim, act_dim, extrinsic_dim, max_cells);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < obs_dim + act_dim; ++i) {
    Vec ext(extrinsic_dim);
    for (auto& x : ext) x = u(rng);
    g.add_founder(i < obs_dim ? CellRole::Observation : CellRole::Action, std::move(ext));
  }
  return g;
}

std::string graph_snapshot_json(const DevGraph& g, std::size_t step) {
  using nlohmann::json;
  json cells = json::array();
  for (const auto& c : g.cells()) {
    json inh = json::object();
    for (auto k : kAllActions) inh[to_string(k)] = c.inhibition_for(k);
    cells.push_back({{"id", c.id},
                     {"role", to_string(c.role)},
                     {"lineage", c.lineage},
                     {"intrinsic", c.intrinsic},
                     {"extrinsic", c.extrinsic},
                     {"inhibition", inh}});
  }
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({{"src", e.src}, {"dst", e.dst}, {"weight", e.weight}});
  json doc = {{"step", step},
              {"obs_dim", g.obs_dim()},
              {"act_dim", g.act_dim()},
              {"cell_count", g.size()},
              {"edge_count", g.edge_count()},
              {"cells", cells},
              {"edges", edges}};
  return doc.dump(1);
}

}  // namespace ndp
