#include "coinvest/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace coinvest {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kUnknownEdge: return "UnknownEdge";
    case ErrorCode::kRebuildExisting: return "RebuildExisting";
    case ErrorCode::kFrequencyOverflow: return "FrequencyOverflow";
    case ErrorCode::kBigMViolation: return "BigMViolation";
    case ErrorCode::kInvalidBounds: return "InvalidBounds";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNoAgreement: return "NoAgreement";
    case ErrorCode::kZeroCoinvestment: return "ZeroCoinvestment";
    case ErrorCode::kZeroRoadCapacity: return "ZeroRoadCapacity";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Error";
}

bool DesignAction::empty() const {
  for (const auto& [e, b] : builds) {
    if (b) return false;
  }
  for (const auto& [e, s] : upgrades) {
    if (s != 0) return false;
  }
  return true;
}

void DesignAction::add_frequency(int edge_id, int units) {
  if (units != 0) upgrades[edge_id] += units;
}

DesignAction DesignAction::normalized() const {
  DesignAction out;
  for (const auto& [e, b] : builds) {
    if (b) out.builds[e] = true;
  }
  for (const auto& [e, s] : upgrades) {
    if (s != 0) out.upgrades[e] = s;
  }
  return out;
}

bool DesignAction::operator==(const DesignAction& other) const {
  const DesignAction a = normalized();
  const DesignAction b = other.normalized();
  return a.builds == b.builds && a.upgrades == b.upgrades;
}

DesignAction combine(const DesignAction& a, const DesignAction& b) {
  DesignAction out = a.normalized();
  const DesignAction nb = b.normalized();
  for (const auto& [e, f] : nb.builds) {
    if (out.builds.count(e)) {
      throw Error(ErrorCode::kRebuildExisting,
                  "both actions build edge " + std::to_string(e));
    }
    out.builds[e] = true;
  }
  for (const auto& [e, s] : nb.upgrades) out.upgrades[e] += s;
  return out;
}

bool MobilityGraph::has_node(int id) const { return node_index_.count(id) > 0; }
bool MobilityGraph::has_edge(int id) const { return edge_index_.count(id) > 0; }

const Node& MobilityGraph::node(int id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) {
    throw Error(ErrorCode::kUnknownNode, "node " + std::to_string(id));
  }
  return nodes_[it->second];
}

const Edge& MobilityGraph::edge(int id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) {
    throw Error(ErrorCode::kUnknownEdge, "edge " + std::to_string(id));
  }
  return edges_[it->second];
}

int MobilityGraph::node_index(int id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) {
    throw Error(ErrorCode::kUnknownNode, "node " + std::to_string(id));
  }
  return it->second;
}

int MobilityGraph::edge_index(int id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) {
    throw Error(ErrorCode::kUnknownEdge, "edge " + std::to_string(id));
  }
  return it->second;
}

int MobilityGraph::rail_slot(int edge_id) const {
  return rail_slot_of_edge_[edge_index(edge_id)];
}

int MobilityGraph::alt_node_of_base(int base_id) const {
  auto it = alt_of_base_.find(base_id);
  return it == alt_of_base_.end() ? -1 : it->second;
}

int MobilityGraph::rail_node_of_base(int base_id) const {
  auto it = rail_of_base_.find(base_id);
  return it == rail_of_base_.end() ? -1 : it->second;
}

std::vector<int> MobilityGraph::rail_edge_ids(RegionClass rc) const {
  std::vector<int> out;
  for (int idx : rail_edges_) {
    if (edges_[idx].region_class == rc) out.push_back(edges_[idx].id);
  }
  return out;
}

std::vector<int> MobilityGraph::authority_rail_edges(int region) const {
  return rail_edge_ids(region == 1 ? RegionClass::kRegion1 : RegionClass::kRegion2);
}

std::vector<int> MobilityGraph::all_rail_edge_ids() const {
  std::vector<int> out;
  out.reserve(rail_edges_.size());
  for (int idx : rail_edges_) out.push_back(edges_[idx].id);
  return out;
}

namespace {

int next_pow10(int max_id) {
  int p = 10;
  while (p <= max_id) p *= 10;
  return p;
}

RegionClass classify_edge(int tail_region, int head_region) {
  if (tail_region != head_region) return RegionClass::kCrossing;
  return tail_region == 1 ? RegionClass::kRegion1 : RegionClass::kRegion2;
}

}  // namespace

GraphBuilder& GraphBuilder::add_node(int id, int region, bool rail_station, double x, double y) {
  nodes_.push_back({id, region, rail_station, x, y});
  return *this;
}

GraphBuilder& GraphBuilder::add_edge(int id, int tail, int head, double length_km,
                                     bool rail_candidate, std::int64_t road_capacity) {
  edges_.push_back({id, tail, head, length_km, rail_candidate, road_capacity});
  return *this;
}

MobilityGraph GraphBuilder::build(const ServiceParams& params) const {
  std::set<int> seen_nodes, seen_edges;
  int max_node_id = 0, max_edge_id = 0;
  for (const auto& n : nodes_) {
    if (!seen_nodes.insert(n.id).second) {
      throw Error(ErrorCode::kParseError, "duplicate node id " + std::to_string(n.id));
    }
    max_node_id = std::max(max_node_id, n.id);
  }
  for (const auto& e : edges_) {
    if (!seen_edges.insert(e.id).second) {
      throw Error(ErrorCode::kParseError, "duplicate edge id " + std::to_string(e.id));
    }
    if (!seen_nodes.count(e.tail) || !seen_nodes.count(e.head)) {
      throw Error(ErrorCode::kParseError,
                  "edge " + std::to_string(e.id) + " references a missing node");
    }
    if (e.tail == e.head) {
      throw Error(ErrorCode::kParseError, "edge " + std::to_string(e.id) + " is a self-loop");
    }
    if (!(e.length > 0.0)) {
      throw Error(ErrorCode::kParseError,
                  "edge " + std::to_string(e.id) + " has non-positive length");
    }
    max_edge_id = std::max(max_edge_id, e.id);
  }

  const int node_offset = next_pow10(max_node_id);
  const int edge_offset = next_pow10(max_edge_id);

  std::map<int, const BaseNode*> by_id;
  for (const auto& n : nodes_) by_id[n.id] = &n;

  MobilityGraph g;
  for (const auto& [id, n] : by_id) {
    g.nodes_.push_back({n->id, n->id, n->region, Layer::kAlt, n->x, n->y});
  }
  for (const auto& [id, n] : by_id) {
    if (n->station) {
      g.nodes_.push_back({node_offset + n->id, n->id, n->region, Layer::kRail, n->x, n->y});
    }
  }
  std::sort(g.nodes_.begin(), g.nodes_.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });

  std::map<int, const BaseEdge*> edges_by_id;
  for (const auto& e : edges_) edges_by_id[e.id] = &e;

  auto region_of = [&](int base_id) { return by_id.at(base_id)->region; };

  for (const auto& [id, e] : edges_by_id) {
    Edge alt;
    alt.id = e->id;
    alt.tail = e->tail;
    alt.head = e->head;
    alt.layer = Layer::kAlt;
    alt.region_class = classify_edge(region_of(e->tail), region_of(e->head));
    alt.label = {true, e->capacity, e->length, e->length / params.alt_speed_kmh};
    g.edges_.push_back(alt);
  }
  for (const auto& [id, e] : edges_by_id) {
    if (!e->rail) continue;
    if (!by_id.at(e->tail)->station || !by_id.at(e->head)->station) {
      throw Error(ErrorCode::kParseError,
                  "rail candidate edge " + std::to_string(e->id) +
                      " touches a node without a rail station");
    }
    Edge rail;
    rail.id = edge_offset + e->id;
    rail.tail = node_offset + e->tail;
    rail.head = node_offset + e->head;
    rail.layer = Layer::kRail;
    rail.region_class = classify_edge(region_of(e->tail), region_of(e->head));
    rail.label = {false, 0, e->length, e->length / params.rail_speed_kmh};
    g.edges_.push_back(rail);
  }
  int k = 0;
  for (const auto& [id, n] : by_id) {
    if (!n->station) continue;
    const RegionClass rc = n->region == 1 ? RegionClass::kRegion1 : RegionClass::kRegion2;
    Edge up;
    up.id = 2 * edge_offset + 2 * k;
    up.tail = n->id;
    up.head = node_offset + n->id;
    up.layer = Layer::kTransfer;
    up.region_class = rc;
    up.label = {true, kUncapacitated, 0.0, 0.0};
    Edge down = up;
    down.id = 2 * edge_offset + 2 * k + 1;
    down.tail = node_offset + n->id;
    down.head = n->id;
    g.edges_.push_back(up);
    g.edges_.push_back(down);
    ++k;
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });

  for (int i = 0; i < static_cast<int>(g.nodes_.size()); ++i) {
    const Node& n = g.nodes_[i];
    g.node_index_[n.id] = i;
    if (n.layer == Layer::kAlt) {
      g.alt_nodes_.push_back(i);
      g.alt_of_base_[n.base_id] = n.id;
    } else {
      g.rail_nodes_.push_back(i);
      g.rail_of_base_[n.base_id] = n.id;
    }
  }
  g.rail_slot_of_edge_.assign(g.edges_.size(), -1);
  for (int i = 0; i < static_cast<int>(g.edges_.size()); ++i) {
    const Edge& e = g.edges_[i];
    g.edge_index_[e.id] = i;
    switch (e.layer) {
      case Layer::kAlt: g.alt_edges_.push_back(i); break;
      case Layer::kRail:
        g.rail_slot_of_edge_[i] = static_cast<int>(g.rail_edges_.size());
        g.rail_edges_.push_back(i);
        break;
      case Layer::kTransfer: g.transfer_edges_.push_back(i); break;
    }
  }

  g.alt_adj_.assign(g.nodes_.size(), {});
  g.alt_radj_.assign(g.nodes_.size(), {});
  g.rail_adj_.assign(g.nodes_.size(), {});
  g.rail_radj_.assign(g.nodes_.size(), {});
  for (int i = 0; i < static_cast<int>(g.edges_.size()); ++i) {
    const Edge& e = g.edges_[i];
    const int ti = g.node_index_.at(e.tail);
    const int hi = g.node_index_.at(e.head);
    if (e.layer == Layer::kAlt) {
      g.alt_adj_[ti].push_back(i);
      g.alt_radj_[hi].push_back(i);
    } else if (e.layer == Layer::kRail) {
      g.rail_adj_[ti].push_back(i);
      g.rail_radj_[hi].push_back(i);
    }
  }
  return g;
}

NetworkState NetworkState::initial(const MobilityGraph& graph) {
  NetworkState st;
  st.year_ = 0;
  st.x_.assign(graph.num_rail_edges(), 0);
  st.s_.assign(graph.num_rail_edges(), 0);
  return st;
}

bool NetworkState::connected(const MobilityGraph& graph, int rail_edge_id) const {
  const int slot = graph.rail_slot(rail_edge_id);
  if (slot < 0) throw Error(ErrorCode::kUnknownEdge, "not a rail edge: " + std::to_string(rail_edge_id));
  return x_[slot] != 0;
}

int NetworkState::frequency(const MobilityGraph& graph, int rail_edge_id) const {
  const int slot = graph.rail_slot(rail_edge_id);
  if (slot < 0) throw Error(ErrorCode::kUnknownEdge, "not a rail edge: " + std::to_string(rail_edge_id));
  return s_[slot];
}

std::int64_t NetworkState::capacity(const MobilityGraph& graph, int rail_edge_id,
                                    const ServiceParams& params) const {
  return rail_capacity(params, frequency(graph, rail_edge_id));
}

bool NetworkState::contains(const NetworkState& other) const {
  if (x_.size() != other.x_.size()) return false;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (other.x_[i] && !x_[i]) return false;
    if (other.s_[i] > s_[i]) return false;
  }
  return true;
}

NetworkState apply_action(const MobilityGraph& graph, const NetworkState& state,
                          const DesignAction& action, const ServiceParams& params) {
  NetworkState next = state;
  next.year_ = state.year() + 1;
  const DesignAction a = action.normalized();
  for (const auto& [edge_id, flag] : a.builds) {
    const int slot = graph.rail_slot(edge_id);
    if (slot < 0) {
      throw Error(ErrorCode::kUnknownEdge, "not a rail edge: " + std::to_string(edge_id));
    }
    if (next.x_[slot]) {
      throw Error(ErrorCode::kRebuildExisting,
                  "edge " + std::to_string(edge_id) + " is already connected");
    }
    next.x_[slot] = 1;
  }
  for (const auto& [edge_id, units] : a.upgrades) {
    const int slot = graph.rail_slot(edge_id);
    if (slot < 0) {
      throw Error(ErrorCode::kUnknownEdge, "not a rail edge: " + std::to_string(edge_id));
    }
    if (units < 0) {
      throw Error(ErrorCode::kFrequencyOverflow,
                  "negative frequency change on edge " + std::to_string(edge_id));
    }
    if (!next.x_[slot]) {
      throw Error(ErrorCode::kBigMViolation,
                  "frequency assigned to unconnected edge " + std::to_string(edge_id));
    }
    if (next.s_[slot] + units > params.max_frequency) {
      throw Error(ErrorCode::kFrequencyOverflow,
                  "edge " + std::to_string(edge_id) + " would exceed max frequency");
    }
    next.s_[slot] += units;
  }
  return next;
}

namespace {

bool strongly_connected_alt(const MobilityGraph& g) {
  const auto& alt = g.alt_node_indices();
  if (alt.empty()) return true;
  auto bfs = [&](const std::vector<std::vector<int>>& adj, bool forward) {
    std::vector<char> seen(g.nodes().size(), 0);
    std::deque<int> q{alt.front()};
    seen[alt.front()] = 1;
    int count = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int ei : adj[u]) {
        const Edge& e = g.edges()[ei];
        const int v = g.node_index(forward ? e.head : e.tail);
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          q.push_back(v);
        }
      }
    }
    return count == static_cast<int>(alt.size());
  };
  return bfs(g.alt_adjacency(), true) && bfs(g.alt_radjacency(), false);
}

}  // namespace

std::vector<std::string> validate_graph(const MobilityGraph& g) {
  std::vector<std::string> violations;
  auto report = [&](const std::string& msg) { violations.push_back(msg); };

  for (const Node& n : g.nodes()) {
    if (n.region != 1 && n.region != 2) {
      report("node " + std::to_string(n.id) + " has region " + std::to_string(n.region) +
             " outside the two-region partition");
    }
  }
  for (const Edge& e : g.edges()) {
    const Node& t = g.node(e.tail);
    const Node& h = g.node(e.head);
    const RegionClass expect = t.region != h.region
                                   ? RegionClass::kCrossing
                                   : (t.region == 1 ? RegionClass::kRegion1 : RegionClass::kRegion2);
    if (e.region_class != expect) {
      report("edge " + std::to_string(e.id) + " region class disagrees with its endpoints");
    }
    if (e.label.capacity > 0 && !e.label.available) {
      report("edge " + std::to_string(e.id) + " has capacity without availability");
    }
    if (e.layer != Layer::kTransfer && !(e.label.length_km > 0.0)) {
      report("edge " + std::to_string(e.id) + " has non-positive length");
    }
  }
  // Transfer pairing: every rail node needs exactly one co-located alt node
  // joined by a transfer edge in each direction.
  for (int ni : g.rail_node_indices()) {
    const Node& rn = g.nodes()[ni];
    const int alt_id = g.alt_node_of_base(rn.base_id);
    if (alt_id < 0) {
      report("rail node " + std::to_string(rn.id) + " has no co-located alt node");
      continue;
    }
    int up = 0, down = 0;
    for (const Edge& e : g.edges()) {
      if (e.layer != Layer::kTransfer) continue;
      if (e.tail == alt_id && e.head == rn.id) ++up;
      if (e.tail == rn.id && e.head == alt_id) ++down;
    }
    if (up != 1 || down != 1) {
      report("rail node " + std::to_string(rn.id) + " lacks a transfer edge pair");
    }
  }
  if (!strongly_connected_alt(g)) {
    report("alternative layer is not strongly connected");
  }
  return violations;
}

}  // namespace coinvest
