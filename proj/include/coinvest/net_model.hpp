#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coinvest/errors.hpp"
#include "coinvest/params.hpp"

namespace coinvest {

enum class Layer { kAlt, kRail, kTransfer };

enum class RegionClass { kRegion1, kRegion2, kCrossing };

constexpr std::int64_t kUncapacitated = INT64_C(1) << 40;

/// Per-edge service label: availability, capacity, length and travel time.
struct EdgeLabel {
  bool available = false;
  std::int64_t capacity = 0;  // pax/day
  double length_km = 0.0;
  double travel_time_h = 0.0;
};

struct Node {
  int id = 0;       // unique across both layers
  int base_id = 0;  // dataset id, shared by co-located alt/rail nodes
  int region = 0;   // 1 or 2
  Layer layer = Layer::kAlt;
  double x = 0.0;
  double y = 0.0;
};

struct Edge {
  int id = 0;
  int tail = 0;  // node ids
  int head = 0;
  Layer layer = Layer::kAlt;
  RegionClass region_class = RegionClass::kRegion1;
  EdgeLabel label;
};

/// One authority's (or the coalition's) yearly decision: which rail edges to
/// construct and how many frequency units to add.
struct DesignAction {
  std::map<int, bool> builds;    // rail edge id -> construct this year
  std::map<int, int> upgrades;   // rail edge id -> added frequency units

  bool empty() const;
  void set_build(int edge_id) { builds[edge_id] = true; }
  void add_frequency(int edge_id, int units);
  /// Drops no-op entries (false builds, zero upgrades).
  DesignAction normalized() const;
  bool operator==(const DesignAction& other) const;
};

/// Sums two actions: builds are OR-ed, upgrades added. Throws if both build
/// the same edge.
DesignAction combine(const DesignAction& a, const DesignAction& b);

class NetworkState;

/// Immutable two-region, two-layer directed mobility graph.
///
/// Node and edge records are stored sorted by id; hot paths work with dense
/// indices (positions in those vectors). Rail edges additionally get a
/// compact "slot" numbering used by NetworkState.
class MobilityGraph {
 public:
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_node(int id) const;
  bool has_edge(int id) const;
  const Node& node(int id) const;
  const Edge& edge(int id) const;
  int node_index(int id) const;
  int edge_index(int id) const;

  int num_alt_nodes() const { return static_cast<int>(alt_nodes_.size()); }
  int num_rail_nodes() const { return static_cast<int>(rail_nodes_.size()); }
  const std::vector<int>& alt_node_indices() const { return alt_nodes_; }
  const std::vector<int>& rail_node_indices() const { return rail_nodes_; }
  const std::vector<int>& alt_edge_indices() const { return alt_edges_; }
  const std::vector<int>& rail_edge_indices() const { return rail_edges_; }
  const std::vector<int>& transfer_edge_indices() const { return transfer_edges_; }

  int num_rail_edges() const { return static_cast<int>(rail_edges_.size()); }
  /// Compact rail numbering: slot in [0, num_rail_edges) or -1.
  int rail_slot(int edge_id) const;
  int rail_edge_id(int slot) const { return edges_[rail_edges_[slot]].id; }

  /// Alt-layer adjacency: per alt node index, indices of outgoing alt edges.
  const std::vector<std::vector<int>>& alt_adjacency() const { return alt_adj_; }
  /// Rail-layer adjacency over rail nodes and rail edges only.
  const std::vector<std::vector<int>>& rail_adjacency() const { return rail_adj_; }
  /// Reverse adjacencies (incoming edges), same indexing.
  const std::vector<std::vector<int>>& alt_radjacency() const { return alt_radj_; }
  const std::vector<std::vector<int>>& rail_radjacency() const { return rail_radj_; }

  /// Node id of the alt-layer node with the given dataset id, or -1.
  int alt_node_of_base(int base_id) const;
  /// Node id of the rail station co-located with the dataset id, or -1.
  int rail_node_of_base(int base_id) const;

  /// Rail edge ids restricted to one region class.
  std::vector<int> rail_edge_ids(RegionClass rc) const;
  /// Stage-1 decision set for an authority: rail edges internal to region i.
  std::vector<int> authority_rail_edges(int region) const;
  /// Every rail edge id (stage-2 decision set).
  std::vector<int> all_rail_edge_ids() const;

  int region_of_node(int node_id) const { return node(node_id).region; }

 private:
  friend class GraphBuilder;

  std::vector<Node> nodes_;   // sorted by id
  std::vector<Edge> edges_;   // sorted by id
  std::map<int, int> node_index_;
  std::map<int, int> edge_index_;
  std::vector<int> alt_nodes_, rail_nodes_;
  std::vector<int> alt_edges_, rail_edges_, transfer_edges_;
  std::vector<int> rail_slot_of_edge_;  // by edge index, -1 for non-rail
  std::vector<std::vector<int>> alt_adj_, rail_adj_, alt_radj_, rail_radj_;
  std::map<int, int> alt_of_base_, rail_of_base_;
};

/// Assembles a MobilityGraph from base (alt-layer) nodes and edges.
///
/// Nodes flagged as rail stations get a co-located rail node plus a transfer
/// edge in each direction; edges flagged as rail candidates get a mirrored
/// candidate rail edge. Generated ids are offset by the next power of ten
/// above the largest base id, so e.g. base edge 14 yields rail edge 114 and
/// the transfer edges of base node k come in a contiguous block.
class GraphBuilder {
 public:
  GraphBuilder& add_node(int id, int region, bool rail_station, double x, double y);
  /// `road_capacity` only matters for the BPR congestion oracle; the main
  /// assignment treats the alternative layer as uncapacitated.
  GraphBuilder& add_edge(int id, int tail, int head, double length_km, bool rail_candidate,
                         std::int64_t road_capacity = kUncapacitated);
  MobilityGraph build(const ServiceParams& params = {}) const;

 private:
  struct BaseNode { int id; int region; bool station; double x, y; };
  struct BaseEdge { int id; int tail; int head; double length; bool rail; std::int64_t capacity; };
  std::vector<BaseNode> nodes_;
  std::vector<BaseEdge> edges_;
};

/// Cumulative rail layout for one design year: per rail edge, whether the
/// line exists and how many frequency units it runs.
class NetworkState {
 public:
  NetworkState() = default;
  static NetworkState initial(const MobilityGraph& graph);

  int year() const { return year_; }
  bool connected(const MobilityGraph& graph, int rail_edge_id) const;
  int frequency(const MobilityGraph& graph, int rail_edge_id) const;
  std::int64_t capacity(const MobilityGraph& graph, int rail_edge_id,
                        const ServiceParams& params) const;

  const std::vector<std::uint8_t>& x() const { return x_; }
  const std::vector<int>& s() const { return s_; }

  bool operator==(const NetworkState& other) const {
    return year_ == other.year_ && x_ == other.x_ && s_ == other.s_;
  }
  /// Layout comparison that ignores the year counter.
  bool same_layout(const NetworkState& other) const {
    return x_ == other.x_ && s_ == other.s_;
  }
  /// True if this layout contains every build and frequency unit of `other`.
  bool contains(const NetworkState& other) const;

 private:
  friend NetworkState apply_action(const MobilityGraph&, const NetworkState&,
                                   const DesignAction&, const ServiceParams&);
  int year_ = 0;
  std::vector<std::uint8_t> x_;  // by rail slot
  std::vector<int> s_;           // by rail slot
};

inline std::int64_t rail_capacity(const ServiceParams& params, int frequency) {
  return params.capacity_per_frequency * frequency;
}

/// Applies a yearly action: increments the year, ORs connectivity, adds
/// frequencies. Throws on unknown edges, rebuilds, frequency overflow past
/// max_frequency, and frequency assigned to an unconnected edge.
NetworkState apply_action(const MobilityGraph& graph, const NetworkState& state,
                          const DesignAction& action, const ServiceParams& params = {});

/// Invariant check; returns human-readable violations (empty when valid).
std::vector<std::string> validate_graph(const MobilityGraph& graph);

/// The 24-node / 76-edge Sioux Falls benchmark split into two regions
/// (dataset nodes 1-11 vs 12-24), mirrored into rail-candidate and
/// alternative layers with transfer edges at every node.
MobilityGraph build_sioux_falls(const ServiceParams& params = {});

struct SiouxFallsNodeRow { int id; double x, y; };
struct SiouxFallsEdgeRow { int id; int tail; int head; double length_km; };
const std::vector<SiouxFallsNodeRow>& sioux_falls_nodes();
const std::vector<SiouxFallsEdgeRow>& sioux_falls_edges();

}  // namespace coinvest
