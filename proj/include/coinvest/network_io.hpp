#pragma once

#include <iosfwd>
#include <string>

#include "coinvest/net_model.hpp"

namespace coinvest {

/// Text network format:
///   # comment
///   NODES
///   <id> <region> <rail_station 0|1> <x_km> <y_km>
///   EDGES
///   <id> <tail> <head> <length_km> <rail_candidate 0|1>
/// Node/edge ids refer to the base (alt) layer; the rail layer and transfer
/// edges are derived on load (see GraphBuilder).
MobilityGraph parse_network(std::istream& in, const ServiceParams& params = {});
MobilityGraph parse_network_file(const std::string& path, const ServiceParams& params = {});

/// Canonical serialization of the base layer (sorted ids, %.10g numbers).
/// Reparsing the output reproduces the graph exactly.
void write_network(std::ostream& out, const MobilityGraph& graph);
std::string network_to_string(const MobilityGraph& graph);

}  // namespace coinvest
