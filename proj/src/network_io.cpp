#include "coinvest/network_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace coinvest {

namespace {

std::string strip(const std::string& line) {
  std::string s = line;
  const auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

MobilityGraph parse_network(std::istream& in, const ServiceParams& params) {
  GraphBuilder builder;
  enum class Section { kNone, kNodes, kEdges } section = Section::kNone;
  std::string line;
  int line_no = 0;
  bool any_node = false;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip(line);
    if (body.empty()) continue;
    if (body == "NODES") {
      section = Section::kNodes;
      continue;
    }
    if (body == "EDGES") {
      section = Section::kEdges;
      continue;
    }
    std::istringstream row(body);
    if (section == Section::kNodes) {
      int id = 0, region = 0, station = 0;
      double x = 0, y = 0;
      if (!(row >> id >> region >> station >> x >> y)) {
        fail("expected 'id region rail_station x y'");
      }
      builder.add_node(id, region, station != 0, x, y);
      any_node = true;
    } else if (section == Section::kEdges) {
      int id = 0, tail = 0, head = 0, rail = 0;
      double length = 0;
      if (!(row >> id >> tail >> head >> length >> rail)) {
        fail("expected 'id tail head length_km rail_candidate'");
      }
      if (!(length > 0)) fail("edge " + std::to_string(id) + " has non-positive length");
      builder.add_edge(id, tail, head, length, rail != 0);
    } else {
      fail("content before a NODES/EDGES section");
    }
  }
  if (!any_node) throw Error(ErrorCode::kParseError, "no NODES section");
  return builder.build(params);  // reports duplicate ids / dangling endpoints
}

MobilityGraph parse_network_file(const std::string& path, const ServiceParams& params) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open network file " + path);
  return parse_network(in, params);
}

void write_network(std::ostream& out, const MobilityGraph& g) {
  out << "# base-layer mobility network; rail layer and transfer edges are derived on load\n";
  out << "# NODES: id region rail_station x_km y_km\n";
  out << "# EDGES: id tail head length_km rail_candidate\n";
  out << "NODES\n";
  for (int ni : g.alt_node_indices()) {
    const Node& n = g.nodes()[ni];
    const bool station = g.rail_node_of_base(n.base_id) >= 0;
    out << n.id << ' ' << n.region << ' ' << (station ? 1 : 0) << ' ' << fmt(n.x) << ' '
        << fmt(n.y) << '\n';
  }
  out << "EDGES\n";
  for (int ei : g.alt_edge_indices()) {
    const Edge& e = g.edges()[ei];
    bool rail = false;
    for (int ri : g.rail_edge_indices()) {
      const Edge& r = g.edges()[ri];
      if (g.node(r.tail).base_id == g.node(e.tail).base_id &&
          g.node(r.head).base_id == g.node(e.head).base_id) {
        rail = true;
        break;
      }
    }
    out << e.id << ' ' << e.tail << ' ' << e.head << ' ' << fmt(e.label.length_km) << ' '
        << (rail ? 1 : 0) << '\n';
  }
}

std::string network_to_string(const MobilityGraph& g) {
  std::ostringstream out;
  write_network(out, g);
  return out.str();
}

}  // namespace coinvest
