#include "coinvest/demand.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace coinvest {

const char* trip_type_name(TripType t) {
  switch (t) {
    case TripType::kIntra1: return "intra1";
    case TripType::kIntra2: return "intra2";
    case TripType::kInter1: return "inter1";
    case TripType::kInter2: return "inter2";
  }
  return "?";
}

TripType classify(int origin_id, int destination_id, const MobilityGraph& graph) {
  const Node& o = graph.node(origin_id);
  const Node& d = graph.node(destination_id);
  if (o.region == d.region) {
    return o.region == 1 ? TripType::kIntra1 : TripType::kIntra2;
  }
  return o.region == 1 ? TripType::kInter1 : TripType::kInter2;
}

namespace {

/// Portable bounded draw; std::uniform_int_distribution is not pinned across
/// standard libraries.
std::int64_t draw_uniform(std::mt19937_64& rng, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

std::int64_t round_half_up(double v) { return std::llround(v); }

}  // namespace

DemandModel generate(const MobilityGraph& graph, const DemandBounds& bounds,
                     std::uint64_t seed, double growth_rate) {
  for (const auto& [lo, hi] : bounds.by_type) {
    if (lo > hi || lo < 0) {
      throw Error(ErrorCode::kInvalidBounds,
                  "demand bounds [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    }
  }
  DemandModel model;
  model.growth_rate = growth_rate;
  model.bounds = bounds;
  std::mt19937_64 rng(seed);
  const auto& alt = graph.alt_node_indices();
  for (int oi : alt) {
    for (int di : alt) {
      if (oi == di) continue;
      const Node& o = graph.nodes()[oi];
      const Node& d = graph.nodes()[di];
      TravelRequest r;
      r.origin = o.id;
      r.destination = d.id;
      r.trip_type = classify(o.id, d.id, graph);
      const auto& [lo, hi] = bounds.of(r.trip_type);
      r.trips = draw_uniform(rng, lo, hi);
      model.requests.push_back(r);
    }
  }
  return model;
}

std::vector<TravelRequest> demand_at_year(const DemandModel& model, int year) {
  std::vector<TravelRequest> out = model.requests;
  if (year <= 1) return out;
  const double factor = std::pow(1.0 + model.growth_rate, year - 1);
  for (auto& r : out) r.trips = round_half_up(static_cast<double>(r.trips) * factor);
  return out;
}

DemandModel scale_intra_demand(const DemandModel& model, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw Error(ErrorCode::kInvalidBounds, "intra-demand ratio must be positive");
  }
  double total1 = 0, total2 = 0;
  for (const auto& r : model.requests) {
    if (r.trip_type == TripType::kIntra1) total1 += static_cast<double>(r.trips);
    if (r.trip_type == TripType::kIntra2) total2 += static_cast<double>(r.trips);
  }
  DemandModel out = model;
  if (total1 + total2 <= 0) return out;
  const double combined = total1 + total2;
  const double target1 = combined * r1 / (r1 + r2);
  const double target2 = combined - target1;
  const double f1 = total1 > 0 ? target1 / total1 : 0.0;
  const double f2 = total2 > 0 ? target2 / total2 : 0.0;
  for (auto& r : out.requests) {
    if (r.trip_type == TripType::kIntra1) {
      r.trips = round_half_up(static_cast<double>(r.trips) * f1);
    } else if (r.trip_type == TripType::kIntra2) {
      r.trips = round_half_up(static_cast<double>(r.trips) * f2);
    }
  }
  return out;
}

DemandModel load_demand_csv(std::istream& in, const MobilityGraph& graph, double growth_rate) {
  DemandModel model;
  model.growth_rate = growth_rate;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (trimmed.empty()) continue;
    for (char& c : trimmed) {
      if (c == ',') c = ' ';
    }
    std::istringstream row(trimmed);
    int o = 0, d = 0;
    long long trips = 0;
    if (!(row >> o >> d >> trips) || trips < 0) {
      throw Error(ErrorCode::kParseError,
                  "demand line " + std::to_string(line_no) + ": expected origin,destination,trips");
    }
    if (o == d) {
      throw Error(ErrorCode::kParseError,
                  "demand line " + std::to_string(line_no) + ": origin equals destination");
    }
    TravelRequest r;
    r.origin = o;
    r.destination = d;
    r.trips = trips;
    r.trip_type = classify(o, d, graph);  // throws UnknownNode for bad ids
    model.requests.push_back(r);
  }
  return model;
}

DemandModel load_demand_csv_file(const std::string& path, const MobilityGraph& graph,
                                 double growth_rate) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open demand file " + path);
  return load_demand_csv(in, graph, growth_rate);
}

}  // namespace coinvest
