#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coinvest/net_model.hpp"

namespace coinvest {

enum class TripType { kIntra1, kIntra2, kInter1, kInter2 };

const char* trip_type_name(TripType t);

/// One origin-destination demand entry (alt-layer node ids, pax/day).
struct TravelRequest {
  int origin = 0;
  int destination = 0;
  std::int64_t trips = 0;
  TripType trip_type = TripType::kIntra1;
};

/// Per-type inclusive bounds of the uniform daily-trip draw.
struct DemandBounds {
  std::array<std::pair<int, int>, 4> by_type = {{{20, 200}, {20, 200}, {20, 200}, {20, 200}}};

  const std::pair<int, int>& of(TripType t) const { return by_type[static_cast<int>(t)]; }
  std::pair<int, int>& of(TripType t) { return by_type[static_cast<int>(t)]; }
};

struct DemandModel {
  std::vector<TravelRequest> requests;  // base-year volumes, one per ordered OD pair
  double growth_rate = 0.015;           // per year
  DemandBounds bounds;
};

/// Trip categorization from endpoint regions: intra-i when both ends lie in
/// region i, inter-i when the trip starts in region i and ends elsewhere.
TripType classify(int origin_id, int destination_id, const MobilityGraph& graph);

/// Deterministically draws one request per ordered pair of distinct alt
/// nodes, with volumes uniform in the type's bounds.
DemandModel generate(const MobilityGraph& graph, const DemandBounds& bounds,
                     std::uint64_t seed, double growth_rate = 0.015);

/// Demand in design year t >= 1: volumes grown by (1+tau)^(t-1), rounded
/// half up.
std::vector<TravelRequest> demand_at_year(const DemandModel& model, int year);

/// Rescales intra-regional volumes to the ratio r1:r2 while keeping the
/// combined intra-regional total constant up to per-request rounding.
/// Inter-regional requests are untouched.
DemandModel scale_intra_demand(const DemandModel& model, double r1, double r2);

/// Demand CSV override: lines "origin,destination,trips", '#' comments.
DemandModel load_demand_csv(std::istream& in, const MobilityGraph& graph,
                            double growth_rate = 0.015);
DemandModel load_demand_csv_file(const std::string& path, const MobilityGraph& graph,
                                 double growth_rate = 0.015);

}  // namespace coinvest
