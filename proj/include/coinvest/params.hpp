#pragma once

#include <cstdint>

namespace coinvest {

/// Unit costs, speeds and emission factors for the two service layers.
/// Defaults follow the Swiss-franc figures used throughout the test data.
struct ServiceParams {
  double value_of_time = 30.0;         // CHF/h
  double rail_fare_per_km = 0.25;      // CHF/km/pax
  double alt_fare_per_km = 1.65;       // CHF/km/pax
  double rail_speed_kmh = 150.0;
  double alt_speed_kmh = 100.0;
  double rail_emission_per_km = 0.019; // kg CO2/km/pax
  double alt_emission_per_km = 0.148;  // kg CO2/km/pax
  std::int64_t capacity_per_frequency = 500;  // pax/day per frequency unit
  double build_cost_per_km = 574.0;    // CHF/day/km, line construction
  double frequency_cost_per_km = 31.4; // CHF/day/km per frequency unit
  int max_frequency = 15;
  double bpr_coefficient = 0.15;
  double bpr_exponent = 4.0;

  double rail_unit_cost() const {
    return value_of_time / rail_speed_kmh + rail_fare_per_km;  // CHF/km/pax on rail
  }
  double alt_unit_cost() const {
    return value_of_time / alt_speed_kmh + alt_fare_per_km;    // CHF/km/pax off rail
  }
};

/// Objective weights: objective = -w_emission*Je - w_travel_cost*Jc + w_profit*Jp.
struct Weights {
  double emission = 0.1;      // CHF per kg CO2
  double travel_cost = 1.0;
  double profit = 1.0;
};

}  // namespace coinvest
