#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coinvest/bargain.hpp"
#include "coinvest/network_io.hpp"
#include "coinvest/report.hpp"
#include "coinvest/scenario.hpp"
#include "coinvest/ue_oracle.hpp"

namespace py = pybind11;
using namespace coinvest;

namespace {

DesignAction action_from_dicts(const std::vector<int>& builds,
                               const std::map<int, int>& upgrades) {
  DesignAction a;
  for (int id : builds) a.set_build(id);
  for (const auto& [id, units] : upgrades) a.add_frequency(id, units);
  return a;
}

PayoffTriple triple_of(std::pair<double, double> no_mech, std::pair<double, double> stage1,
                       double pool) {
  PayoffTriple t;
  t.no_mech = {no_mech.first, no_mech.second};
  t.stage1 = {stage1.first, stage1.second};
  t.pool = pool;
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-region rail network design game: equilibrium, co-investment and "
            "Nash-bargaining payoff sharing";

  py::register_exception<Error>(m, "CoinvestError");

  py::class_<ServiceParams>(m, "ServiceParams")
      .def(py::init<>())
      .def_readwrite("value_of_time", &ServiceParams::value_of_time)
      .def_readwrite("rail_fare_per_km", &ServiceParams::rail_fare_per_km)
      .def_readwrite("alt_fare_per_km", &ServiceParams::alt_fare_per_km)
      .def_readwrite("rail_speed_kmh", &ServiceParams::rail_speed_kmh)
      .def_readwrite("alt_speed_kmh", &ServiceParams::alt_speed_kmh)
      .def_readwrite("rail_emission_per_km", &ServiceParams::rail_emission_per_km)
      .def_readwrite("alt_emission_per_km", &ServiceParams::alt_emission_per_km)
      .def_readwrite("capacity_per_frequency", &ServiceParams::capacity_per_frequency)
      .def_readwrite("build_cost_per_km", &ServiceParams::build_cost_per_km)
      .def_readwrite("frequency_cost_per_km", &ServiceParams::frequency_cost_per_km)
      .def_readwrite("max_frequency", &ServiceParams::max_frequency);

  py::class_<Weights>(m, "Weights")
      .def(py::init<>())
      .def_readwrite("emission", &Weights::emission)
      .def_readwrite("travel_cost", &Weights::travel_cost)
      .def_readwrite("profit", &Weights::profit);

  py::class_<MobilityGraph>(m, "MobilityGraph")
      .def_property_readonly("num_alt_nodes", &MobilityGraph::num_alt_nodes)
      .def_property_readonly("num_rail_nodes", &MobilityGraph::num_rail_nodes)
      .def_property_readonly("num_rail_edges", &MobilityGraph::num_rail_edges)
      .def_property_readonly("num_alt_edges",
                             [](const MobilityGraph& g) {
                               return static_cast<int>(g.alt_edge_indices().size());
                             })
      .def_property_readonly("num_transfer_edges",
                             [](const MobilityGraph& g) {
                               return static_cast<int>(g.transfer_edge_indices().size());
                             })
      .def("node_region", [](const MobilityGraph& g, int id) { return g.node(id).region; })
      .def("all_rail_edge_ids", &MobilityGraph::all_rail_edge_ids)
      .def("authority_rail_edges", &MobilityGraph::authority_rail_edges, py::arg("region"));

  py::class_<NetworkState>(m, "NetworkState")
      .def_static("initial", &NetworkState::initial)
      .def_property_readonly("year", &NetworkState::year)
      .def("connected", &NetworkState::connected)
      .def("frequency", &NetworkState::frequency);

  py::class_<DesignAction>(m, "DesignAction")
      .def(py::init(&action_from_dicts), py::arg("builds") = std::vector<int>{},
           py::arg("upgrades") = std::map<int, int>{})
      .def_property_readonly("builds",
                             [](const DesignAction& a) {
                               std::vector<int> out;
                               for (const auto& [id, b] : a.builds) {
                                 if (b) out.push_back(id);
                               }
                               return out;
                             })
      .def_property_readonly("upgrades",
                             [](const DesignAction& a) {
                               std::map<int, int> out;
                               for (const auto& [id, u] : a.upgrades) {
                                 if (u != 0) out[id] = u;
                               }
                               return out;
                             });

  m.def("build_sioux_falls", []() { return build_sioux_falls(); });
  m.def("parse_network_file",
        [](const std::string& path) { return parse_network_file(path); });
  m.def("network_to_string", &network_to_string);
  m.def("validate_graph", &validate_graph);
  m.def("apply_action",
        [](const MobilityGraph& g, const NetworkState& st, const DesignAction& a) {
          return apply_action(g, st, a);
        });

  py::enum_<TripType>(m, "TripType")
      .value("intra1", TripType::kIntra1)
      .value("intra2", TripType::kIntra2)
      .value("inter1", TripType::kInter1)
      .value("inter2", TripType::kInter2);
  m.def("classify", &classify);
  m.def(
      "generate_demand",
      [](const MobilityGraph& g, int lower, int upper, std::uint64_t seed, double growth) {
        DemandBounds bounds;
        for (auto& b : bounds.by_type) b = {lower, upper};
        return generate(g, bounds, seed, growth);
      },
      py::arg("graph"), py::arg("lower") = 20, py::arg("upper") = 200, py::arg("seed") = 0,
      py::arg("growth") = 0.015);
  py::class_<TravelRequest>(m, "TravelRequest")
      .def_readonly("origin", &TravelRequest::origin)
      .def_readonly("destination", &TravelRequest::destination)
      .def_readonly("trips", &TravelRequest::trips)
      .def_readonly("trip_type", &TravelRequest::trip_type);
  py::class_<DemandModel>(m, "DemandModel")
      .def_property_readonly("size",
                             [](const DemandModel& d) { return d.requests.size(); })
      .def_readonly("requests", &DemandModel::requests);
  m.def("demand_at_year", &demand_at_year);

  m.def("logit_split", &logit_split, py::arg("u_rail"), py::arg("u_alt"), py::arg("mu"));

  m.def(
      "lemma1_feasible",
      [](std::pair<double, double> no_mech, std::pair<double, double> stage1, double pool) {
        return lemma1_feasible(triple_of(no_mech, stage1, pool));
      },
      py::arg("no_mech"), py::arg("stage1"), py::arg("pool"));
  m.def(
      "nbs_allocate",
      [](std::pair<double, double> no_mech, std::pair<double, double> stage1, double pool) {
        const Allocation a = nbs_allocate(triple_of(no_mech, stage1, pool));
        return py::make_tuple(py::make_tuple(a.shares[0], a.shares[1]),
                              py::make_tuple(a.payoffs[0], a.payoffs[1]));
      },
      py::arg("no_mech"), py::arg("stage1"), py::arg("pool"),
      "Returns ((q1, q2), (v1, v2)); raises CoinvestError when Lemma 1 fails.");
  m.def("feasible_agreement",
        [](std::pair<double, double> coop, std::pair<double, double> ne) {
          return feasible_agreement({coop.first, coop.second}, {ne.first, ne.second});
        });

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("name", &ScenarioConfig::name)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("horizon", &ScenarioConfig::horizon)
      .def_readwrite("jobs", &ScenarioConfig::jobs)
      .def_readwrite("network_file", &ScenarioConfig::network_file)
      .def_readwrite("mu", &ScenarioConfig::mu)
      .def_readwrite("weights", &ScenarioConfig::weights)
      .def_readwrite("growth_rate", &ScenarioConfig::growth_rate)
      .def_readwrite("sweep_grid", &ScenarioConfig::sweep_grid)
      .def_readwrite("betas_by_year", &ScenarioConfig::betas_by_year)
      .def_readwrite("budgets_by_year", &ScenarioConfig::budgets_by_year)
      .def_readwrite("budget_ratio", &ScenarioConfig::budget_ratio)
      .def_readwrite("demand_ratio", &ScenarioConfig::demand_ratio)
      .def_readwrite("solver_restarts", &ScenarioConfig::solver_restarts);
  m.def("parse_scenario_config_file", &parse_scenario_config_file);

  py::class_<YearOutcome>(m, "YearOutcome")
      .def_readonly("year", &YearOutcome::year)
      .def_readonly("betas", &YearOutcome::betas)
      .def_readonly("payoff_base", &YearOutcome::payoff_base)
      .def_readonly("payoff_stage1", &YearOutcome::payoff_stage1)
      .def_readonly("pool", &YearOutcome::pool)
      .def_readonly("shares", &YearOutcome::shares)
      .def_readonly("payoffs", &YearOutcome::payoffs)
      .def_readonly("accepted", &YearOutcome::accepted)
      .def_readonly("converged", &YearOutcome::converged);
  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("scenario", &RunRecord::scenario)
      .def_readonly("seed", &RunRecord::seed)
      .def_readonly("years", &RunRecord::years)
      .def_readonly("years_cooperated", &RunRecord::years_cooperated)
      .def_readonly("delta_f_co", &RunRecord::delta_f_co)
      .def_readonly("cir", &RunRecord::cir)
      .def_property_readonly("roc",
                             [](const RunRecord& r) -> py::object {
                               if (r.roc.has_value()) return py::float_(*r.roc);
                               return py::none();
                             })
      .def_readonly("delta_emissions", &RunRecord::delta_emissions)
      .def_readonly("delta_travel_cost", &RunRecord::delta_travel_cost)
      .def_readonly("delta_profit", &RunRecord::delta_profit);

  m.def("run_scenario", &run_scenario, py::call_guard<py::gil_scoped_release>());
  m.def("sweep_scenario", &sweep_scenario, py::call_guard<py::gil_scoped_release>());
  m.def("results_csv", &results_csv, py::arg("records"), py::arg("horizon"));

  m.def("ue_check", []() {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& inst : bundled_ue_instances()) {
      const UEResult r = solve_ue(inst.graph, inst.state, inst.demand, inst.params);
      out.emplace_back(inst.name, r.gap);
    }
    return out;
  });

  m.attr("__version__") = "0.1.0";
}
