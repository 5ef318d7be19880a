"""Two-region rail network design game solver.

Thin Python layer over the C++ core: network model, demand, assignment,
per-region design optimization, two-stage game, Nash-bargaining payoff
sharing and scenario sweeps.
"""

from ._core import (  # noqa: F401
    CoinvestError,
    DesignAction,
    DemandModel,
    MobilityGraph,
    NetworkState,
    RunRecord,
    ScenarioConfig,
    ServiceParams,
    TravelRequest,
    TripType,
    Weights,
    YearOutcome,
    apply_action,
    build_sioux_falls,
    classify,
    demand_at_year,
    feasible_agreement,
    generate_demand,
    lemma1_feasible,
    logit_split,
    nbs_allocate,
    network_to_string,
    parse_network_file,
    parse_scenario_config_file,
    results_csv,
    run_scenario,
    sweep_scenario,
    ue_check,
    validate_graph,
)

__version__ = "0.1.0"
