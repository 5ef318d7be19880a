#include "coinvest/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "coinvest/metrics.hpp"
#include "coinvest/network_io.hpp"

namespace coinvest {

std::array<double, 2> ScenarioConfig::budgets_at(int year) const {
  if (!budgets_by_year.empty()) {
    const int idx = std::min<int>(year - 1, static_cast<int>(budgets_by_year.size()) - 1);
    return budgets_by_year[std::max(idx, 0)];
  }
  return {1e5, 1e5};
}

std::array<double, 2> ScenarioConfig::betas_at(int year) const {
  if (!betas_by_year.empty()) {
    const int idx = std::min<int>(year - 1, static_cast<int>(betas_by_year.size()) - 1);
    return betas_by_year[std::max(idx, 0)];
  }
  return {0.0, 0.0};
}

void ScenarioConfig::validate() const {
  if (horizon < 1) throw Error(ErrorCode::kConfigError, "horizon must be >= 1");
  if (!(mu > 0)) throw Error(ErrorCode::kConfigError, "logit.mu must be positive");
  if (!(weights.emission > 0 && weights.travel_cost > 0 && weights.profit > 0)) {
    throw Error(ErrorCode::kConfigError, "weights must be strictly positive");
  }
  for (int t = 1; t <= horizon; ++t) {
    const auto b = budgets_at(t);
    if (b[0] < 0 || b[1] < 0) throw Error(ErrorCode::kConfigError, "budgets must be >= 0");
    const auto beta = betas_at(t);
    for (double v : beta) {
      if (v < 0 || v > 1) throw Error(ErrorCode::kConfigError, "betas must lie in [0,1]");
    }
  }
  for (double v : sweep_grid) {
    if (v < 0 || v > 1) throw Error(ErrorCode::kConfigError, "sweep grid must lie in [0,1]");
  }
  if (!(budget_ratio[0] > 0 && budget_ratio[1] > 0 && demand_ratio[0] > 0 && demand_ratio[1] > 0)) {
    throw Error(ErrorCode::kConfigError, "heterogeneity ratios must be positive");
  }
  if (growth_rate < 0) throw Error(ErrorCode::kConfigError, "demand.growth must be >= 0");
}

namespace {

std::vector<std::string> tokens_of(const std::string& value) {
  std::string v = value;
  for (char& c : v) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(v);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfigError,
                "line " + std::to_string(line_no) + ": not a number: " + s);
  }
}

std::array<double, 2> to_pair(const std::vector<std::string>& toks, int line_no) {
  if (toks.size() == 1) {
    const double v = to_double(toks[0], line_no);
    return {v, v};
  }
  if (toks.size() == 2) {
    return {to_double(toks[0], line_no), to_double(toks[1], line_no)};
  }
  throw Error(ErrorCode::kConfigError,
              "line " + std::to_string(line_no) + ": expected one or two values");
}

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int line_no = 0;
  std::vector<std::pair<int, std::array<double, 2>>> beta_years, budget_years;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::string rest = line;
      rest.erase(0, rest.find_first_not_of(" \t\r\n"));
      if (rest.empty()) continue;
      throw Error(ErrorCode::kConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    const auto toks = tokens_of(value);
    auto one = [&]() -> double {
      if (toks.size() != 1) {
        throw Error(ErrorCode::kConfigError, "line " + std::to_string(line_no) + ": expected one value");
      }
      return to_double(toks[0], line_no);
    };
    auto text = [&]() -> std::string { return toks.empty() ? "" : toks[0]; };

    if (key == "name") {
      cfg.name = text();
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(one());
    } else if (key == "horizon") {
      cfg.horizon = static_cast<int>(one());
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(one());
    } else if (key == "network.file") {
      cfg.network_file = text();
    } else if (key == "demand.file") {
      cfg.demand_file = text();
    } else if (key == "demand.growth") {
      cfg.growth_rate = one();
    } else if (key == "demand.lower") {
      const int v = static_cast<int>(one());
      for (auto& b : cfg.bounds.by_type) b.first = v;
    } else if (key == "demand.upper") {
      const int v = static_cast<int>(one());
      for (auto& b : cfg.bounds.by_type) b.second = v;
    } else if (key == "logit.mu") {
      cfg.mu = one();
    } else if (key == "weights.w0") {
      cfg.weights.emission = one();
    } else if (key == "weights.w1") {
      cfg.weights.travel_cost = one();
    } else if (key == "weights.w2") {
      cfg.weights.profit = one();
    } else if (key == "budget.b1") {
      if (cfg.budgets_by_year.empty()) cfg.budgets_by_year.push_back({1e5, 1e5});
      for (auto& b : cfg.budgets_by_year) b[0] = one();
    } else if (key == "budget.b2") {
      if (cfg.budgets_by_year.empty()) cfg.budgets_by_year.push_back({1e5, 1e5});
      for (auto& b : cfg.budgets_by_year) b[1] = one();
    } else if (key.rfind("budget.y", 0) == 0) {
      const int year = std::atoi(key.c_str() + 8);
      if (year < 1) throw Error(ErrorCode::kConfigError, "line " + std::to_string(line_no) + ": bad year in " + key);
      budget_years.push_back({year, to_pair(toks, line_no)});
    } else if (key.rfind("beta.y", 0) == 0) {
      const int year = std::atoi(key.c_str() + 6);
      if (year < 1) throw Error(ErrorCode::kConfigError, "line " + std::to_string(line_no) + ": bad year in " + key);
      beta_years.push_back({year, to_pair(toks, line_no)});
    } else if (key == "sweep.grid") {
      cfg.sweep_grid.clear();
      for (const auto& t : toks) cfg.sweep_grid.push_back(to_double(t, line_no));
    } else if (key == "hetero.budget_ratio") {
      cfg.budget_ratio = to_pair(toks, line_no);
    } else if (key == "hetero.demand_ratio") {
      cfg.demand_ratio = to_pair(toks, line_no);
    } else if (key == "service.vot") {
      cfg.params.value_of_time = one();
    } else if (key == "service.rail_fare") {
      cfg.params.rail_fare_per_km = one();
    } else if (key == "service.alt_fare") {
      cfg.params.alt_fare_per_km = one();
    } else if (key == "service.rail_speed") {
      cfg.params.rail_speed_kmh = one();
    } else if (key == "service.alt_speed") {
      cfg.params.alt_speed_kmh = one();
    } else if (key == "service.rail_emission") {
      cfg.params.rail_emission_per_km = one();
    } else if (key == "service.alt_emission") {
      cfg.params.alt_emission_per_km = one();
    } else if (key == "service.kappa") {
      cfg.params.capacity_per_frequency = static_cast<std::int64_t>(one());
    } else if (key == "service.base_cost") {
      cfg.params.build_cost_per_km = one();
    } else if (key == "service.freq_cost") {
      cfg.params.frequency_cost_per_km = one();
    } else if (key == "service.s_max") {
      cfg.params.max_frequency = static_cast<int>(one());
    } else if (key == "service.bpr_coeff") {
      cfg.params.bpr_coefficient = one();
    } else if (key == "service.bpr_exp") {
      cfg.params.bpr_exponent = one();
    } else if (key == "solver.restarts") {
      cfg.solver_restarts = static_cast<int>(one());
    } else if (key == "solver.exact_threshold") {
      cfg.solver_exact_threshold = static_cast<int>(one());
    } else if (key == "solver.frequency_cap") {
      cfg.solver_frequency_cap = static_cast<int>(one());
    } else if (key == "solver.max_rounds") {
      cfg.solver_max_rounds = static_cast<int>(one());
    } else {
      throw Error(ErrorCode::kConfigError,
                  "line " + std::to_string(line_no) + ": unknown key " + key);
    }
  }
  auto fill_years = [&](std::vector<std::array<double, 2>>& target,
                        const std::vector<std::pair<int, std::array<double, 2>>>& overrides,
                        std::array<double, 2> fill) {
    int max_year = cfg.horizon;
    for (const auto& [y, v] : overrides) max_year = std::max(max_year, y);
    if (target.empty() && overrides.empty()) return;
    std::array<double, 2> base = target.empty() ? fill : target.front();
    target.assign(max_year, base);
    for (const auto& [y, v] : overrides) target[y - 1] = v;
  };
  fill_years(cfg.budgets_by_year, budget_years, {1e5, 1e5});
  fill_years(cfg.betas_by_year, beta_years, {0.0, 0.0});
  cfg.validate();
  return cfg;
}

ScenarioConfig parse_scenario_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config file " + path);
  ScenarioConfig cfg = parse_scenario_config(in);
  // Relative data paths resolve against the config file's directory.
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) {
      p = (base / p).string();
    }
  };
  resolve(cfg.network_file);
  resolve(cfg.demand_file);
  return cfg;
}

namespace {

std::uint64_t year_seed(std::uint64_t base, int year) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(year + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const int workers = std::min(jobs, n);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_beta(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

struct ScenarioEngine::Impl {
  ScenarioConfig config;
  MobilityGraph graph;
  DemandModel model;
  RouteSet routes;
  std::vector<std::vector<TravelRequest>> demand_by_year;  // index year-1

  struct BaselineYear {
    NetworkState state_after;
    std::array<double, 2> payoffs{};
    bool converged = true;
  };
  std::vector<BaselineYear> baseline;

  explicit Impl(const ScenarioConfig& cfg) : config(cfg) {
    config.validate();
    graph = config.network_file.empty() ? build_sioux_falls(config.params)
                                        : parse_network_file(config.network_file, config.params);
    const auto violations = validate_graph(graph);
    if (!violations.empty()) {
      throw Error(ErrorCode::kConfigError, "network invalid: " + violations.front());
    }
    if (config.demand_file.empty()) {
      model = generate(graph, config.bounds, config.seed, config.growth_rate);
    } else {
      model = load_demand_csv_file(config.demand_file, graph, config.growth_rate);
    }
    if (config.demand_ratio[0] != config.demand_ratio[1]) {
      model = scale_intra_demand(model, config.demand_ratio[0], config.demand_ratio[1]);
    }
    routes = preselect_all(graph, model.requests);
    demand_by_year.resize(config.horizon);
    for (int t = 1; t <= config.horizon; ++t) {
      demand_by_year[t - 1] = demand_at_year(model, t);
    }
    compute_baseline();
  }

  SolverOptions solver_options(int year) const {
    SolverOptions o;
    o.exact_edge_threshold = config.solver_exact_threshold;
    o.exact_frequency_cap = config.solver_frequency_cap;
    o.restarts = config.solver_restarts;
    o.max_rounds = config.solver_max_rounds;
    o.seed = year_seed(config.seed, year);
    return o;
  }

  std::array<double, 2> yearly_budgets(int year) const {
    auto b = config.budgets_at(year);
    // Heterogeneous splits keep each year's total constant.
    if (config.budget_ratio[0] != config.budget_ratio[1]) {
      const double total = b[0] + b[1];
      const double share = config.budget_ratio[0] / (config.budget_ratio[0] + config.budget_ratio[1]);
      b = {total * share, total * (1.0 - share)};
    }
    return b;
  }

  void compute_baseline() {
    baseline.clear();
    NetworkState state = NetworkState::initial(graph);
    for (int t = 1; t <= config.horizon; ++t) {
      GameYear gy(graph, config.params, config.weights, config.mu, routes, demand_by_year[t - 1],
                  solver_options(t));
      const auto s1 = gy.stage1_equilibrium(state, yearly_budgets(t), {0.0, 0.0});
      BaselineYear by;
      by.state_after = s1.state_after;
      by.payoffs = s1.payoffs;
      by.converged = s1.converged;
      baseline.push_back(by);
      state = s1.state_after;
    }
  }

  YearOutcome game_year(int year, const NetworkState& before,
                        const std::array<double, 2>& betas) {
    const auto budgets = yearly_budgets(year);
    GameYear gy(graph, config.params, config.weights, config.mu, routes, demand_by_year[year - 1],
                solver_options(year));
    const auto s1 = gy.stage1_equilibrium(before, budgets, betas);
    const auto s2 = gy.stage2_coinvest(before, s1, budgets, betas);

    YearOutcome out;
    out.year = year;
    out.betas = betas;
    out.budgets = budgets;
    out.payoff_base = baseline[year - 1].payoffs;
    out.payoff_stage1 = s1.payoffs;
    out.pool = s2.surplus;
    out.converged = s1.converged;
    out.baseline_converged = baseline[year - 1].converged;
    out.stage1_actions = s1.actions;

    PayoffTriple triple;
    triple.no_mech = out.payoff_base;
    triple.stage1 = out.payoff_stage1;
    triple.pool = out.pool;
    if (lemma1_feasible(triple)) {
      const Allocation alloc = nbs_allocate(triple);
      if (alloc.payoffs[0] > triple.no_mech[0] && alloc.payoffs[1] > triple.no_mech[1]) {
        out.accepted = true;
        out.shares = alloc.shares;
        out.payoffs = alloc.payoffs;
      }
    }
    if (out.accepted) {
      out.stage2_action = s2.joint_action;
      out.state_after = s2.state_after;
    } else {
      // Negotiations fail: stage-2 builds are not implemented and each
      // authority realizes its stage-1 payoff.
      out.shares = {0.0, 0.0};
      out.payoffs = out.payoff_stage1;
      out.stage2_action = DesignAction{};
      out.state_after = s1.state_after;
    }
    return out;
  }

  RunRecord assemble(const std::string& name, const std::vector<YearOutcome>& years) {
    RunRecord rec;
    rec.scenario = name;
    rec.seed = config.seed;
    rec.mu = config.mu;
    rec.weights = config.weights;
    rec.years = years;
    rec.final_state = years.back().state_after;

    std::vector<YearLedger> ledgers;
    for (const auto& y : years) {
      if (y.betas[0] * y.budgets[0] + y.betas[1] * y.budgets[1] > 0) ++rec.years_cooperated;
      YearLedger l;
      l.budgets = y.budgets;
      l.betas = y.betas;
      l.payoff_base = y.payoff_base;
      l.payoff_stage1 = y.payoff_stage1;
      l.pool = y.pool;
      ledgers.push_back(l);
    }
    const CirRoc cr = roc_cir(ledgers);
    rec.cir = cr.cir;
    rec.roc = cr.roc;
    rec.delta_f_co = cr.delta_f_co;

    // Final-year steady-state deltas against the baseline network.
    const auto& demand_T = demand_by_year[config.horizon - 1];
    const FlowField mech =
        assign_flows(graph, rec.final_state, demand_T, routes, config.params, config.mu);
    const FlowField base = assign_flows(graph, baseline.back().state_after, demand_T, routes,
                                        config.params, config.mu);
    rec.delta_emissions = emissions(mech, graph, config.params, 0) -
                          emissions(base, graph, config.params, 0);
    rec.delta_travel_cost = travel_cost(mech, graph, config.params, 0) -
                            travel_cost(base, graph, config.params, 0);
    DesignAction mech_final = combine(years.back().stage1_actions[0],
                                      years.back().stage1_actions[1]);
    mech_final = combine(mech_final, years.back().stage2_action);
    rec.delta_profit = fare_revenue(mech, graph, config.params, 0) -
                       construction_cost(mech_final, graph, config.params, 0) -
                       fare_revenue(base, graph, config.params, 0);
    // Baseline final-year construction is the baseline stage-1 actions'
    // cost; recover it from the state difference instead of storing actions.
    const NetworkState& last_base = baseline.back().state_after;
    const NetworkState prior_base = config.horizon >= 2
                                        ? baseline[config.horizon - 2].state_after
                                        : NetworkState::initial(graph);
    double base_build = 0.0;
    for (int slot = 0; slot < graph.num_rail_edges(); ++slot) {
      const Edge& e = graph.edges()[graph.rail_edge_indices()[slot]];
      if (last_base.x()[slot] && !prior_base.x()[slot]) {
        base_build += config.params.build_cost_per_km * e.label.length_km;
      }
      base_build += config.params.frequency_cost_per_km * e.label.length_km *
                    (last_base.s()[slot] - prior_base.s()[slot]);
    }
    rec.delta_profit += base_build;
    return rec;
  }

  RunRecord run_point(const std::vector<std::array<double, 2>>& betas) {
    NetworkState state = NetworkState::initial(graph);
    std::vector<YearOutcome> years;
    std::string name = config.name + "/beta";
    for (int t = 1; t <= config.horizon; ++t) {
      const auto b = t - 1 < static_cast<int>(betas.size()) ? betas[t - 1]
                                                            : std::array<double, 2>{0.0, 0.0};
      YearOutcome y = game_year(t, state, b);
      state = y.state_after;
      years.push_back(std::move(y));
      name += (t == 1 ? "=" : "-") + format_beta(b[0]);
      if (b[0] != b[1]) name += "/" + format_beta(b[1]);
    }
    return assemble(name, years);
  }
};

ScenarioEngine::ScenarioEngine(const ScenarioConfig& config)
    : impl_(std::make_unique<Impl>(config)) {}
ScenarioEngine::~ScenarioEngine() = default;

const MobilityGraph& ScenarioEngine::graph() const { return impl_->graph; }
const DemandModel& ScenarioEngine::demand_model() const { return impl_->model; }
const ScenarioConfig& ScenarioEngine::config() const { return impl_->config; }

RunRecord ScenarioEngine::run(const std::vector<std::array<double, 2>>& betas_by_year) {
  return impl_->run_point(betas_by_year);
}

std::vector<RunRecord> ScenarioEngine::sweep(const std::vector<double>& grid, int jobs) {
  if (grid.empty()) throw Error(ErrorCode::kConfigError, "empty sweep grid");
  const int G = static_cast<int>(grid.size());
  const int T = impl_->config.horizon;
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = 1;

  struct Branch {
    NetworkState state;
    YearOutcome outcome;
  };
  // Level t holds G^t branches; branch i extends branch i/G with grid[i%G].
  std::vector<Branch> previous;
  std::vector<std::vector<YearOutcome>> outcomes_by_level(T);
  std::vector<Branch> current;
  long long width = 1;
  for (int t = 1; t <= T; ++t) {
    width *= G;
    current.assign(static_cast<std::size_t>(width), {});
    parallel_for(static_cast<int>(width), jobs, [&](int i) {
      const NetworkState& before =
          t == 1 ? NetworkState::initial(impl_->graph) : previous[i / G].state;
      const double beta = grid[i % G];
      YearOutcome y = impl_->game_year(t, before, {beta, beta});
      current[i].state = y.state_after;
      current[i].outcome = std::move(y);
    });
    outcomes_by_level[t - 1].resize(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      outcomes_by_level[t - 1][i] = current[i].outcome;
    }
    previous = std::move(current);
    current.clear();
  }

  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(width));
  for (long long leaf = 0; leaf < width; ++leaf) {
    std::vector<YearOutcome> years(T);
    long long idx = leaf;
    std::vector<long long> chain(T);
    for (int t = T; t >= 1; --t) {
      chain[t - 1] = idx;
      idx /= G;
    }
    std::string name = impl_->config.name + "/beta";
    for (int t = 1; t <= T; ++t) {
      years[t - 1] = outcomes_by_level[t - 1][chain[t - 1]];
      name += (t == 1 ? "=" : "-") + format_beta(grid[chain[t - 1] % G]);
    }
    records.push_back(impl_->assemble(name, years));
  }
  return records;
}

RunRecord run_scenario(const ScenarioConfig& config) {
  ScenarioEngine engine(config);
  std::vector<std::array<double, 2>> betas;
  for (int t = 1; t <= config.horizon; ++t) betas.push_back(config.betas_at(t));
  return engine.run(betas);
}

std::vector<RunRecord> sweep_scenario(const ScenarioConfig& config) {
  ScenarioEngine engine(config);
  return engine.sweep(config.sweep_grid, config.jobs);
}

RocStats roc_stats(const std::vector<RunRecord>& records) {
  std::vector<double> values;
  for (const auto& r : records) {
    if (r.roc.has_value()) values.push_back(*r.roc);
  }
  RocStats stats;
  stats.points = static_cast<int>(values.size());
  if (values.empty()) return stats;
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * (static_cast<double>(values.size()) - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  stats.min = values.front();
  stats.q1 = quantile(0.25);
  stats.median = quantile(0.5);
  stats.q3 = quantile(0.75);
  stats.max = values.back();
  return stats;
}

std::vector<HeteroRow> heterogeneous_suite(const ScenarioConfig& base) {
  struct RowSpec {
    const char* name;
    std::array<double, 2> budget;
    std::array<double, 2> demand;
  };
  // Scenario grid: budget ratio B1:B2 and intra-demand ratio R1:R2.
  static const RowSpec kRows[] = {
      {"Homogeneous", {1, 1}, {1, 1}},
      {"Higher fund, Equal pop", {3, 2}, {1, 1}},
      {"Equal fund, Less pop", {1, 1}, {2, 3}},
      {"Higher fund, Higher pop", {3, 2}, {3, 2}},
      {"Equal fund, Higher pop", {1, 1}, {3, 2}},
      {"High fund, Less pop", {3, 2}, {2, 3}},
  };
  std::vector<HeteroRow> rows;
  for (const auto& spec : kRows) {
    ScenarioConfig cfg = base;
    cfg.name = spec.name;
    cfg.budget_ratio = spec.budget;
    cfg.demand_ratio = spec.demand;
    HeteroRow row;
    row.name = spec.name;
    row.budget_ratio = spec.budget;
    row.demand_ratio = spec.demand;
    row.records = sweep_scenario(cfg);
    row.roc = roc_stats(row.records);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace coinvest
