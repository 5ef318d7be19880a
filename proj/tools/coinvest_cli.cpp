#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "coinvest/network_io.hpp"
#include "coinvest/report.hpp"
#include "coinvest/scenario.hpp"
#include "coinvest/ue_oracle.hpp"

namespace fs = std::filesystem;
using namespace coinvest;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir = "out";
  bool emit_svg = false;
  std::int64_t seed = -1;
  int jobs = -1;
  double mu = -1.0;
  std::vector<double> weights;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "scenario config file");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_flag("--svg", flags.emit_svg, "also write a (CIR, payoff gain) scatter");
  cmd->add_option("--seed", flags.seed, "override the config seed");
  cmd->add_option("--jobs", flags.jobs, "worker threads (0 = all cores)");
  cmd->add_option("--mu", flags.mu, "override the logit scale");
  cmd->add_option("--weights", flags.weights, "override objective weights w0,w1,w2")
      ->delimiter(',')
      ->expected(3);
}

ScenarioConfig load_config(const CommonFlags& flags) {
  ScenarioConfig cfg =
      flags.config_path.empty() ? ScenarioConfig{} : parse_scenario_config_file(flags.config_path);
  if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.jobs >= 0) cfg.jobs = flags.jobs;
  if (flags.mu > 0) cfg.mu = flags.mu;
  if (flags.weights.size() == 3) {
    cfg.weights.emission = flags.weights[0];
    cfg.weights.travel_cost = flags.weights[1];
    cfg.weights.profit = flags.weights[2];
  }
  cfg.validate();
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kConfigError, "cannot write " + path.string());
  out << content;
}

void print_sweep_summary(const std::vector<RunRecord>& records) {
  const RunRecord* best_gain = nullptr;
  const RunRecord* best_roc = nullptr;
  int accepted_points = 0;
  for (const auto& r : records) {
    bool any_accepted = false;
    for (const auto& y : r.years) any_accepted = any_accepted || y.accepted;
    if (!any_accepted) continue;
    ++accepted_points;
    if (best_gain == nullptr || r.delta_f_co > best_gain->delta_f_co) best_gain = &r;
    if (r.roc.has_value() && (best_roc == nullptr || *r.roc > *best_roc->roc)) best_roc = &r;
  }
  std::cout << records.size() << " scenario points, " << accepted_points
            << " with an accepted year\n";
  if (best_gain != nullptr) {
    std::cout << "highest-return point:      " << best_gain->scenario << "  dF_co="
              << best_gain->delta_f_co << " CHF/day, CIR=" << best_gain->cir << '\n';
  }
  if (best_roc != nullptr) {
    std::cout << "most investment-efficient: " << best_roc->scenario << "  ROC=" << *best_roc->roc
              << ", CIR=" << best_roc->cir << '\n';
  }
}

int cmd_validate(const std::string& path) {
  MobilityGraph graph = parse_network_file(path);
  const auto violations = validate_graph(graph);
  if (violations.empty()) {
    std::cout << "OK: " << graph.num_alt_nodes() << " nodes, "
              << graph.alt_edge_indices().size() << " alt edges, " << graph.num_rail_edges()
              << " rail candidates\n";
    return 0;
  }
  for (const auto& v : violations) std::cout << "violation: " << v << '\n';
  return 1;
}

int cmd_run(const CommonFlags& flags) {
  const ScenarioConfig cfg = load_config(flags);
  const RunRecord record = run_scenario(cfg);
  const std::vector<RunRecord> records{record};
  write_file(fs::path(flags.out_dir) / "results.csv", results_csv(records, cfg.horizon));
  write_file(fs::path(flags.out_dir) / "schedule.csv", schedule_csv(records));
  if (flags.emit_svg) {
    write_file(fs::path(flags.out_dir) / "summary.svg", summary_svg(records));
  }
  std::cout << record.scenario << ": dF_co=" << record.delta_f_co << " CHF/day, CIR="
            << record.cir;
  if (record.roc.has_value()) std::cout << ", ROC=" << *record.roc;
  std::cout << '\n';
  return 0;
}

int cmd_sweep(const CommonFlags& flags) {
  const ScenarioConfig cfg = load_config(flags);
  const auto records = sweep_scenario(cfg);
  write_file(fs::path(flags.out_dir) / "results.csv", results_csv(records, cfg.horizon));
  write_file(fs::path(flags.out_dir) / "schedule.csv", schedule_csv(records));
  if (flags.emit_svg) {
    write_file(fs::path(flags.out_dir) / "summary.svg", summary_svg(records));
  }
  print_sweep_summary(records);
  return 0;
}

int cmd_hetero(const CommonFlags& flags) {
  const ScenarioConfig cfg = load_config(flags);
  const auto rows = heterogeneous_suite(cfg);
  write_file(fs::path(flags.out_dir) / "hetero.csv", hetero_csv(rows));
  std::vector<RunRecord> all;
  for (const auto& row : rows) {
    all.insert(all.end(), row.records.begin(), row.records.end());
  }
  write_file(fs::path(flags.out_dir) / "hetero_results.csv", results_csv(all, cfg.horizon));
  for (const auto& row : rows) {
    std::cout << row.name << ": ROC median " << row.roc.median << " (min " << row.roc.min
              << ", max " << row.roc.max << ", " << row.roc.points << " points)\n";
  }
  return 0;
}

int cmd_nbs(const std::vector<double>& no_mech, const std::vector<double>& stage1, double pool) {
  PayoffTriple triple;
  triple.no_mech = {no_mech[0], no_mech[1]};
  triple.stage1 = {stage1[0], stage1[1]};
  triple.pool = pool;
  if (!lemma1_feasible(triple)) {
    std::cout << "no agreement (Lemma 1 violated)\n";
    return 0;
  }
  const Allocation a = nbs_allocate(triple);
  std::cout << "q = (" << a.shares[0] << ", " << a.shares[1] << ")\n";
  std::cout << "v = (" << a.payoffs[0] << ", " << a.payoffs[1] << ")\n";
  return 0;
}

int cmd_ue_check() {
  bool all_ok = true;
  for (const auto& inst : bundled_ue_instances()) {
    const UEResult result = solve_ue(inst.graph, inst.state, inst.demand, inst.params);
    const bool ok = result.gap < 1e-3;
    all_ok = all_ok && ok;
    std::cout << inst.name << ": gap=" << result.gap << " iterations=" << result.iterations
              << (ok ? "  ok" : "  FAIL") << '\n';
  }
  return all_ok ? 0 : 1;
}

int cmd_export_sioux(const std::string& out_path) {
  const std::string text = network_to_string(build_sioux_falls());
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-region rail network design game: equilibrium, co-investment and "
               "payoff-sharing solver"};
  app.require_subcommand(1);

  std::string network_path;
  auto* validate = app.add_subcommand("validate", "check a network file against all invariants");
  validate->add_option("network", network_path, "network file")->required();

  CommonFlags run_flags, sweep_flags, hetero_flags;
  auto* run = app.add_subcommand("run", "run the config's beta schedule once");
  add_common(run, run_flags);
  auto* sweep = app.add_subcommand("sweep", "run the full beta grid sweep");
  add_common(sweep, sweep_flags);
  auto* hetero = app.add_subcommand("hetero", "run the six heterogeneous-region scenarios");
  add_common(hetero, hetero_flags);

  std::vector<double> nbs_no_mech, nbs_stage1;
  double nbs_pool = 0.0;
  auto* nbs = app.add_subcommand("nbs", "Nash-bargaining split of a payoff triple");
  nbs->add_option("--no-mech", nbs_no_mech, "baseline payoffs F^t_1,F^t_2")
      ->delimiter(',')
      ->expected(2)
      ->required();
  nbs->add_option("--stage1", nbs_stage1, "stage-1 payoffs F^1t_1,F^1t_2")
      ->delimiter(',')
      ->expected(2)
      ->required();
  nbs->add_option("--pool", nbs_pool, "co-investment surplus F^2t")->required();

  auto* ue = app.add_subcommand("ue-check", "solve the bundled user-equilibrium instances");
  (void)ue;

  std::string export_path;
  auto* exp = app.add_subcommand("export-sioux-falls", "write the bundled Sioux Falls network");
  exp->add_option("--out", export_path, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
    if (validate->parsed()) return cmd_validate(network_path);
    if (run->parsed()) return cmd_run(run_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags);
    if (hetero->parsed()) return cmd_hetero(hetero_flags);
    if (nbs->parsed()) return cmd_nbs(nbs_no_mech, nbs_stage1, nbs_pool);
    if (ue->parsed()) return cmd_ue_check();
    if (exp->parsed()) return cmd_export_sioux(export_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return (e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kConfigError) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
