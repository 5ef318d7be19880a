#include "coinvest/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace coinvest {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string results_csv(const std::vector<RunRecord>& records, int horizon) {
  std::ostringstream out;
  out << "scenario,seed,mu,w0,w1,w2";
  for (int t = 1; t <= horizon; ++t) out << ",beta1_y" << t << ",beta2_y" << t;
  out << ",years_cooperated";
  for (int t = 1; t <= horizon; ++t) out << ",accepted_y" << t;
  for (int t = 1; t <= horizon; ++t) out << ",converged_y" << t;
  for (int t = 1; t <= horizon; ++t) {
    out << ",F1_y" << t << ",F2_y" << t << ",F1_s1_y" << t << ",F2_s1_y" << t << ",pool_y" << t
        << ",q1_y" << t << ",q2_y" << t << ",v1_y" << t << ",v2_y" << t;
  }
  out << ",dF_co,cir,roc,d_emissions,d_travel_cost,d_profit\n";

  for (const auto& r : records) {
    out << csv_field(r.scenario) << ',' << r.seed << ',' << num(r.mu) << ',' << num(r.weights.emission)
        << ',' << num(r.weights.travel_cost) << ',' << num(r.weights.profit);
    for (int t = 0; t < horizon; ++t) {
      out << ',' << num(r.years[t].betas[0]) << ',' << num(r.years[t].betas[1]);
    }
    out << ',' << r.years_cooperated;
    for (int t = 0; t < horizon; ++t) out << ',' << (r.years[t].accepted ? 1 : 0);
    for (int t = 0; t < horizon; ++t) {
      out << ',' << ((r.years[t].converged && r.years[t].baseline_converged) ? 1 : 0);
    }
    for (int t = 0; t < horizon; ++t) {
      const auto& y = r.years[t];
      out << ',' << num(y.payoff_base[0]) << ',' << num(y.payoff_base[1]) << ','
          << num(y.payoff_stage1[0]) << ',' << num(y.payoff_stage1[1]) << ',' << num(y.pool)
          << ',' << num(y.shares[0]) << ',' << num(y.shares[1]) << ',' << num(y.payoffs[0])
          << ',' << num(y.payoffs[1]);
    }
    out << ',' << num(r.delta_f_co) << ',' << num(r.cir) << ','
        << (r.roc.has_value() ? num(*r.roc) : "nan") << ',' << num(r.delta_emissions) << ','
        << num(r.delta_travel_cost) << ',' << num(r.delta_profit) << '\n';
  }
  return out.str();
}

std::string schedule_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "scenario,year,stage,edge,build,upgrade\n";
  auto emit = [&](const std::string& scenario, int year, const char* stage,
                  const DesignAction& action) {
    const DesignAction a = action.normalized();
    std::map<int, std::pair<int, int>> rows;  // edge -> (build, upgrade)
    for (const auto& [id, b] : a.builds) {
      if (b) rows[id].first = 1;
    }
    for (const auto& [id, u] : a.upgrades) rows[id].second = u;
    for (const auto& [id, bu] : rows) {
      out << csv_field(scenario) << ',' << year << ',' << stage << ',' << id << ',' << bu.first << ','
          << bu.second << '\n';
    }
  };
  for (const auto& r : records) {
    for (const auto& y : r.years) {
      emit(r.scenario, y.year, "s1a", y.stage1_actions[0]);
      emit(r.scenario, y.year, "s1b", y.stage1_actions[1]);
      emit(r.scenario, y.year, "s2", y.stage2_action);
    }
  }
  return out.str();
}

std::string hetero_csv(const std::vector<HeteroRow>& rows) {
  std::ostringstream out;
  out << "scenario,budget_ratio,demand_ratio,points,roc_min,roc_q1,roc_median,roc_q3,roc_max\n";
  for (const auto& row : rows) {
    out << csv_field(row.name) << ',' << num(row.budget_ratio[0]) << ':' << num(row.budget_ratio[1]) << ','
        << num(row.demand_ratio[0]) << ':' << num(row.demand_ratio[1]) << ',' << row.roc.points
        << ',' << num(row.roc.min) << ',' << num(row.roc.q1) << ',' << num(row.roc.median) << ','
        << num(row.roc.q3) << ',' << num(row.roc.max) << '\n';
  }
  return out.str();
}

std::string summary_svg(const std::vector<RunRecord>& records) {
  const double width = 640, height = 480;
  const double left = 70, right = 20, top = 30, bottom = 50;
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const auto& r : records) {
    if (first) {
      min_x = max_x = r.cir;
      min_y = max_y = r.delta_f_co;
      first = false;
    }
    min_x = std::min(min_x, r.cir);
    max_x = std::max(max_x, r.cir);
    min_y = std::min(min_y, r.delta_f_co);
    max_y = std::max(max_y, r.delta_f_co);
  }
  if (max_x - min_x < 1e-12) max_x = min_x + 1.0;
  if (max_y - min_y < 1e-12) max_y = min_y + 1.0;
  auto px = [&](double x) { return left + (x - min_x) / (max_x - min_x) * (width - left - right); };
  auto py = [&](double y) {
    return height - bottom - (y - min_y) / (max_y - min_y) * (height - top - bottom);
  };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<line x1='" << left << "' y1='" << height - bottom << "' x2='" << width - right
      << "' y2='" << height - bottom << "' stroke='black'/>\n";
  out << "<line x1='" << left << "' y1='" << top << "' x2='" << left << "' y2='"
      << height - bottom << "' stroke='black'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = min_x + (max_x - min_x) * i / 4.0;
    const double fy = min_y + (max_y - min_y) * i / 4.0;
    out << "<text x='" << px(fx) << "' y='" << height - bottom + 18
        << "' font-size='11' text-anchor='middle'>" << num(fx) << "</text>\n";
    out << "<text x='" << left - 6 << "' y='" << py(fy) + 4
        << "' font-size='11' text-anchor='end'>" << num(fy) << "</text>\n";
  }
  out << "<text x='" << (left + width - right) / 2 << "' y='" << height - 12
      << "' font-size='12' text-anchor='middle'>co-investment ratio</text>\n";
  out << "<text x='16' y='" << (top + height - bottom) / 2
      << "' font-size='12' text-anchor='middle' transform='rotate(-90 16 "
      << (top + height - bottom) / 2 << ")'>payoff gain (CHF/day)</text>\n";
  for (const auto& r : records) {
    bool any_accepted = false;
    for (const auto& y : r.years) any_accepted = any_accepted || y.accepted;
    out << "<circle cx='" << px(r.cir) << "' cy='" << py(r.delta_f_co) << "' r='3' "
        << (any_accepted ? "fill='steelblue'" : "fill='none' stroke='gray'") << "/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace coinvest
