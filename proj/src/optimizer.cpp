#include "coinvest/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "coinvest/metrics.hpp"

namespace coinvest {

double action_cost(const DesignAction& action, const MobilityGraph& g,
                   const ServiceParams& params) {
  return construction_cost(action, g, params, 0);
}

namespace {

struct EdgeInfo {
  int id = 0;
  int slot = 0;
  bool base_connected = false;
  int headroom = 0;      // frequency units still assignable
  double build_cost = 0.0;
  double unit_cost = 0.0;
};

std::vector<EdgeInfo> edge_infos(const DesignProblem& p, const MobilityGraph& g,
                                 const ServiceParams& params) {
  std::vector<EdgeInfo> infos;
  infos.reserve(p.edge_set.size());
  for (int id : p.edge_set) {
    const int slot = g.rail_slot(id);
    if (slot < 0) {
      throw Error(ErrorCode::kUnknownEdge, "not a rail edge: " + std::to_string(id));
    }
    EdgeInfo info;
    info.id = id;
    info.slot = slot;
    info.base_connected = p.base_state.x()[slot] != 0;
    info.headroom = params.max_frequency - p.base_state.s()[slot];
    const double len = g.edge(id).label.length_km;
    info.build_cost = params.build_cost_per_km * len;
    info.unit_cost = params.frequency_cost_per_km * len;
    infos.push_back(info);
  }
  std::sort(infos.begin(), infos.end(),
            [](const EdgeInfo& a, const EdgeInfo& b) { return a.id < b.id; });
  return infos;
}

int effective_frequency_cap(const std::vector<EdgeInfo>& infos) {
  int cap = 0;
  for (const auto& i : infos) cap = std::max(cap, i.headroom);
  return cap;
}

constexpr std::int64_t kMaxExactLeaves = 20'000'000;

/// Depth-first enumeration of feasible actions in lexicographic order.
/// Returns false if the leaf budget was exhausted.
class ActionEnumerator {
 public:
  ActionEnumerator(const std::vector<EdgeInfo>& infos, double budget,
                   const std::function<void(const DesignAction&)>& fn)
      : infos_(infos), budget_(budget), fn_(fn) {}

  bool run() {
    DesignAction scratch;
    return descend(0, 0.0, scratch);
  }

 private:
  bool descend(std::size_t i, double cost, DesignAction& action) {
    if (i == infos_.size()) {
      if (++leaves_ > kMaxExactLeaves) return false;
      fn_(action);
      return true;
    }
    const EdgeInfo& e = infos_[i];
    if (e.base_connected) {
      for (int s = 0; s <= e.headroom; ++s) {
        const double c = cost + s * e.unit_cost;
        if (c > budget_) break;
        if (s > 0) action.upgrades[e.id] = s;
        const bool ok = descend(i + 1, c, action);
        action.upgrades.erase(e.id);
        if (!ok) return false;
      }
      return true;
    }
    if (!descend(i + 1, cost, action)) return false;  // skip edge
    if (cost + e.build_cost <= budget_) {
      action.builds[e.id] = true;
      for (int s = 0; s <= e.headroom; ++s) {
        const double c = cost + e.build_cost + s * e.unit_cost;
        if (c > budget_) break;
        if (s > 0) action.upgrades[e.id] = s;
        const bool ok = descend(i + 1, c, action);
        action.upgrades.erase(e.id);
        if (!ok) {
          action.builds.erase(e.id);
          return false;
        }
      }
      action.builds.erase(e.id);
    }
    return true;
  }

  const std::vector<EdgeInfo>& infos_;
  double budget_;
  const std::function<void(const DesignAction&)>& fn_;
  std::int64_t leaves_ = 0;
};

}  // namespace

bool exact_applicable(const DesignProblem& p, const MobilityGraph& g,
                      const ServiceParams& params) {
  const auto infos = edge_infos(p, g, params);
  return static_cast<int>(infos.size()) <= p.exact_edge_threshold &&
         effective_frequency_cap(infos) <= p.exact_frequency_cap;
}

void for_each_feasible_action(const DesignProblem& p, const MobilityGraph& g,
                              const ServiceParams& params,
                              const std::function<void(const DesignAction&)>& fn) {
  const auto infos = edge_infos(p, g, params);
  if (static_cast<int>(infos.size()) > p.exact_edge_threshold ||
      effective_frequency_cap(infos) > p.exact_frequency_cap) {
    throw Error(ErrorCode::kTooLarge,
                "instance exceeds exact limits (" + std::to_string(infos.size()) + " edges, cap " +
                    std::to_string(effective_frequency_cap(infos)) + ")");
  }
  ActionEnumerator enumerator(infos, p.budget, fn);
  if (!enumerator.run()) {
    throw Error(ErrorCode::kTooLarge, "exact enumeration leaf budget exhausted");
  }
}

SolveResult solve_exact(const DesignProblem& p, const MobilityGraph& g,
                        const ServiceParams& params) {
  SolveResult best;
  bool first = true;
  for_each_feasible_action(p, g, params, [&](const DesignAction& a) {
    const double value = p.objective(a);
    if (first || value > best.objective) {
      best.action = a;
      best.objective = value;
      first = false;
    }
  });
  return best;
}

namespace {

/// Mutable hill-climbing state over the problem's edge set.
class LocalSearch {
 public:
  LocalSearch(const DesignProblem& p, const std::vector<EdgeInfo>& infos)
      : problem_(p), infos_(infos) {}

  void reset() {
    built_.assign(infos_.size(), false);
    added_.assign(infos_.size(), 0);
    cost_ = 0.0;
    objective_ = evaluate();
  }

  bool load(const DesignAction& action) {
    reset();
    for (std::size_t i = 0; i < infos_.size(); ++i) {
      const EdgeInfo& e = infos_[i];
      auto bi = action.builds.find(e.id);
      if (bi != action.builds.end() && bi->second) {
        if (e.base_connected) return false;
        built_[i] = true;
        cost_ += e.build_cost;
      }
      auto ui = action.upgrades.find(e.id);
      if (ui != action.upgrades.end() && ui->second > 0) {
        if (!e.base_connected && !built_[i]) return false;
        if (ui->second > e.headroom) return false;
        added_[i] = ui->second;
        cost_ += ui->second * e.unit_cost;
      }
    }
    // Entries outside the edge set make the action unusable as a start.
    for (const auto& [id, b] : action.builds) {
      if (b && !index_of(id)) return false;
    }
    for (const auto& [id, s] : action.upgrades) {
      if (s > 0 && !index_of(id)) return false;
    }
    if (cost_ > problem_.budget) return false;
    objective_ = evaluate();
    return true;
  }

  DesignAction materialize() const {
    DesignAction a;
    for (std::size_t i = 0; i < infos_.size(); ++i) {
      if (built_[i]) a.builds.emplace_hint(a.builds.end(), infos_[i].id, true);
      if (added_[i] > 0) a.upgrades.emplace_hint(a.upgrades.end(), infos_[i].id, added_[i]);
    }
    return a;
  }

  double objective() const { return objective_; }
  double cost() const { return cost_; }

  /// Greedy constructive phase: repeatedly applies the best add/+1 move.
  void greedy_fill() {
    while (apply_best_move(/*adds=*/true, /*removes=*/false, /*freq=*/true, /*swaps=*/false)) {
    }
  }

  /// Full hill climb; swap moves are scanned only when nothing else helps.
  void climb() {
    for (;;) {
      if (apply_best_move(true, true, true, false)) continue;
      if (apply_best_move(false, false, false, true)) continue;
      break;
    }
  }

  void randomize(std::mt19937_64& rng) {
    reset();
    std::vector<std::size_t> order(infos_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    for (std::size_t i : order) {
      const EdgeInfo& e = infos_[i];
      if (e.base_connected || (rng() & 1) == 0) continue;
      if (cost_ + e.build_cost > problem_.budget) continue;
      built_[i] = true;
      cost_ += e.build_cost;
      const int afford =
          e.unit_cost > 0
              ? static_cast<int>(std::floor((problem_.budget - cost_) / e.unit_cost + 1e-12))
              : e.headroom;
      const int cap = std::min(e.headroom, afford);
      if (cap > 0) {
        const int s = static_cast<int>(rng() % static_cast<std::uint64_t>(cap + 1));
        added_[i] = s;
        cost_ += s * e.unit_cost;
      }
    }
    objective_ = evaluate();
  }

 private:
  bool index_of(int id) const {
    auto it = std::lower_bound(infos_.begin(), infos_.end(), id,
                               [](const EdgeInfo& e, int v) { return e.id < v; });
    return it != infos_.end() && it->id == id;
  }

  double evaluate() {
    return problem_.objective(materialize());
  }

  struct Move {
    std::size_t edge = 0;
    std::size_t other = 0;  // swap target
    enum class Kind { kAdd, kRemove, kFreqUp, kFreqDown, kSwap } kind = Kind::kAdd;
    int set_s = 0;  // frequency after the move (kAdd/kSwap)
    double objective = 0.0;
    double cost = 0.0;
  };

  bool connected(std::size_t i) const { return infos_[i].base_connected || built_[i]; }

  /// Evaluates the current arrays with a one-edge override.
  double probe(std::size_t i, bool built, int added) {
    const bool ob = built_[i];
    const int oa = added_[i];
    built_[i] = built;
    added_[i] = added;
    const double v = evaluate();
    built_[i] = ob;
    added_[i] = oa;
    return v;
  }

  double probe_swap(std::size_t i, std::size_t j, int s_j) {
    const bool obi = built_[i];
    const int oai = added_[i];
    const bool obj = built_[j];
    const int oaj = added_[j];
    built_[i] = false;
    added_[i] = 0;
    built_[j] = true;
    added_[j] = s_j;
    const double v = evaluate();
    built_[i] = obi;
    added_[i] = oai;
    built_[j] = obj;
    added_[j] = oaj;
    return v;
  }

  bool apply_best_move(bool adds, bool removes, bool freq, bool swaps) {
    Move best;
    bool found = false;
    auto consider = [&](const Move& m) {
      if (m.objective > objective_ && (!found || m.objective > best.objective)) {
        best = m;
        found = true;
      }
    };

    if (adds) {
      for (std::size_t i = 0; i < infos_.size(); ++i) {
        const EdgeInfo& e = infos_[i];
        if (e.base_connected || built_[i]) continue;
        if (cost_ + e.build_cost > problem_.budget) continue;
        for (int s = 0; s <= e.headroom; ++s) {
          const double c = cost_ + e.build_cost + s * e.unit_cost;
          if (c > problem_.budget) break;
          Move m;
          m.edge = i;
          m.kind = Move::Kind::kAdd;
          m.set_s = s;
          m.cost = c;
          m.objective = probe(i, true, s);
          consider(m);
        }
      }
    }
    if (removes) {
      for (std::size_t i = 0; i < infos_.size(); ++i) {
        if (!built_[i]) continue;
        Move m;
        m.edge = i;
        m.kind = Move::Kind::kRemove;
        m.cost = cost_ - infos_[i].build_cost - added_[i] * infos_[i].unit_cost;
        m.objective = probe(i, false, 0);
        consider(m);
      }
    }
    if (freq) {
      for (std::size_t i = 0; i < infos_.size(); ++i) {
        const EdgeInfo& e = infos_[i];
        if (!connected(i)) continue;
        if (added_[i] < e.headroom && cost_ + e.unit_cost <= problem_.budget) {
          Move m;
          m.edge = i;
          m.kind = Move::Kind::kFreqUp;
          m.cost = cost_ + e.unit_cost;
          m.objective = probe(i, built_[i], added_[i] + 1);
          consider(m);
        }
        if (added_[i] > 0) {
          Move m;
          m.edge = i;
          m.kind = Move::Kind::kFreqDown;
          m.cost = cost_ - e.unit_cost;
          m.objective = probe(i, built_[i], added_[i] - 1);
          consider(m);
        }
      }
    }
    if (swaps) {
      for (std::size_t i = 0; i < infos_.size(); ++i) {
        if (!built_[i]) continue;
        const double freed = cost_ - infos_[i].build_cost - added_[i] * infos_[i].unit_cost;
        for (std::size_t j = 0; j < infos_.size(); ++j) {
          if (j == i) continue;
          const EdgeInfo& t = infos_[j];
          if (t.base_connected || built_[j]) continue;
          if (freed + t.build_cost > problem_.budget) continue;
          for (int s = 0; s <= t.headroom; ++s) {
            const double c = freed + t.build_cost + s * t.unit_cost;
            if (c > problem_.budget) break;
            Move m;
            m.edge = i;
            m.other = j;
            m.kind = Move::Kind::kSwap;
            m.set_s = s;
            m.cost = c;
            m.objective = probe_swap(i, j, s);
            consider(m);
          }
        }
      }
    }
    if (!found) return false;

    switch (best.kind) {
      case Move::Kind::kAdd:
        built_[best.edge] = true;
        added_[best.edge] = best.set_s;
        break;
      case Move::Kind::kRemove:
        built_[best.edge] = false;
        added_[best.edge] = 0;
        break;
      case Move::Kind::kFreqUp:
        ++added_[best.edge];
        break;
      case Move::Kind::kFreqDown:
        --added_[best.edge];
        break;
      case Move::Kind::kSwap:
        built_[best.edge] = false;
        added_[best.edge] = 0;
        built_[best.other] = true;
        added_[best.other] = best.set_s;
        break;
    }
    cost_ = best.cost;
    objective_ = best.objective;
    return true;
  }

  const DesignProblem& problem_;
  const std::vector<EdgeInfo>& infos_;
  std::vector<char> built_;
  std::vector<int> added_;
  double cost_ = 0.0;
  double objective_ = 0.0;
};

}  // namespace

SolveResult solve_local(const DesignProblem& p, const MobilityGraph& g,
                        const ServiceParams& params, std::uint64_t seed,
                        const LocalSearchOptions& options) {
  const auto infos = edge_infos(p, g, params);
  LocalSearch search(p, infos);

  SolveResult best;
  search.reset();
  best.action = search.materialize();  // do-nothing baseline
  best.objective = search.objective();

  auto harvest = [&]() {
    if (search.objective() > best.objective) {
      best.action = search.materialize();
      best.objective = search.objective();
    }
  };

  search.greedy_fill();
  search.climb();
  harvest();

  if (options.warm_start != nullptr && search.load(*options.warm_start)) {
    search.climb();
    harvest();
  }

  std::mt19937_64 rng(seed);
  for (int r = 0; r < options.restarts; ++r) {
    search.randomize(rng);
    search.climb();
    harvest();
  }
  return best;
}

SolveResult solve(const DesignProblem& p, const MobilityGraph& g, const ServiceParams& params,
                  std::uint64_t seed, const LocalSearchOptions& options) {
  if (p.exactness == DesignProblem::Exactness::kExact) return solve_exact(p, g, params);
  if (p.exactness == DesignProblem::Exactness::kAuto && exact_applicable(p, g, params)) {
    return solve_exact(p, g, params);
  }
  return solve_local(p, g, params, seed, options);
}

}  // namespace coinvest
