#include "tollforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tollforge/lp.hpp"

namespace tollforge {
namespace {

void validate_game(const GameInstance& g) {
  if (g.n_players < 1) throw ValidationError("game needs at least one player");
  if (g.actions.size() != static_cast<size_t>(g.n_players))
    throw LengthMismatch("one action list per player required");
  for (const GameInstance::Resource& r : g.resources) {
    if (r.basis < 0 || r.basis >= static_cast<int>(g.bases.size()))
      throw ValidationError("resource references a missing basis");
    if (g.bases[r.basis].n < g.n_players)
      throw LengthMismatch("basis tabulated short of the player count");
  }
  for (const auto& per_player : g.actions) {
    if (per_player.empty()) throw ValidationError("player with no actions");
    for (const auto& act : per_player)
      for (int e : act)
        if (e < 0 || e >= static_cast<int>(g.resources.size()))
          throw ValidationError("action references a missing resource");
  }
  if (!g.tolls.empty() && g.tolls.size() != g.resources.size())
    throw LengthMismatch("one toll table per resource required");
  for (const auto& t : g.tolls)
    if (t.size() < static_cast<size_t>(g.n_players))
      throw LengthMismatch("toll table shorter than the player count");
}

double resource_user_cost(const GameInstance& g, int e, int load) {
  const GameInstance::Resource& r = g.resources[e];
  double c = r.alpha * g.bases[r.basis].at(load);
  if (!g.tolls.empty()) c += g.tolls[e][load - 1];
  return c;
}

}  // namespace

std::vector<int> loads_of(const GameInstance& g, const std::vector<int>& joint) {
  std::vector<int> load(g.resources.size(), 0);
  for (int p = 0; p < g.n_players; ++p)
    for (int e : g.actions[p][joint[p]]) ++load[e];
  return load;
}

double social_cost(const GameInstance& g, const std::vector<int>& joint) {
  std::vector<int> load = loads_of(g, joint);
  double sc = 0.0;
  for (size_t e = 0; e < g.resources.size(); ++e)
    if (load[e] > 0)
      sc += load[e] * g.resources[e].alpha *
            g.bases[g.resources[e].basis].at(load[e]);
  return sc;  // tolls are transfers and do not enter the social cost
}

double player_cost(const GameInstance& g, const std::vector<int>& joint, int p) {
  std::vector<int> load = loads_of(g, joint);
  double c = 0.0;
  for (int e : g.actions[p][joint[p]]) c += resource_user_cost(g, e, load[e]);
  return c;
}

EquilibriumReport enumerate_pure_nash(const GameInstance& g) {
  validate_game(g);
  double total = 1.0;
  for (const auto& per_player : g.actions) total *= per_player.size();
  if (total > 1e7)
    throw TooLarge("joint action space exceeds 10^7 profiles");

  EquilibriumReport rep;
  rep.min_cost = std::numeric_limits<double>::infinity();
  rep.worst_ne_cost = -std::numeric_limits<double>::infinity();
  rep.best_ne_cost = std::numeric_limits<double>::infinity();

  std::vector<int> joint(g.n_players, 0);
  for (;;) {
    std::vector<int> load = loads_of(g, joint);
    double sc = 0.0;
    for (size_t e = 0; e < g.resources.size(); ++e)
      if (load[e] > 0)
        sc += load[e] * g.resources[e].alpha *
              g.bases[g.resources[e].basis].at(load[e]);
    rep.min_cost = std::min(rep.min_cost, sc);

    bool is_ne = true;
    for (int p = 0; p < g.n_players && is_ne; ++p) {
      const std::vector<int>& cur = g.actions[p][joint[p]];
      double cur_cost = 0.0;
      for (int e : cur) cur_cost += resource_user_cost(g, e, load[e]);
      std::vector<char> in_cur(g.resources.size(), 0);
      for (int e : cur) in_cur[e] = 1;
      for (size_t k = 0; k < g.actions[p].size() && is_ne; ++k) {
        if (static_cast<int>(k) == joint[p]) continue;
        double alt_cost = 0.0;
        for (int e : g.actions[p][k])
          alt_cost += resource_user_cost(g, e, load[e] + (in_cur[e] ? 0 : 1));
        if (alt_cost < cur_cost - 1e-9 * (1.0 + std::abs(cur_cost)))
          is_ne = false;  // strict improvement refutes; ties stay equilibria
      }
    }
    if (is_ne) {
      rep.pure_nash.push_back(joint);
      rep.worst_ne_cost = std::max(rep.worst_ne_cost, sc);
      rep.best_ne_cost = std::min(rep.best_ne_cost, sc);
    }

    int p = 0;
    while (p < g.n_players &&
           ++joint[p] == static_cast<int>(g.actions[p].size())) {
      joint[p] = 0;
      ++p;
    }
    if (p == g.n_players) break;
  }

  rep.empirical_poa = rep.pure_nash.empty()
                          ? std::numeric_limits<double>::quiet_NaN()
                          : rep.worst_ne_cost / rep.min_cost;
  return rep;
}

GameInstance build_pigou_example() {
  GameInstance g;
  g.n_players = 2;
  g.bases.push_back(monomial(1, 2));
  for (int e = 0; e < 6; ++e) g.resources.push_back({0, 1.0});
  // Resources: 0 = first player's direct edge, 1 = second player's direct
  // edge, 2,3 / 4,5 = the connector edges of the long detours.  Each detour
  // ends on the other player's direct edge.
  g.actions = {
      {{0}, {2, 3, 1}},  // player 1: direct, or detour through 2,3 then edge 1
      {{1}, {4, 5, 0}},  // player 2: direct, or detour through 4,5 then edge 0
  };
  return g;
}

void apply_marginal_tolls(GameInstance& g) {
  g.tolls.clear();
  for (const GameInstance::Resource& r : g.resources) {
    const BasisTable& b = g.bases[r.basis];
    std::vector<double> t(g.n_players);
    for (int x = 1; x <= g.n_players; ++x)
      t[x - 1] = r.alpha * (x - 1) * (b.at(x) - b.at(x - 1));
    g.tolls.push_back(std::move(t));
  }
}

GameInstance build_const_lb_game(double tau) {
  if (tau < 1.0)
    throw ValidationError(
        "constant-toll lower-bound construction needs tau >= 1");
  GameInstance g;
  if (tau >= 3.0) {
    const int n = 8;
    double c1 = 1.0 / 216.0;
    double c2 = (2.0 * tau + 59.0) / (108.0 * (1.0 + tau));
    g.n_players = n;
    g.bases.push_back(monomial(2, n));
    for (int k = 0; k < n; ++k) g.resources.push_back({0, c1 / n});
    for (int k = 0; k < n; ++k) g.resources.push_back({0, c2 / n});
    for (int p = 0; p < n; ++p) {
      std::vector<int> ne, opt;
      for (int t = 0; t < 6; ++t) ne.push_back((p + t) % n);
      opt = {(p + 6) % n, (p + 7) % n, n + p};
      g.actions.push_back({ne, opt});
    }
  } else {
    const int n = 3;
    double c1 = 1.0 / 8.0;
    double c2 = (tau - 1.0) / (8.0 * (1.0 + tau));
    g.n_players = n;
    g.bases.push_back(monomial(2, n));
    for (int k = 0; k < n; ++k) g.resources.push_back({0, c1 / n});
    for (int k = 0; k < n; ++k) g.resources.push_back({0, c2 / n});
    for (int p = 0; p < n; ++p) {
      std::vector<int> ne = {p, (p + 1) % n};
      std::vector<int> opt = {(p + 2) % n, n + p};
      g.actions.push_back({ne, opt});
    }
  }
  for (const GameInstance::Resource& r : g.resources)
    g.tolls.push_back(
        std::vector<double>(g.n_players, r.alpha * tau));  // constant toll
  return g;
}

DualSolution solve_poa_dual(const std::vector<BasisTable>& bases,
                            const std::vector<InducedCost>& fs, int n,
                            double tol_feas) {
  if (bases.size() != fs.size())
    throw LengthMismatch("bases and induced costs must pair up");
  std::vector<Triplet> trips = triplet_set(n);
  size_t nvars = bases.size() * trips.size();
  if (nvars > 5000)
    throw TooLarge("dual support enumeration limited to 5000 variables");

  LinearProgram lp;
  std::vector<double> deviation_row, normal_row, cost_row;
  for (size_t j = 0; j < bases.size(); ++j)
    for (const Triplet& t : trips) {
      const BasisTable& b = bases[j];
      const InducedCost& f = fs[j];
      cost_row.push_back(b.at(t.x + t.z) * (t.x + t.z));
      normal_row.push_back(b.at(t.x + t.y) * (t.x + t.y));
      deviation_row.push_back(f.at(t.x + t.y) * t.y -
                              f.at(t.x + t.y + 1) * t.z);
      lp.add_var("th" + std::to_string(lp.objective.size()),
                 -cost_row.back(), 0.0);
    }
  lp.add_constraint(deviation_row, Relation::Le, 0.0, "deviation");
  lp.add_constraint(normal_row, Relation::Eq, 1.0, "normalization");

  LpSolution sol = lp_solve(lp, tol_feas);
  if (sol.status != LpStatus::Optimal)
    throw NumericalFailure("dual program did not solve to optimality");

  DualSolution out;
  out.objective = -sol.objective_value;
  size_t k = 0;
  for (size_t j = 0; j < bases.size(); ++j)
    for (const Triplet& t : trips) {
      out.entries.push_back({static_cast<int>(j), t, sol.primal[k]});
      ++k;
    }
  return out;
}

GameInstance build_tight_instance(const DualSolution& dual,
                                  const std::vector<BasisTable>& bases,
                                  const std::vector<InducedCost>& fs, int n) {
  std::vector<DualEntry> support;
  for (const DualEntry& e : dual.entries)
    if (e.theta > 1e-9) support.push_back(e);
  if (support.empty()) throw ValidationError("dual solution has empty support");

  // Snap the weights to a common denominator.
  long long q = 0;
  for (long long cand = 1; cand <= 1000000; ++cand) {
    bool ok = true;
    for (const DualEntry& e : support) {
      double scaled = e.theta * cand;
      if (std::abs(scaled - std::llround(scaled)) > 1e-9 * cand) {
        ok = false;
        break;
      }
    }
    if (ok) {
      q = cand;
      break;
    }
  }
  if (q == 0)
    throw IrrationalDual("dual weights admit no common denominator <= 1e6");
  for (DualEntry& e : support)
    e.theta = static_cast<double>(std::llround(e.theta * q)) / q;

  GameInstance g;
  g.n_players = n;
  g.bases = bases;
  g.actions.assign(n, {{}, {}});
  auto mod = [&](long long v) { return static_cast<int>(((v % n) + n) % n); };
  for (const DualEntry& e : support) {
    for (int i = 1; i <= n; ++i) {
      int eid = static_cast<int>(g.resources.size());
      g.resources.push_back({e.j, e.theta / n});
      const BasisTable& b = bases[e.j];
      const InducedCost& f = fs[e.j];
      std::vector<double> toll(n);
      for (int x = 1; x <= n; ++x)
        toll[x - 1] = (e.theta / n) * (f.at(x) - b.at(x));
      g.tolls.push_back(std::move(toll));
      for (int p = 1; p <= n; ++p) {
        if (e.t.x + e.t.y >= 1 + mod(i - p))
          g.actions[p - 1][0].push_back(eid);
        if (e.t.x + e.t.z >= 1 + mod(i - p + e.t.z))
          g.actions[p - 1][1].push_back(eid);
      }
    }
  }
  return g;
}

nlohmann::json instance_to_json(const GameInstance& g) {
  nlohmann::json bases = nlohmann::json::array();
  for (const BasisTable& b : g.bases) bases.push_back(basis_to_json(b));
  nlohmann::json resources = nlohmann::json::array();
  for (const GameInstance::Resource& r : g.resources)
    resources.push_back({{"basis", r.basis}, {"alpha", r.alpha}});
  return {{"players", g.n_players},
          {"bases", bases},
          {"resources", resources},
          {"actions", g.actions},
          {"tolls", g.tolls}};
}

GameInstance instance_from_json(const nlohmann::json& j) {
  GameInstance g;
  g.n_players = j.at("players").get<int>();
  for (const auto& bj : j.at("bases")) g.bases.push_back(basis_from_json(bj));
  for (const auto& rj : j.at("resources"))
    g.resources.push_back(
        {rj.at("basis").get<int>(), rj.at("alpha").get<double>()});
  g.actions = j.at("actions")
                  .get<std::vector<std::vector<std::vector<int>>>>();
  if (j.contains("tolls") && !j.at("tolls").is_null())
    g.tolls = j.at("tolls").get<std::vector<std::vector<double>>>();
  validate_game(g);
  return g;
}

nlohmann::json report_to_json(const EquilibriumReport& r) {
  return {{"pure_nash", r.pure_nash},
          {"worst_ne_cost", r.worst_ne_cost},
          {"best_ne_cost", r.best_ne_cost},
          {"min_cost", r.min_cost},
          {"empirical_poa", r.empirical_poa}};
}

}  // namespace tollforge
