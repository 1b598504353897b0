#pragma once

#include <vector>

#include "json.hpp"
#include "tollforge/basis.hpp"
#include "tollforge/poa.hpp"

namespace tollforge {

// A concrete congestion game with finitely many actions per player, used to
// cross-check the LP guarantees by brute force.
struct GameInstance {
  struct Resource {
    int basis = 0;   // index into bases
    double alpha = 0.0;
  };
  int n_players = 0;
  std::vector<BasisTable> bases;
  std::vector<Resource> resources;
  // actions[p][k] = sorted resource indices of action k of player p
  std::vector<std::vector<std::vector<int>>> actions;
  // tolls[e][x-1] = absolute toll on resource e at load x; empty = untolled
  std::vector<std::vector<double>> tolls;
};

std::vector<int> loads_of(const GameInstance& g, const std::vector<int>& joint);
double social_cost(const GameInstance& g, const std::vector<int>& joint);
double player_cost(const GameInstance& g, const std::vector<int>& joint, int p);

struct EquilibriumReport {
  std::vector<std::vector<int>> pure_nash;  // joint actions, weak-NE convention
  double worst_ne_cost = 0.0;
  double best_ne_cost = 0.0;
  double min_cost = 0.0;
  double empirical_poa = 0.0;  // worst_ne_cost / min_cost
};

// Exhaustive scan over joint actions; throws TooLarge past 10^7 profiles.
// Ties count as equilibria (a deviation must strictly improve to refute).
EquilibriumReport enumerate_pure_nash(const GameInstance& g);

// Two-terminal routing example on six unit-slope edges where marginal
// surcharges make the worst equilibrium three times the optimum.
GameInstance build_pigou_example();
void apply_marginal_tolls(GameInstance& g);

// Quadratic lower-bound families for constant tolls (8 players for tau >= 3,
// 3 players for 1 <= tau < 3; below 1 the construction has negative costs).
GameInstance build_const_lb_game(double tau);

// Optimal value and support of the minimization dual of the full efficiency
// program; its objective equals rho* by strong duality.
struct DualEntry {
  int j = 0;
  Triplet t;
  double theta = 0.0;
};
struct DualSolution {
  std::vector<DualEntry> entries;
  double objective = 0.0;
};

DualSolution solve_poa_dual(const std::vector<BasisTable>& bases,
                            const std::vector<InducedCost>& fs, int n,
                            double tol_feas = 1e-9);

// Worst-case instance assembled from the dual support: one resource per
// support entry and rotation, two actions per player.  Dual weights are first
// snapped to a common denominator (IrrationalDual if none fits within 1e-9).
GameInstance build_tight_instance(const DualSolution& dual,
                                  const std::vector<BasisTable>& bases,
                                  const std::vector<InducedCost>& fs, int n);

nlohmann::json instance_to_json(const GameInstance& g);
GameInstance instance_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const EquilibriumReport& r);

}  // namespace tollforge
