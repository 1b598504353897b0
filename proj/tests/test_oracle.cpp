#include <cmath>

#include "doctest.h"
#include "tollforge/design.hpp"
#include "tollforge/oracle.hpp"

using namespace tollforge;

TEST_CASE("routing example: untolled play is efficient") {
  GameInstance g = build_pigou_example();
  EquilibriumReport rep = enumerate_pure_nash(g);
  REQUIRE(!rep.pure_nash.empty());
  CHECK(rep.min_cost == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.worst_ne_cost == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.empirical_poa == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("routing example: marginal surcharges triple the worst outcome") {
  GameInstance g = build_pigou_example();
  apply_marginal_tolls(g);
  EquilibriumReport rep = enumerate_pure_nash(g);
  REQUIRE(!rep.pure_nash.empty());
  CHECK(rep.min_cost == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.worst_ne_cost == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(rep.empirical_poa == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("constant-toll lower bound game at tau = 3") {
  GameInstance g = build_const_lb_game(3.0);
  EquilibriumReport rep = enumerate_pure_nash(g);
  REQUIRE(!rep.pure_nash.empty());
  CHECK(std::fabs(rep.empirical_poa - 16.0 / 3.0) < 1e-6);
}

TEST_CASE("constant-toll lower bound family rejects tau below 1") {
  CHECK_THROWS_AS(build_const_lb_game(0.5), ValidationError);
  CHECK_NOTHROW(build_const_lb_game(1.5));
}

TEST_CASE("social cost never includes tolls") {
  GameInstance g = build_pigou_example();
  std::vector<int> joint(g.n_players, 0);
  double untolled_sc = social_cost(g, joint);
  apply_marginal_tolls(g);
  CHECK(social_cost(g, joint) == doctest::Approx(untolled_sc).epsilon(1e-12));
  // ... but player costs do.
  CHECK(player_cost(g, {1, 1}, 0) >= player_cost({g.n_players, g.bases,
        g.resources, g.actions, {}}, {1, 1}, 0) - 1e-12);
}

TEST_CASE("dual of the efficiency program attains rho*") {
  int n = 3;
  BasisTable b = monomial(1, n);
  OptimalDesign od = design_full(b, n);
  std::vector<InducedCost> fs = {{n, od.f_star}};
  DualSolution dual = solve_poa_dual({b}, fs, n);
  CHECK(std::fabs(dual.objective - od.rho_star) < 1e-8);
  double total = 0.0;
  for (const DualEntry& e : dual.entries) {
    CHECK(e.theta >= -1e-12);
    total += e.theta;
  }
  CHECK(total > 0.0);
}

TEST_CASE("tight instances approach the designed guarantee") {
  for (int n : {2, 3}) {
    BasisTable b = monomial(1, n);
    OptimalDesign od = design_full(b, n);
    std::vector<InducedCost> fs = {{n, od.f_star}};
    DualSolution dual = solve_poa_dual({b}, fs, n);
    GameInstance g = build_tight_instance(dual, {b}, fs, n);
    EquilibriumReport rep = enumerate_pure_nash(g);
    REQUIRE(!rep.pure_nash.empty());
    double guarantee = 1.0 / od.rho_star;
    CHECK(rep.empirical_poa <= guarantee + 1e-6);
    CHECK(rep.empirical_poa >= guarantee - 0.05);
  }
}

TEST_CASE("instance json round trip") {
  GameInstance g = build_pigou_example();
  apply_marginal_tolls(g);
  GameInstance g2 = instance_from_json(instance_to_json(g));
  CHECK(g2.n_players == g.n_players);
  CHECK(g2.resources.size() == g.resources.size());
  CHECK(g2.actions == g.actions);
  EquilibriumReport r1 = enumerate_pure_nash(g);
  EquilibriumReport r2 = enumerate_pure_nash(g2);
  CHECK(r1.worst_ne_cost == doctest::Approx(r2.worst_ne_cost).epsilon(1e-12));
  CHECK(r1.min_cost == doctest::Approx(r2.min_cost).epsilon(1e-12));
}

TEST_CASE("profile bookkeeping") {
  GameInstance g = build_pigou_example();
  std::vector<int> loads = loads_of(g, {1, 1});
  int total = 0;
  for (int l : loads) total += l;
  CHECK(total == 6);  // both detours use three edges each
}
