#include <cmath>

#include "doctest.h"
#include "tollforge/design.hpp"

using namespace tollforge;

TEST_CASE("method names round trip") {
  for (DesignMethod m : {DesignMethod::FullLp, DesignMethod::SimplifiedLp,
                         DesignMethod::Recursion})
    CHECK(method_from_name(method_name(m)) == m);
  CHECK_THROWS_AS(method_from_name("banana"), ValidationError);
}

TEST_CASE("the three methods agree on monomials") {
  for (int d : {1, 2, 3})
    for (int n : {5, 20}) {
      BasisTable b = monomial(d, n);
      OptimalDesign full = design_full(b, n);
      OptimalDesign simp = design_simplified(b, n);
      OptimalDesign rec = design_recursion(b, n);
      CHECK(std::fabs(full.rho_star - simp.rho_star) < 1e-8);
      CHECK(std::fabs(full.rho_star - rec.rho_star) < 1e-8);
    }
}

TEST_CASE("recursion starts at b(1) and reports consistent tolls") {
  for (int d : {1, 2, 4}) {
    int n = 25;
    BasisTable b = monomial(d, n);
    OptimalDesign rec = design_recursion(b, n);
    CHECK(rec.f_star[0] == doctest::Approx(b.at(1)).epsilon(1e-12));
    for (int x = 0; x < n; ++x)
      CHECK(rec.tau_star[x] ==
            doctest::Approx(rec.f_star[x] - b.at(x + 1)).epsilon(1e-12));
  }
}

TEST_CASE("simplified-program optimum is nondecreasing") {
  for (int d : {1, 2, 4}) {
    int n = 25;
    OptimalDesign simp = design_simplified(monomial(d, n), n);
    for (int x = 1; x < n; ++x)
      CHECK(simp.f_star[x] >= simp.f_star[x - 1] - 1e-9);
  }
}

TEST_CASE("simplified program requires the basis hypothesis") {
  CHECK_THROWS_AS(design_simplified(monomial(0, 6), 6), HypothesisViolation);
}

TEST_CASE("recursion below rho* still certifies that rho") {
  int n = 8;
  BasisTable b = monomial(2, n);
  double rho_star = solve_rho_star(b, n);
  for (double rho : {0.0, 0.5 * rho_star, rho_star}) {
    std::vector<double> f = design_recursion_f(b, n, rho);
    if (rho == 0.0)  // with no efficiency demand the recursion never dips
      for (int x = 1; x < n; ++x) CHECK(f[x] >= f[x - 1] - 1e-9);
    PoaReport rep = poa_full({b}, {{n, f}}, n);
    CHECK(rep.rho >= rho - 1e-8);
  }
}

TEST_CASE("designed pair stays feasible for the full constraint family") {
  int n = 10;
  BasisTable b = monomial(3, n);
  OptimalDesign od = design_full(b, n);
  InducedCost f{n, od.f_star};
  double scale = b.at(n) * n;
  for (const Triplet& t : triplet_set(n)) {
    int uy = t.x + t.y, uz = t.x + t.z;
    double row = b.at(uz) * uz - od.rho_star * b.at(uy) * uy +
                 f.at(uy) * t.y - f.at(uy + 1) * t.z;
    CHECK(row >= -1e-9 * scale);
  }
  PoaReport rep = poa_full({b}, {f}, n);
  CHECK(std::fabs(rep.rho - od.rho_star) < 1e-8);
}

TEST_CASE("recursion at a fixed rho is deterministic") {
  BasisTable b = monomial(2, 12);
  std::vector<double> f1 = design_recursion_f(b, 12, 0.2);
  std::vector<double> f2 = design_recursion_f(b, 12, 0.2);
  CHECK(f1 == f2);
}

TEST_CASE("designed tolls certify their efficiency") {
  int n = 15;
  std::vector<BasisTable> bases = {monomial(1, n), monomial(2, n)};
  Mechanism m = design_mechanism(bases, n, DesignMethod::Recursion, false);
  std::vector<InducedCost> fs;
  for (size_t j = 0; j < bases.size(); ++j)
    fs.push_back(induced_from(bases[j], m.tolls[j], n));
  PoaReport rep = poa_monotone(bases, fs, n);
  CHECK(std::fabs(rep.poa - m.poa) < 1e-7 * m.poa);
}

TEST_CASE("nonnegative variant keeps tolls above -1e-9") {
  int n = 20;
  for (int d : {1, 2, 3}) {
    std::vector<BasisTable> bases = {monomial(d, n)};
    Mechanism m = design_mechanism(bases, n, DesignMethod::Recursion, true);
    for (double t : m.tolls[0]) CHECK(t >= -1e-9);
  }
}

TEST_CASE("combination uses the basis coefficients") {
  int n = 10;
  std::vector<BasisTable> bases = {monomial(1, n), monomial(2, n)};
  Mechanism m = design_mechanism(bases, n, DesignMethod::Recursion, false);
  std::vector<double> combo = combine(m, {2.0, 0.5});
  for (int x = 0; x < n; ++x)
    CHECK(combo[x] ==
          doctest::Approx(2.0 * m.tolls[0][x] + 0.5 * m.tolls[1][x])
              .epsilon(1e-12));
  CHECK_THROWS_AS(combine(m, {1.0}), ValidationError);
}

TEST_CASE("mechanism json round trip") {
  int n = 6;
  std::vector<BasisTable> bases = {monomial(2, n)};
  Mechanism m = design_mechanism(bases, n, DesignMethod::SimplifiedLp, false);
  Mechanism m2 = mechanism_from_json(mechanism_to_json(m));
  CHECK(m2.n == m.n);
  CHECK(m2.method == m.method);
  CHECK(m2.poa == doctest::Approx(m.poa).epsilon(1e-12));
  for (int x = 0; x < n; ++x)
    CHECK(m2.tolls[0][x] == doctest::Approx(m.tolls[0][x]).epsilon(1e-12));
}
