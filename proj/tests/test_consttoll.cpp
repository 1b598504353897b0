#include <cmath>

#include "doctest.h"
#include "tollforge/consttoll.hpp"
#include "tollforge/poa.hpp"

using namespace tollforge;

TEST_CASE("evaluating the designed surcharge reproduces the quadratic limit") {
  int n = 100;
  std::vector<BasisTable> bases = {monomial(0, n), monomial(1, n),
                                   monomial(2, n)};
  ConstTollDesign cd = const_design(bases, n);
  std::vector<InducedCost> fs;
  for (size_t j = 0; j < bases.size(); ++j) {
    std::vector<double> f(n);
    for (int x = 1; x <= n; ++x) f[x - 1] = bases[j].at(x) + cd.tau[j];
    fs.push_back({n, f});
  }
  PoaReport rep = poa_monotone(bases, fs, n);
  CHECK(std::fabs(rep.poa - 16.0 / 3.0) < 1e-2);
}

TEST_CASE("constant design basics") {
  int n = 30;
  std::vector<BasisTable> bases = {monomial(0, n), monomial(1, n),
                                   monomial(2, n)};
  ConstTollDesign cd = const_design(bases, n);
  CHECK(cd.nu_star > 0.0);
  CHECK(cd.nu_star <= 1.0 + 1e-9);
  CHECK(cd.poa == doctest::Approx(1.0 / cd.rho_star).epsilon(1e-12));
  REQUIRE(cd.tau.size() == bases.size());
  for (size_t j = 0; j < bases.size(); ++j) {
    CHECK(cd.tau[j] ==
          doctest::Approx((1.0 / cd.nu_star - 1.0) * bases[j].at(1))
              .epsilon(1e-10));
    CHECK(cd.sigma[j] ==
          doctest::Approx((1.0 - cd.nu_star) * bases[j].at(1)).epsilon(1e-10));
    CHECK(cd.tau[j] >= -1e-12);  // surcharges, never subsidies
  }
}

TEST_CASE("closed form matches the LP for cubic costs") {
  int n = 100;
  std::vector<BasisTable> bases;
  for (int j = 0; j <= 3; ++j) bases.push_back(monomial(j, n));
  ConstTollDesign cd = const_design(bases, n);
  RationalPoa r = const_closed_form(3);
  CHECK(cd.poa == doctest::Approx(r.value()).epsilon(2e-3));
}

TEST_CASE("closed-form fractions for degrees 3..6") {
  struct Expect {
    int d;
    long long num, den;
  };
  for (Expect e : {Expect{3, 1212, 66}, Expect{4, 111588, 1248},
                   Expect{5, 1922184, 4092}, Expect{6, 32963196, 9912}}) {
    RationalPoa r = const_closed_form(e.d);
    // Compare as exact rationals (cross-multiplied in integers).
    CHECK(r.num * e.den == e.num * r.den);
  }
  CHECK_THROWS_AS(const_closed_form(2), ValidationError);
  CHECK_THROWS_AS(const_closed_form(7), ValidationError);
}

TEST_CASE("threshold satisfies its defining inequality") {
  for (int d = 3; d <= 6; ++d) {
    RationalPoa r = const_closed_form(d);
    auto ip = [&](long long b, int e) {
      double v = 1.0;
      for (int i = 0; i < e; ++i) v *= b;
      return v;
    };
    long long u = r.u_bar;
    // u is the last integer with u^{d+1} + 1 <= (u+1)^d + u.
    CHECK(ip(u, d + 1) + 1 <= ip(u + 1, d) + u);
    CHECK(ip(u + 1, d + 1) + 1 > ip(u + 2, d) + u + 1);
  }
}

TEST_CASE("quadratic special case") {
  ConstD2 q = const_d2_closed_form(2.0, 3.0, 1.0);
  CHECK(q.toll == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(q.poa == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(const_d2_closed_form(0.0, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(const_d2_closed_form(1.0, -1.0, 0.0), ValidationError);
}
