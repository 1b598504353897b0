#include <cmath>
#include <random>

#include "doctest.h"
#include "tollforge/design.hpp"
#include "tollforge/poa.hpp"

using namespace tollforge;

namespace {

// Exhaustive reference for the constraint index set.
long long triplet_count_reference(int n) {
  long long count = 0;
  for (int x = 0; x <= n; ++x)
    for (int y = 0; y <= n; ++y)
      for (int z = 0; z <= n; ++z) {
        int s = x + y + z;
        if (s < 1 || s > n) continue;
        if (x * y * z == 0 || s == n) ++count;
      }
  return count;
}

InducedCost untolled(const BasisTable& b, int n) {
  return {n, std::vector<double>(b.values.begin(), b.values.begin() + n)};
}

}  // namespace

TEST_CASE("triplet set matches the exhaustive predicate") {
  for (int n = 1; n <= 12; ++n) {
    std::vector<Triplet> ts = triplet_set(n);
    CHECK(static_cast<long long>(ts.size()) == triplet_count_reference(n));
    for (size_t i = 0; i < ts.size(); ++i) {
      const Triplet& t = ts[i];
      int s = t.x + t.y + t.z;
      CHECK(t.x >= 0);
      CHECK(t.y >= 0);
      CHECK(t.z >= 0);
      CHECK(s >= 1);
      CHECK(s <= n);
      CHECK((t.x * t.y * t.z == 0 || s == n));
      if (i > 0) {  // strict lexicographic order
        const Triplet& p = ts[i - 1];
        bool less = p.x < t.x || (p.x == t.x && p.y < t.y) ||
                    (p.x == t.x && p.y == t.y && p.z < t.z);
        CHECK(less);
      }
    }
  }
}

TEST_CASE("untolled affine congestion has efficiency 5/2 in the limit") {
  int n = 40;
  std::vector<BasisTable> bases = {monomial(0, n), monomial(1, n)};
  std::vector<InducedCost> fs = {untolled(bases[0], n), untolled(bases[1], n)};
  PoaReport rep = poa_monotone(bases, fs, n);
  CHECK(rep.poa > 2.3);
  CHECK(rep.poa < 2.5 + 1e-9);
}

TEST_CASE("full and monotone programs agree for monotone induced costs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> step(0.0, 1.0);
  int n = 6;
  std::vector<BasisTable> bases = {monomial(1, n), monomial(2, n)};
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<InducedCost> fs;
    for (size_t j = 0; j < bases.size(); ++j) {
      std::vector<double> f(n);
      double acc = 0.2 + step(rng);
      for (int x = 0; x < n; ++x) {
        acc += step(rng) * bases[j].at(n) / n;
        f[x] = acc;
      }
      fs.push_back({n, f});
    }
    PoaReport a = poa_full(bases, fs, n);
    PoaReport b = poa_monotone(bases, fs, n);
    CHECK(std::fabs(a.rho - b.rho) < 1e-8);
  }
}

TEST_CASE("reduction agrees for untolled, optimal, and marginal costs") {
  for (int d = 1; d <= 4; ++d)
    for (int n : {3, 5, 10, 30}) {
      BasisTable b = monomial(d, n);
      std::vector<std::vector<double>> cases;
      cases.push_back(std::vector<double>(b.values.begin(),
                                          b.values.begin() + n));  // untolled
      std::vector<double> marginal(n);
      for (int x = 1; x <= n; ++x)
        marginal[x - 1] = x * b.at(x) - (x - 1) * b.at(x - 1);
      cases.push_back(marginal);
      cases.push_back(design_simplified(b, n).f_star);  // optimal tolls
      for (const std::vector<double>& f : cases) {
        PoaReport full = poa_full({b}, {{n, f}}, n);
        PoaReport mono = poa_monotone({b}, {{n, f}}, n);
        CHECK(std::fabs(full.rho - mono.rho) < 1e-8);
      }
    }
}

TEST_CASE("efficiency is invariant under scaling the induced costs") {
  int n = 8;
  std::vector<BasisTable> bases = {monomial(2, n)};
  std::vector<double> f(n);
  for (int x = 1; x <= n; ++x) f[x - 1] = x * x * x / 2.0 + x;
  PoaReport a = poa_monotone(bases, {{n, f}}, n);
  for (double& v : f) v *= 17.5;
  PoaReport b = poa_monotone(bases, {{n, f}}, n);
  CHECK(std::fabs(a.rho - b.rho) < 1e-8);
}

TEST_CASE("decreasing induced costs are rejected by the monotone program") {
  int n = 4;
  std::vector<BasisTable> bases = {monomial(1, n)};
  std::vector<double> f = {4.0, 3.0, 2.0, 1.0};
  CHECK_THROWS_AS(poa_monotone(bases, {{n, f}}, n), NotMonotone);
  CHECK_NOTHROW(poa_full(bases, {{n, f}}, n));
}

TEST_CASE("input validation") {
  int n = 4;
  std::vector<BasisTable> bases = {monomial(1, n)};
  InducedCost f = untolled(bases[0], n);
  CHECK_THROWS_AS(poa_monotone(bases, {f, f}, n), ValidationError);
  std::vector<BasisTable> neg = {basis_from_values("neg", {-1.0, 1.0, 2.0, 3.0})};
  CHECK_THROWS_AS(poa_full(neg, {f}, n), HypothesisViolation);
}
