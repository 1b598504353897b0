#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tollforge/basis.hpp"
#include "tollforge/lp.hpp"

namespace tollforge {

// Player-perceived cost f(x) = b(x) + toll(x) on loads 1..n, with f(0) = 0
// and f(n+1) = 0 by convention.
struct InducedCost {
  int n = 0;
  std::vector<double> f;  // f[x-1], x = 1..n

  double at(int x) const {
    if (x == 0 || x == n + 1) return 0.0;
    if (x < 0 || x > n + 1)
      throw ValidationError("induced cost evaluated outside 0..n+1");
    return f[x - 1];
  }
};

InducedCost induced_from(const BasisTable& b, const std::vector<double>& tolls,
                         int n);

struct Triplet {
  int x = 0, y = 0, z = 0;
};

// All (x,y,z) >= 0 with 1 <= x+y+z <= n and (x*y*z == 0 or x+y+z == n),
// in lexicographic order.
std::vector<Triplet> triplet_set(int n);

struct PoaReport {
  double rho = 0.0;  // optimal value of the efficiency program
  std::optional<double> nu;
  double poa = 0.0;  // 1/rho
  std::vector<std::string> binding;  // labels of active constraints
};

// Worst-case efficiency over all games built from the given bases when players
// respond to the given induced costs; constraints are indexed by the full
// triplet set.  Throws UnboundedPoa when rho* <= 0.
PoaReport poa_full(const std::vector<BasisTable>& bases,
                   const std::vector<InducedCost>& fs, int n,
                   double tol_feas = 1e-9);

// Same value for nondecreasing induced costs, via the coarser (u,v)-indexed
// program.  Throws NotMonotone if any f is decreasing.
PoaReport poa_monotone(const std::vector<BasisTable>& bases,
                       const std::vector<InducedCost>& fs, int n,
                       double tol_feas = 1e-9);

}  // namespace tollforge
