#pragma once

#include <vector>

#include "tollforge/basis.hpp"
#include "tollforge/poa.hpp"

namespace tollforge {

// Pigouvian surcharge: each user pays the externality it imposes on the
// others, tau(x) = (x-1)*(b(x) - b(x-1)) with b(0) = 0.
struct MarginalToll {
  std::vector<double> tau;  // tau(1..n)
  std::vector<double> f;    // b + tau
};

MarginalToll marginal_toll(const BasisTable& b, int n);

// Worst-case efficiency of the marginal surcharge over games built from the
// given bases; requires every x*b(x) convex so the induced costs are monotone.
PoaReport marginal_poa(const std::vector<BasisTable>& bases, int n,
                       double tol_feas = 1e-9);

}  // namespace tollforge
