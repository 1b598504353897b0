#include "tollforge/margcost.hpp"

namespace tollforge {

MarginalToll marginal_toll(const BasisTable& b, int n) {
  if (n < 1) throw ValidationError("need n >= 1");
  if (b.n < n) throw LengthMismatch("basis " + b.name + " tabulated short of n");
  MarginalToll m;
  m.tau.resize(n);
  m.f.resize(n);
  for (int x = 1; x <= n; ++x) {
    m.tau[x - 1] = (x - 1) * (b.at(x) - b.at(x - 1));
    m.f[x - 1] = b.at(x) + m.tau[x - 1];
  }
  return m;
}

PoaReport marginal_poa(const std::vector<BasisTable>& bases, int n,
                       double tol_feas) {
  std::vector<InducedCost> fs;
  fs.reserve(bases.size());
  for (const BasisTable& b : bases) {
    MarginalToll m = marginal_toll(b, n);
    fs.push_back({n, m.f});
  }
  try {
    return poa_monotone(bases, fs, n, tol_feas);
  } catch (const NotMonotone&) {
    // x*b(x) not convex: the coarse program does not apply, use the full one.
    return poa_full(bases, fs, n, tol_feas);
  }
}

}  // namespace tollforge
