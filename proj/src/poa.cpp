#include "tollforge/poa.hpp"

#include <cmath>

namespace tollforge {
namespace {

void validate_inputs(const std::vector<BasisTable>& bases,
                     const std::vector<InducedCost>& fs, int n) {
  if (n < 1) throw ValidationError("need n >= 1");
  if (bases.empty()) throw ValidationError("need at least one basis");
  if (bases.size() != fs.size())
    throw LengthMismatch("bases and induced costs must pair up");
  for (const BasisTable& b : bases) {
    if (b.n < n) throw LengthMismatch("basis " + b.name + " tabulated short of n");
    if (!classify(b).is_positive)
      throw HypothesisViolation("basis " + b.name + " is not positive on 1..n");
  }
  for (const InducedCost& f : fs)
    if (f.n != n) throw LengthMismatch("induced cost tabulated short of n");
}

PoaReport finish(const LinearProgram& lp, double tol_feas) {
  LpSolution sol = lp_solve(lp, tol_feas);
  if (sol.status == LpStatus::Unbounded)
    throw NumericalFailure("efficiency program unbounded above");
  if (sol.status == LpStatus::Infeasible)
    throw NumericalFailure("efficiency program infeasible");
  PoaReport rep;
  rep.rho = sol.primal[0];
  rep.nu = sol.primal[1];
  if (rep.rho <= 1e-12)
    throw UnboundedPoa("rho* <= 0: equilibria can be arbitrarily inefficient");
  rep.poa = 1.0 / rep.rho;
  for (const Constraint& c : lp.constraints) {
    double lhs = 0.0, scale = 0.0;
    for (size_t j = 0; j < c.coeffs.size(); ++j) {
      lhs += c.coeffs[j] * sol.primal[j];
      scale = std::max(scale, std::abs(c.coeffs[j]));
    }
    scale = std::max(scale, std::abs(c.rhs));
    if (scale == 0.0) continue;
    if (std::abs(lhs - c.rhs) <= 1e-7 * scale) rep.binding.push_back(c.label);
  }
  return rep;
}

}  // namespace

InducedCost induced_from(const BasisTable& b, const std::vector<double>& tolls,
                         int n) {
  if (b.n < n) throw LengthMismatch("basis tabulated short of n");
  if (tolls.size() < static_cast<size_t>(n))
    throw LengthMismatch("toll table shorter than n");
  InducedCost f;
  f.n = n;
  f.f.resize(n);
  for (int x = 1; x <= n; ++x) f.f[x - 1] = b.at(x) + tolls[x - 1];
  return f;
}

std::vector<Triplet> triplet_set(int n) {
  if (n < 1) throw ValidationError("triplet_set needs n >= 1");
  std::vector<Triplet> out;
  for (int x = 0; x <= n; ++x)
    for (int y = 0; x + y <= n; ++y)
      for (int z = 0; x + y + z <= n; ++z) {
        int s = x + y + z;
        if (s < 1) continue;
        if (x * y * z == 0 || s == n) out.push_back({x, y, z});
      }
  return out;
}

PoaReport poa_full(const std::vector<BasisTable>& bases,
                   const std::vector<InducedCost>& fs, int n, double tol_feas) {
  validate_inputs(bases, fs, n);
  LinearProgram lp;
  lp.add_var("rho", 1.0);
  lp.add_var("nu", 0.0, 0.0);
  std::vector<Triplet> trips = triplet_set(n);
  for (size_t j = 0; j < bases.size(); ++j) {
    const BasisTable& b = bases[j];
    const InducedCost& f = fs[j];
    for (const Triplet& t : trips) {
      double b1 = b.at(t.x + t.y) * (t.x + t.y);
      double b2 = b.at(t.x + t.z) * (t.x + t.z);
      double fc = f.at(t.x + t.y) * t.y - f.at(t.x + t.y + 1) * t.z;
      lp.add_constraint({-b1, fc}, Relation::Ge, -b2,
                        "j=" + std::to_string(j) + ",x=" + std::to_string(t.x) +
                            ",y=" + std::to_string(t.y) +
                            ",z=" + std::to_string(t.z));
    }
  }
  return finish(lp, tol_feas);
}

PoaReport poa_monotone(const std::vector<BasisTable>& bases,
                       const std::vector<InducedCost>& fs, int n,
                       double tol_feas) {
  validate_inputs(bases, fs, n);
  for (const InducedCost& f : fs) {
    double scale = 1.0;
    for (double v : f.f) scale = std::max(scale, std::abs(v));
    for (int x = 1; x < n; ++x)
      if (f.at(x + 1) < f.at(x) - 1e-9 * scale)
        throw NotMonotone("induced cost decreases at x=" + std::to_string(x));
  }
  LinearProgram lp;
  lp.add_var("rho", 1.0);
  lp.add_var("nu", 0.0, 0.0);
  for (size_t j = 0; j < bases.size(); ++j) {
    const BasisTable& b = bases[j];
    const InducedCost& f = fs[j];
    for (int u = 0; u <= n; ++u)
      for (int v = 0; v <= n; ++v) {
        if (u == 0 && v == 0) continue;
        double fc = (u + v <= n)
                        ? f.at(u) * u - f.at(u + 1) * v
                        : f.at(u) * (n - v) - f.at(u + 1) * (n - u);
        lp.add_constraint({-b.at(u) * u, fc}, Relation::Ge, -b.at(v) * v,
                          "j=" + std::to_string(j) + ",u=" + std::to_string(u) +
                              ",v=" + std::to_string(v));
      }
  }
  return finish(lp, tol_feas);
}

}  // namespace tollforge
