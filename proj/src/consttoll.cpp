#include "tollforge/consttoll.hpp"

#include <cmath>

#include "tollforge/lp.hpp"

namespace tollforge {

ConstTollDesign const_design(const std::vector<BasisTable>& bases, int n,
                             double tol_feas) {
  if (n < 1) throw ValidationError("need n >= 1");
  if (bases.empty()) throw ValidationError("need at least one basis");
  for (const BasisTable& b : bases) {
    if (b.n < n) throw LengthMismatch("basis " + b.name + " tabulated short of n");
    BasisClassification c = classify(b);
    // Convexity of x*b(x) is enough when b itself is not convex (e.g. sqrt).
    if (!(c.is_positive && c.is_nondecreasing &&
          (c.is_discrete_convex || c.is_xb_strictly_convex)))
      throw HypothesisViolation("basis " + b.name +
                                " must be positive, nondecreasing and convex");
  }

  LinearProgram lp;
  lp.add_var("rho", 1.0);
  lp.add_var("nu", 0.0, 0.0);
  {
    lp.add_constraint({0.0, 1.0}, Relation::Le, 1.0, "nu<=1");
  }
  for (size_t j = 0; j < bases.size(); ++j) {
    const BasisTable& b = bases[j];
    auto bn1 = [&](int x) { return x == n + 1 ? 0.0 : b.at(x); };
    auto add_row = [&](int u, int v) {
      double nu_coef =
          (u + v <= n)
              ? b.at(u) * u - bn1(u + 1) * v - b.at(1) * (u - v)
              : b.at(u) * (n - v) - bn1(u + 1) * (n - u) - b.at(1) * (u - v);
      double rhs = -b.at(v) * v - b.at(1) * (u - v);
      lp.add_constraint({-b.at(u) * u, nu_coef}, Relation::Ge, rhs,
                        "j=" + std::to_string(j) + ",u=" + std::to_string(u) +
                            ",v=" + std::to_string(v));
    };
    for (int u = 1; u <= n; ++u)
      for (int v = 0; v <= u; ++v) add_row(u, v);
    add_row(0, 1);
  }

  LpSolution sol = lp_solve(lp, tol_feas);
  if (sol.status != LpStatus::Optimal)
    throw NumericalFailure("constant-toll program did not solve to optimality");

  ConstTollDesign d;
  d.rho_star = sol.primal[0];
  d.nu_star = sol.primal[1];
  if (d.rho_star <= 1e-12) throw UnboundedPoa("constant tolls give rho* <= 0");
  if (d.nu_star <= 1e-12)
    throw DegenerateNu("nu* vanished: constant tolls degenerate here");
  d.poa = 1.0 / d.rho_star;
  for (const BasisTable& b : bases) {
    d.tau.push_back((1.0 / d.nu_star - 1.0) * b.at(1));
    d.sigma.push_back((1.0 - d.nu_star) * b.at(1));
  }
  return d;
}

namespace {

long long ipow(long long base, int e) {
  long long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

RationalPoa const_closed_form(int d) {
  if (d < 3 || d > 6)
    throw ValidationError("closed form covers degrees 3..6 only");
  // u^{d+1} + 1 = (u+1)^d + u has a single positive crossing; bisect, floor.
  auto g = [&](double u) {
    return std::pow(u, d + 1) + 1.0 - std::pow(u + 1.0, d) - u;
  };
  double lo = 1.0, hi = 2.0;
  while (g(hi) < 0.0) hi *= 2.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  long long ub = static_cast<long long>(std::floor(0.5 * (lo + hi)));

  RationalPoa r;
  r.u_bar = ub;
  r.num = ub * ipow(ub + 1, d + 1) - ipow(ub, d + 1) * (ub + ipow(ub + 2, d)) +
          ipow(ub + 1, 2 * d + 1) - ipow(ub + 1, d + 1);
  r.den = ub * (ub + 1) * (ipow(ub + 1, d) - ipow(ub, d)) +
          ipow(ub + 1, d + 1) - ub * ipow(ub + 2, d) - 1;
  return r;
}

ConstD2 const_d2_closed_form(double alpha, double beta, double gamma) {
  if (alpha <= 0.0 || beta < 0.0 || gamma < 0.0)
    throw ValidationError("need alpha > 0 and beta, gamma >= 0");
  ConstD2 r;
  r.toll = 3.0 * alpha;
  return r;
}

}  // namespace tollforge
