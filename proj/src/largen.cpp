#include "tollforge/largen.hpp"

#include <cmath>

#include "tollforge/design.hpp"
#include "tollforge/lp.hpp"

namespace tollforge {

ExtendedDesign solve_extended(int d, int n_bar, double tol_feas) {
  if (d < 1) throw ValidationError("extension needs degree d >= 1");
  if (n_bar < 2 || n_bar % 2 != 0)
    throw ValidationError("window size n_bar must be even and >= 2");
  const int n = n_bar;
  const int half = n_bar / 2;
  BasisTable b = monomial(d, n);

  // obj_f_half switches the objective from rho to f(n_bar/2); rho_floor then
  // pins rho near its optimum so the re-solve picks, among the optimal
  // designs, the one with the largest seam value (it yields the strongest
  // tail certificate).
  auto build = [&](bool obj_f_half, double rho_floor) {
    LinearProgram lp;
    for (int x = 1; x <= n; ++x)
      lp.add_var("f" + std::to_string(x), obj_f_half && x == half ? 1.0 : 0.0);
    lp.add_var("rho", obj_f_half ? 0.0 : 1.0);
    for (int u = 0; u <= n; ++u)
      for (int v = 0; v <= n; ++v) {
        if (u == 0 && v == 0) continue;
        std::vector<double> a(n + 1, 0.0);
        double cu = (u + v <= n) ? u : n - v;
        double cu1 = (u + v <= n) ? v : n - u;
        if (u >= 1) a[u - 1] += cu;
        if (u + 1 <= n) a[u] -= cu1;
        a[n] = -b.at(u) * u;
        lp.add_constraint(std::move(a), Relation::Ge, -b.at(v) * v,
                          "u=" + std::to_string(u) + ",v=" + std::to_string(v));
      }
    for (int u = 1; u <= n; ++u) {  // cap: f(u) <= u^d
      std::vector<double> a(n + 1, 0.0);
      a[u - 1] = -1.0;
      lp.add_constraint(std::move(a), Relation::Ge, -b.at(u),
                        "cap,u=" + std::to_string(u));
    }
    for (int u = 2; u <= n; ++u) {  // monotone head
      std::vector<double> a(n + 1, 0.0);
      a[u - 1] = 1.0;
      a[u - 2] = -1.0;
      lp.add_constraint(std::move(a), Relation::Ge, 0.0,
                        "mono,u=" + std::to_string(u));
    }
    if (obj_f_half) {
      std::vector<double> a(n + 1, 0.0);
      a[n] = 1.0;
      lp.add_constraint(std::move(a), Relation::Ge, rho_floor, "rho_floor");
    }
    return lp;
  };

  LpSolution sol = lp_solve(build(false, 0.0), tol_feas);
  if (sol.status != LpStatus::Optimal)
    throw NumericalFailure("windowed extension program did not solve");

  ExtendedDesign e;
  e.d = d;
  e.n_bar = n_bar;
  e.rho_opt = sol.primal[n];
  if (e.rho_opt <= 1e-12) throw UnboundedPoa("windowed program gives rho* <= 0");

  LpSolution sol2 = lp_solve(build(true, e.rho_opt - 1e-11), tol_feas);
  if (sol2.status != LpStatus::Optimal)
    throw NumericalFailure("windowed extension re-solve did not solve");

  e.f_head.assign(sol2.primal.begin(), sol2.primal.begin() + n);
  e.beta_ext = e.f_head[half - 1] / std::pow(static_cast<double>(half), d);
  return e;
}

double extended_f(const ExtendedDesign& e, long long x) {
  if (x <= 0) return 0.0;
  if (x <= e.n_bar / 2) return e.f_head[x - 1];
  return e.beta_ext * std::pow(static_cast<double>(x), e.d);
}

double rho_infty(const ExtendedDesign& e) {
  double d = e.d;
  double tail = e.beta_ext -
                d * std::pow(1.0 + 2.0 / e.n_bar, d + 1.0) *
                    std::pow(e.beta_ext / (d + 1.0), 1.0 + 1.0 / d);
  return std::min(e.rho_opt, tail);
}

Sandwich sandwich(int d, int n_bar, double tol_feas) {
  ExtendedDesign e = solve_extended(d, n_bar, tol_feas);
  double ri = rho_infty(e);
  if (ri <= 0.0)
    throw NumericalFailure("extension certificate degenerates (rho_infty <= 0)");
  return {1.0 / e.rho_opt, 1.0 / ri};
}

double gamma_for_nonneg(const ExtendedDesign& e, long long x_max) {
  double gamma = 0.0;
  if (e.beta_ext <= 0.0)
    throw NoFiniteGamma("polynomial tail vanishes while x^d does not");
  gamma = 1.0 / e.beta_ext;  // covers every x past the head analytically
  long long head_end = std::min<long long>(x_max, e.n_bar / 2);
  for (long long x = 1; x <= head_end; ++x) {
    double fx = extended_f(e, x);
    double xd = std::pow(static_cast<double>(x), e.d);
    if (fx <= 0.0) {
      if (xd > 0.0)
        throw NoFiniteGamma("extension vanishes at x=" + std::to_string(x));
      continue;
    }
    gamma = std::max(gamma, xd / fx);
  }
  return gamma;
}

}  // namespace tollforge
