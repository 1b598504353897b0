#include "tollforge/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tollforge {
namespace {

void validate_basis(const BasisTable& b, int n) {
  if (n < 1) throw ValidationError("need n >= 1");
  if (b.n < n) throw LengthMismatch("basis " + b.name + " tabulated short of n");
  if (!classify(b).is_positive)
    throw HypothesisViolation("basis " + b.name + " is not positive on 1..n");
}

OptimalDesign finish_design(const BasisTable& b, int n, const LinearProgram& lp,
                            DesignMethod m, double tol_feas) {
  LpSolution sol = lp_solve(lp, tol_feas);
  if (sol.status != LpStatus::Optimal)
    throw NumericalFailure("design program did not solve to optimality");
  OptimalDesign d;
  d.method = m;
  d.rho_star = sol.primal[n];
  if (d.rho_star <= 1e-12)
    throw UnboundedPoa("design program gives rho* <= 0");
  d.f_star.assign(sol.primal.begin(), sol.primal.begin() + n);
  d.tau_star.resize(n);
  for (int x = 1; x <= n; ++x) d.tau_star[x - 1] = d.f_star[x - 1] - b.at(x);
  return d;
}

void require_monotone_program(const BasisTable& b) {
  if (!classify(b).monotone_program_ok)
    throw HypothesisViolation(
        "basis " + b.name +
        " fails the convexity/monotonicity hypothesis of the reduced program");
}

}  // namespace

std::string method_name(DesignMethod m) {
  switch (m) {
    case DesignMethod::FullLp: return "full";
    case DesignMethod::SimplifiedLp: return "simplified";
    case DesignMethod::Recursion: return "recursion";
  }
  return "full";
}

DesignMethod method_from_name(const std::string& s) {
  if (s == "full") return DesignMethod::FullLp;
  if (s == "simplified") return DesignMethod::SimplifiedLp;
  if (s == "recursion") return DesignMethod::Recursion;
  throw ValidationError("unknown design method: " + s);
}

OptimalDesign design_full(const BasisTable& b, int n, double tol_feas) {
  validate_basis(b, n);
  LinearProgram lp;
  for (int x = 1; x <= n; ++x)
    lp.add_var("f" + std::to_string(x), 0.0);
  lp.add_var("rho", 1.0);
  for (const Triplet& t : triplet_set(n)) {
    std::vector<double> a(n + 1, 0.0);
    int uy = t.x + t.y;
    if (uy >= 1) a[uy - 1] += t.y;
    if (uy + 1 <= n) a[uy] -= t.z;
    a[n] = -b.at(uy) * uy;
    lp.add_constraint(std::move(a), Relation::Ge, -b.at(t.x + t.z) * (t.x + t.z),
                      "x=" + std::to_string(t.x) + ",y=" + std::to_string(t.y) +
                          ",z=" + std::to_string(t.z));
  }
  return finish_design(b, n, lp, DesignMethod::FullLp, tol_feas);
}

OptimalDesign design_simplified(const BasisTable& b, int n, double tol_feas) {
  validate_basis(b, n);
  require_monotone_program(b);
  LinearProgram lp;
  for (int x = 1; x <= n; ++x)
    lp.add_var("f" + std::to_string(x), 0.0);
  lp.add_var("rho", 1.0);
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
  return finish_design(b, n, lp, DesignMethod::SimplifiedLp, tol_feas);
}

std::vector<double> design_recursion_f(const BasisTable& b, int n, double rho) {
  validate_basis(b, n);
  std::vector<double> f(n);
  f[0] = b.at(1);
  for (int u = 1; u < n; ++u) {
    double best = 0.0;
    bool have = false;
    for (int v = 1; v <= n; ++v) {
      double denom = std::min(v, n - u);  // >= 1 since u <= n-1
      double beta = std::min(u, n - v) / denom;
      double gamma = b.at(v) * v / denom;
      double delta = b.at(u) * u / denom;
      double cand = beta * f[u - 1] + gamma - delta * rho;
      if (!have || cand < best) {  // ties keep the smallest v
        best = cand;
        have = true;
      }
    }
    f[u] = best;
  }
  return f;
}

double solve_rho_star(const BasisTable& b, int n) {
  validate_basis(b, n);
  require_monotone_program(b);
  auto excess = [&](double rho) {
    std::vector<double> f = design_recursion_f(b, n, rho);
    double best = std::numeric_limits<double>::infinity();
    for (int v = 0; v <= n; ++v)
      best = std::min(best, b.at(v) * v + (n - v) * f[n - 1]);
    return best / (n * b.at(n)) - rho;
  };
  if (excess(0.0) < 0.0)
    throw NoFixedPoint("terminal condition negative already at rho = 0");
  if (excess(1.0) >= 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (excess(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  // Return the certified-from-below endpoint: the recursion stays feasible
  // for any rho <= rho*, while even a hair above it the tail of f degenerates.
  return lo;
}

OptimalDesign design_recursion(const BasisTable& b, int n) {
  OptimalDesign d;
  d.method = DesignMethod::Recursion;
  d.rho_star = solve_rho_star(b, n);
  d.f_star = design_recursion_f(b, n, d.rho_star);
  d.tau_star.resize(n);
  for (int x = 1; x <= n; ++x) d.tau_star[x - 1] = d.f_star[x - 1] - b.at(x);
  return d;
}

OptimalDesign design(const BasisTable& b, int n, DesignMethod m,
                     double tol_feas) {
  switch (m) {
    case DesignMethod::FullLp: return design_full(b, n, tol_feas);
    case DesignMethod::SimplifiedLp: return design_simplified(b, n, tol_feas);
    case DesignMethod::Recursion: return design_recursion(b, n);
  }
  throw ValidationError("unknown design method");
}

std::vector<double> combine(const Mechanism& m,
                            const std::vector<double>& alphas) {
  if (alphas.size() != m.bases.size())
    throw LengthMismatch("one coefficient per basis required");
  for (double a : alphas)
    if (a < 0.0) throw ValidationError("combination coefficients must be >= 0");
  std::vector<double> out(m.n, 0.0);
  for (size_t j = 0; j < alphas.size(); ++j)
    for (int x = 0; x < m.n; ++x) out[x] += alphas[j] * m.tolls[j][x];
  return out;
}

std::vector<double> nonneg_variant(const BasisTable& b, const OptimalDesign& d,
                                   double poa) {
  std::vector<double> tau(d.f_star.size());
  for (size_t i = 0; i < tau.size(); ++i) {
    tau[i] = d.f_star[i] * poa - b.at(static_cast<int>(i) + 1);
    if (tau[i] < -1e-6)
      throw NegativityViolation("scaled toll below -1e-6 at x=" +
                                std::to_string(i + 1));
  }
  return tau;
}

Mechanism design_mechanism(const std::vector<BasisTable>& bases, int n,
                           DesignMethod m, bool nonneg, double tol_feas) {
  if (bases.empty()) throw ValidationError("need at least one basis");
  Mechanism mech;
  mech.n = n;
  mech.bases = bases;
  mech.method = method_name(m);
  double poa = 1.0;
  std::vector<OptimalDesign> designs;
  designs.reserve(bases.size());
  for (const BasisTable& b : bases) {
    designs.push_back(design(b, n, m, tol_feas));
    poa = std::max(poa, 1.0 / designs.back().rho_star);
  }
  mech.poa = poa;
  for (size_t j = 0; j < bases.size(); ++j)
    mech.tolls.push_back(nonneg ? nonneg_variant(bases[j], designs[j], poa)
                                : designs[j].tau_star);
  return mech;
}

nlohmann::json mechanism_to_json(const Mechanism& m) {
  nlohmann::json bases = nlohmann::json::array();
  for (const BasisTable& b : m.bases) bases.push_back(basis_to_json(b));
  return {{"n", m.n},
          {"bases", bases},
          {"tolls", m.tolls},
          {"poa", m.poa},
          {"method", m.method}};
}

Mechanism mechanism_from_json(const nlohmann::json& j) {
  Mechanism m;
  m.n = j.at("n").get<int>();
  for (const auto& bj : j.at("bases")) m.bases.push_back(basis_from_json(bj));
  m.tolls = j.at("tolls").get<std::vector<std::vector<double>>>();
  m.poa = j.value("poa", 0.0);
  m.method = j.value("method", "full");
  if (m.tolls.size() != m.bases.size())
    throw LengthMismatch("mechanism json: one toll table per basis required");
  for (const auto& t : m.tolls)
    if (t.size() != static_cast<size_t>(m.n))
      throw LengthMismatch("mechanism json: toll table length != n");
  return m;
}

}  // namespace tollforge
