#pragma once

#include <string>
#include <vector>

#include "tollforge/basis.hpp"
#include "tollforge/poa.hpp"

namespace tollforge {

enum class DesignMethod { FullLp, SimplifiedLp, Recursion };

std::string method_name(DesignMethod m);
DesignMethod method_from_name(const std::string& s);

// Per-basis optimum: the induced cost f* maximizing the efficiency value rho,
// with the toll tau*(x) = f*(x) - b(x).
struct OptimalDesign {
  double rho_star = 0.0;
  std::vector<double> f_star;    // f*(1..n)
  std::vector<double> tau_star;  // tau*(1..n)
  DesignMethod method = DesignMethod::FullLp;
};

// Joint LP over (f, rho) with one row per triplet in the full triplet set.
OptimalDesign design_full(const BasisTable& b, int n, double tol_feas = 1e-9);

// Coarser (u,v)-indexed design program; valid when the basis passes
// classify().monotone_program_ok (else HypothesisViolation).
OptimalDesign design_simplified(const BasisTable& b, int n,
                                double tol_feas = 1e-9);

// f_rho from the forward recursion at a fixed rho (f(1) = b(1), then a
// minimum over v of an affine update), ties broken toward the smallest v.
std::vector<double> design_recursion_f(const BasisTable& b, int n, double rho);

// rho* as the fixed point of the recursion's terminal condition (bisection to
// 1e-12).  Requires the same hypotheses as design_simplified.
double solve_rho_star(const BasisTable& b, int n);

OptimalDesign design_recursion(const BasisTable& b, int n);
OptimalDesign design(const BasisTable& b, int n, DesignMethod m,
                     double tol_feas = 1e-9);

// A full mechanism: one toll table per basis, plus the worst-case efficiency
// of the induced costs over games built from those bases.
struct Mechanism {
  int n = 0;
  std::vector<BasisTable> bases;
  std::vector<std::vector<double>> tolls;  // tolls[j][x-1]
  double poa = 0.0;
  std::string method;
};

// Toll table of a resource whose cost is a nonnegative combination of the
// mechanism's bases: tolls are combined with the same coefficients.
std::vector<double> combine(const Mechanism& m,
                            const std::vector<double>& alphas);

// Nonnegative tolls with the same guarantee: f*(x)*poa - b(x).  Entries must
// come out >= -1e-9 (tiny negatives are reported as-is); anything below -1e-6
// raises NegativityViolation.
std::vector<double> nonneg_variant(const BasisTable& b,
                                   const OptimalDesign& d, double poa);

Mechanism design_mechanism(const std::vector<BasisTable>& bases, int n,
                           DesignMethod m, bool nonneg, double tol_feas = 1e-9);

nlohmann::json mechanism_to_json(const Mechanism& m);
Mechanism mechanism_from_json(const nlohmann::json& j);

}  // namespace tollforge
