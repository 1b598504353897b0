#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tollforge/errors.hpp"

namespace tollforge {

enum class Relation { Ge, Le, Eq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct Constraint {
  std::vector<double> coeffs;  // one per variable
  Relation rel = Relation::Ge;
  double rhs = 0.0;
  std::string label;
};

// A small dense LP: maximize objective'x subject to row constraints and
// optional per-variable lower bounds (no entry / nullopt = free variable).
struct LinearProgram {
  std::vector<std::string> var_names;
  std::vector<double> objective;
  std::vector<std::optional<double>> lower_bounds;
  std::vector<Constraint> constraints;

  int add_var(const std::string& name, double obj,
              std::optional<double> lb = std::nullopt) {
    var_names.push_back(name);
    objective.push_back(obj);
    lower_bounds.push_back(lb);
    return static_cast<int>(var_names.size()) - 1;
  }
  void add_constraint(std::vector<double> coeffs, Relation rel, double rhs,
                      std::string label = {}) {
    constraints.push_back({std::move(coeffs), rel, rhs, std::move(label)});
  }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> primal;       // empty unless Optimal
  double objective_value = 0.0;
  // One multiplier per constraint (lower bounds carry no reported dual).
  // Sign convention: objective + sum_i duals[i] * coeffs_i = 0 at optimality,
  // with duals[i] >= 0 for Ge rows, <= 0 for Le rows, free for Eq rows.  As a
  // consequence objective_value = -sum_i duals[i] * rhs_i whenever no variable
  // lower bound is active.
  std::vector<double> duals;
};

// Deterministic dense simplex (Dantzig pricing with a permanent switch to
// Bland's rule after a degenerate stall; lowest-index tie-breaks throughout).
// tol_feas is interpreted relative to each row's largest coefficient.
// Throws NumericalFailure when the solver cannot certify a result.
LpSolution lp_solve(const LinearProgram& lp, double tol_feas = 1e-9);

}  // namespace tollforge
