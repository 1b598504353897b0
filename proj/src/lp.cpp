#include "tollforge/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

// The LPs here have few variables and many inequality rows, so we solve the
// standard-form dual (one nonnegative dual variable per row, one equation per
// primal variable) with a revised simplex.  At optimality the simplex
// multipliers are a primal vertex and the basic values are the row duals.

namespace tollforge {
namespace {

struct Row {
  std::vector<double> a;  // scaled coefficients
  double b = 0.0;         // scaled rhs
  double scale = 1.0;     // divisor applied to the original row
  int orig = -1;          // constraint index, -1 for a variable bound
  double sign = 1.0;      // +1 if stored as-is, -1 if the row was negated
};

struct StdFormResult {
  enum { kOptimal, kInfeasible, kUnbounded } status = kInfeasible;
  std::vector<int> basis;
  Eigen::VectorXd basic_values;
  Eigen::VectorXd pi;  // multipliers of the equations, phase-2 costs
};

// min cost'lambda  s.t.  A lambda = rhs, lambda >= 0.
StdFormResult simplex_standard(const Eigen::MatrixXd& A_in,
                               Eigen::VectorXd rhs,
                               const Eigen::VectorXd& cost) {
  const int nv = static_cast<int>(A_in.rows());
  const int M = static_cast<int>(A_in.cols());
  const double tolr = 1e-9;
  const double tolpiv = 1e-9;

  Eigen::VectorXd rowsign = Eigen::VectorXd::Ones(nv);
  for (int k = 0; k < nv; ++k)
    if (rhs[k] < 0) {
      rowsign[k] = -1.0;
      rhs[k] = -rhs[k];
    }
  Eigen::MatrixXd A = rowsign.asDiagonal() * A_in;

  std::vector<int> basis(nv);
  for (int k = 0; k < nv; ++k) basis[k] = M + k;  // artificials
  std::vector<char> in_basis(M + nv, 0);
  for (int k = 0; k < nv; ++k) in_basis[M + k] = 1;

  Eigen::VectorXd basic = rhs;
  Eigen::VectorXd pi = Eigen::VectorXd::Zero(nv);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;

  auto refactor = [&]() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nv, nv);
    for (int k = 0; k < nv; ++k) {
      if (basis[k] < M)
        B.col(k) = A.col(basis[k]);
      else
        B(basis[k] - M, k) = 1.0;
    }
    lu.compute(B);
  };

  const long max_iter = 20000 + 20L * M;
  long iter = 0;
  bool bland = false;
  int stall = 0;
  double last_obj = std::numeric_limits<double>::infinity();

  for (int phase = 1; phase <= 2; ++phase) {
    Eigen::VectorXd phase_cost(M);
    if (phase == 1)
      phase_cost.setZero();
    else
      phase_cost = cost;

    for (;;) {
      if (++iter > max_iter)
        throw NumericalFailure("simplex iteration limit exceeded");
      refactor();
      basic = lu.solve(rhs);

      Eigen::VectorXd cB(nv);
      for (int k = 0; k < nv; ++k)
        cB[k] = (basis[k] < M) ? phase_cost[basis[k]]
                               : (phase == 1 ? 1.0 : 0.0);
      pi = lu.transpose().solve(cB);
      double obj = cB.dot(basic);
      if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
        stall = 0;
      } else if (++stall > 200) {
        bland = true;  // degenerate stall: fall back to Bland's rule for good
      }
      last_obj = obj;

      Eigen::VectorXd red = phase_cost - A.transpose() * pi;
      int enter = -1;
      double best = -tolr;
      for (int i = 0; i < M; ++i) {
        if (in_basis[i]) continue;
        if (red[i] < -tolr) {
          if (bland) {
            enter = i;
            break;
          }
          if (red[i] < best) {
            best = red[i];
            enter = i;
          }
        }
      }
      if (enter < 0) break;  // phase optimal

      Eigen::VectorXd dir = lu.solve(A.col(enter));
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int k = 0; k < nv; ++k) {
        if (dir[k] > tolpiv) {
          double ratio = std::max(basic[k], 0.0) / dir[k];
          bool better = ratio < best_ratio - 1e-12;
          bool tie = std::abs(ratio - best_ratio) <= 1e-12;
          if (tie && leave >= 0) {
            // lowest-index rule; artificials count as the largest indices so
            // they are preferred out when Dantzig pricing is active
            bool cand_art = basis[k] >= M, cur_art = basis[leave] >= M;
            if (bland)
              better = basis[k] < basis[leave];
            else
              better = (cand_art && !cur_art) ||
                       (cand_art == cur_art && basis[k] < basis[leave]);
          }
          if (better || leave < 0) {
            best_ratio = ratio;
            leave = k;
          }
        }
      }
      if (leave < 0) {
        if (phase == 1)
          throw NumericalFailure("phase-1 objective unbounded");
        StdFormResult r;
        r.status = StdFormResult::kUnbounded;
        return r;
      }
      in_basis[basis[leave]] = 0;
      in_basis[enter] = 1;
      basis[leave] = enter;
    }

    if (phase == 1) {
      double art_sum = 0.0;
      for (int k = 0; k < nv; ++k)
        if (basis[k] >= M) art_sum += std::abs(basic[k]);
      if (art_sum > 1e-7) {
        StdFormResult r;
        r.status = StdFormResult::kInfeasible;
        return r;
      }
      // Drive out basic artificials where a real pivot exists; rows with no
      // real pivot are redundant equations and the artificial stays at zero.
      for (int k = 0; k < nv; ++k) {
        if (basis[k] < M) continue;
        refactor();
        Eigen::VectorXd w = lu.transpose().solve(Eigen::VectorXd::Unit(nv, k));
        for (int i = 0; i < M; ++i) {
          if (in_basis[i]) continue;
          if (std::abs(w.dot(A.col(i))) > 1e-7) {
            in_basis[basis[k]] = 0;
            in_basis[i] = 1;
            basis[k] = i;
            break;
          }
        }
      }
      last_obj = std::numeric_limits<double>::infinity();
      stall = 0;
    }
  }

  for (int k = 0; k < nv; ++k)
    if (basis[k] >= M && std::abs(basic[k]) > 1e-7)
      throw NumericalFailure("artificial variable stuck at nonzero level");

  StdFormResult r;
  r.status = StdFormResult::kOptimal;
  r.basis = basis;
  r.basic_values = basic;
  // Undo the phase-1 sign flips so pi refers to the unflipped equations.
  r.pi = rowsign.asDiagonal() * pi;
  return r;
}

LpSolution lp_solve_impl(const LinearProgram& lp, double tol_feas, int depth) {
  const int nvars = static_cast<int>(lp.objective.size());
  if (lp.var_names.size() != static_cast<size_t>(nvars))
    throw LengthMismatch("var_names/objective size mismatch");
  if (!lp.lower_bounds.empty() &&
      lp.lower_bounds.size() != static_cast<size_t>(nvars))
    throw LengthMismatch("lower_bounds size mismatch");

  std::vector<Row> rows;
  rows.reserve(2 * lp.constraints.size() + nvars);
  auto push_row = [&](const std::vector<double>& a, double b, int orig,
                      double sign) {
    Row r;
    r.a = a;
    r.b = b;
    r.orig = orig;
    r.sign = sign;
    double s = 0.0;
    for (double v : r.a) s = std::max(s, std::abs(v));
    if (s == 0.0) {
      if (b > tol_feas) {
        r.scale = -1.0;  // marker: trivially infeasible 0 >= b with b > 0
        rows.push_back(r);
      }
      return;  // vacuous row
    }
    r.scale = s;
    for (double& v : r.a) v /= s;
    r.b /= s;
    rows.push_back(r);
  };

  for (size_t ci = 0; ci < lp.constraints.size(); ++ci) {
    const Constraint& c = lp.constraints[ci];
    if (c.coeffs.size() != static_cast<size_t>(nvars))
      throw LengthMismatch("constraint width mismatch: " + c.label);
    std::vector<double> neg(c.coeffs.size());
    for (size_t j = 0; j < neg.size(); ++j) neg[j] = -c.coeffs[j];
    switch (c.rel) {
      case Relation::Ge:
        push_row(c.coeffs, c.rhs, static_cast<int>(ci), 1.0);
        break;
      case Relation::Le:
        push_row(neg, -c.rhs, static_cast<int>(ci), -1.0);
        break;
      case Relation::Eq:
        push_row(c.coeffs, c.rhs, static_cast<int>(ci), 1.0);
        push_row(neg, -c.rhs, static_cast<int>(ci), -1.0);
        break;
    }
  }
  if (!lp.lower_bounds.empty()) {
    for (int j = 0; j < nvars; ++j) {
      if (!lp.lower_bounds[j]) continue;
      std::vector<double> e(nvars, 0.0);
      e[j] = 1.0;
      push_row(e, *lp.lower_bounds[j], -1, 1.0);
    }
  }
  for (const Row& r : rows)
    if (r.scale < 0.0) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      sol.objective_value = std::numeric_limits<double>::quiet_NaN();
      return sol;
    }

  const int M = static_cast<int>(rows.size());

  // Column equilibration on top of the row scaling above.
  std::vector<double> cs(nvars, 0.0);
  for (const Row& r : rows)
    for (int j = 0; j < nvars; ++j) cs[j] = std::max(cs[j], std::abs(r.a[j]));
  for (double& v : cs)
    if (v == 0.0) v = 1.0;

  Eigen::MatrixXd A(nvars, M);
  Eigen::VectorXd h(M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < nvars; ++j) A(j, i) = rows[i].a[j] / cs[j];
    h[i] = rows[i].b;
  }
  Eigen::VectorXd eq_rhs(nvars);  // equations: sum_i lambda_i a_i = -objective
  for (int j = 0; j < nvars; ++j) eq_rhs[j] = -lp.objective[j] / cs[j];
  Eigen::VectorXd dual_cost = -h;  // min -h'lambda  ==  max h'lambda

  StdFormResult res = simplex_standard(A, eq_rhs, dual_cost);

  LpSolution sol;
  if (res.status == StdFormResult::kUnbounded) {
    // Dual objective unbounded -> the primal has no feasible point.
    sol.status = LpStatus::Infeasible;
    sol.objective_value = std::numeric_limits<double>::quiet_NaN();
    return sol;
  }
  if (res.status == StdFormResult::kInfeasible) {
    // Dual infeasible: the primal is unbounded if feasible at all.  Probe
    // feasibility with a bounded max-slack LP over the same rows.
    if (depth > 0)
      throw NumericalFailure("feasibility probe did not converge");
    LinearProgram probe;
    for (int j = 0; j < nvars; ++j) probe.add_var(lp.var_names[j], 0.0);
    int t = probe.add_var("t", 1.0);
    for (const Row& r : rows) {
      std::vector<double> a(nvars + 1, 0.0);
      for (int j = 0; j < nvars; ++j) a[j] = r.a[j];
      a[t] = -1.0;
      probe.add_constraint(std::move(a), Relation::Ge, r.b);
    }
    {
      std::vector<double> a(nvars + 1, 0.0);
      a[t] = 1.0;
      probe.add_constraint(std::move(a), Relation::Le, 1.0);
    }
    LpSolution ps = lp_solve_impl(probe, tol_feas, depth + 1);
    if (ps.status != LpStatus::Optimal)
      throw NumericalFailure("feasibility probe not optimal");
    sol.status = (ps.objective_value >= -1e-7) ? LpStatus::Unbounded
                                               : LpStatus::Infeasible;
    sol.objective_value = sol.status == LpStatus::Unbounded
                              ? std::numeric_limits<double>::infinity()
                              : std::numeric_limits<double>::quiet_NaN();
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.primal.resize(nvars);
  for (int j = 0; j < nvars; ++j) sol.primal[j] = -res.pi[j] / cs[j];
  sol.objective_value = 0.0;
  for (int j = 0; j < nvars; ++j)
    sol.objective_value += lp.objective[j] * sol.primal[j];

  sol.duals.assign(lp.constraints.size(), 0.0);
  for (int k = 0; k < nvars; ++k) {
    int i = res.basis[k];
    if (i >= M) continue;
    const Row& r = rows[i];
    if (r.orig < 0) continue;
    sol.duals[r.orig] += r.sign * res.basic_values[k] / r.scale;
  }

  // Verify the vertex against every (row-scaled) constraint.
  double guard = std::max(100.0 * tol_feas, 1e-7);
  for (const Row& r : rows) {
    double lhs = 0.0;
    for (int j = 0; j < nvars; ++j) lhs += r.a[j] * sol.primal[j];
    if (lhs - r.b < -guard)
      throw NumericalFailure("optimal vertex violates a constraint");
  }
  return sol;
}

}  // namespace

LpSolution lp_solve(const LinearProgram& lp, double tol_feas) {
  return lp_solve_impl(lp, tol_feas, 0);
}

}  // namespace tollforge
