#pragma once

#include <cstdint>
#include <vector>

#include "tollforge/basis.hpp"

namespace tollforge {

// Best load-independent tolls: one surcharge per basis, found by a joint LP
// over (rho, nu) after substituting the per-basis surcharge (1-nu)*b_j(1)/nu.
struct ConstTollDesign {
  double rho_star = 0.0;
  double nu_star = 0.0;
  double poa = 0.0;
  std::vector<double> tau;    // constant toll per basis: (1/nu - 1) b_j(1)
  std::vector<double> sigma;  // (1 - nu) b_j(1)
};

ConstTollDesign const_design(const std::vector<BasisTable>& bases, int n,
                             double tol_feas = 1e-9);

// Exact limiting efficiency of the best constant toll for b(x) = x^d,
// 3 <= d <= 6, as an (unreduced) integer fraction.
struct RationalPoa {
  long long u_bar = 0;
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / den; }
};

RationalPoa const_closed_form(int d);

// Degree-2 special case: for alpha*x^2 + beta*x + gamma the best constant
// toll is 3*alpha and the limiting efficiency loss is exactly 16/3.
struct ConstD2 {
  double toll = 0.0;
  double poa = 16.0 / 3.0;
};

ConstD2 const_d2_closed_form(double alpha, double beta, double gamma);

}  // namespace tollforge
