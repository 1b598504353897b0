#pragma once

#include <vector>

#include "tollforge/basis.hpp"

namespace tollforge {

// Optimal tolls for b(x) = x^d under an unbounded number of players: solve a
// finite window of size n_bar with the extra caps f(u) <= u^d and
// monotonicity, then extend the head by a polynomial tail.
struct ExtendedDesign {
  int d = 1;
  int n_bar = 0;
  std::vector<double> f_head;  // f(1..n_bar) from the windowed program
  double rho_opt = 0.0;        // optimal value of the windowed program
  double beta_ext = 0.0;       // tail: f(x) = beta_ext * x^d for x > n_bar/2
};

ExtendedDesign solve_extended(int d, int n_bar, double tol_feas = 1e-9);

// f_infty: head values up to n_bar/2, polynomial tail beyond.
double extended_f(const ExtendedDesign& e, long long x);

// Efficiency certified for every number of players by the extension.
double rho_infty(const ExtendedDesign& e);

struct Sandwich {
  double lower = 0.0;  // 1/rho_opt: no mechanism does better in the limit
  double upper = 0.0;  // 1/rho_infty: guarantee of the extended tolls
};

Sandwich sandwich(int d, int n_bar, double tol_feas = 1e-9);

// Smallest gamma so that gamma*f_infty(x) - x^d >= 0 for 1 <= x <= x_max and
// for the whole polynomial tail.  Throws NoFiniteGamma when the extension
// vanishes where x^d does not.
double gamma_for_nonneg(const ExtendedDesign& e, long long x_max);

}  // namespace tollforge
