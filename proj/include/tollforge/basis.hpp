#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tollforge/errors.hpp"

namespace tollforge {

// A congestion cost function tabulated on loads 1..n, with the conventions
// b(0) = 0 and b(n+1) = 0 used by the constraint generators.
struct BasisTable {
  std::string name;
  int n = 0;
  std::vector<double> values;  // values[x-1] = b(x), x = 1..n

  double at(int x) const {
    if (x == 0 || x == n + 1) return 0.0;
    if (x < 0 || x > n + 1)
      throw ValidationError("basis evaluated outside 0..n+1");
    return values[x - 1];
  }
};

struct BasisClassification {
  bool is_positive = false;            // b(x) > 0 on 1..n
  bool is_nondecreasing = false;
  bool is_strictly_increasing = false;
  bool is_discrete_convex = false;     // first differences of b nondecreasing
  bool is_xb_strictly_convex = false;  // x*b(x) strictly convex, with 0*b(0)=0
  // b admits the monotone (u,v)-indexed efficiency program.
  bool monotone_program_ok = false;
};

BasisTable monomial(int degree, int n);
BasisTable basis_from_values(const std::string& name, std::vector<double> values);
BasisClassification classify(const BasisTable& b);

// JSON form: {"name": str, "n": int, "kind": "monomial", "degree": int}
//         or {"name": str, "n": int, "kind": "table", "values": [..]}
BasisTable basis_from_json(const nlohmann::json& j);
nlohmann::json basis_to_json(const BasisTable& b);

}  // namespace tollforge
