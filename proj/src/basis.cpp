#include "tollforge/basis.hpp"

#include <cmath>

namespace tollforge {

BasisTable monomial(int degree, int n) {
  if (degree < 0) throw ValidationError("monomial degree must be >= 0");
  if (n < 1) throw ValidationError("monomial needs n >= 1");
  BasisTable b;
  b.name = degree == 0 ? "1" : (degree == 1 ? "x" : "x^" + std::to_string(degree));
  b.n = n;
  b.values.resize(n);
  constexpr double kExactIntLimit = 9.0e15;  // doubles are exact below 2^53
  for (int x = 1; x <= n; ++x) {
    double v = std::pow(static_cast<double>(x), degree);
    if (v > kExactIntLimit)
      throw Overflow("monomial value " + std::to_string(x) + "^" +
                     std::to_string(degree) + " exceeds exact integer range");
    b.values[x - 1] = v;
  }
  return b;
}

BasisTable basis_from_values(const std::string& name,
                             std::vector<double> values) {
  if (values.empty()) throw ValidationError("basis table must be nonempty");
  BasisTable b;
  b.name = name;
  b.n = static_cast<int>(values.size());
  b.values = std::move(values);
  return b;
}

BasisClassification classify(const BasisTable& b) {
  BasisClassification c;
  double scale = 0.0;
  for (double v : b.values) scale = std::max(scale, std::abs(v));
  const double tol = 1e-12 * std::max(1.0, scale);

  c.is_positive = true;
  for (double v : b.values)
    if (!(v > 0.0)) c.is_positive = false;

  c.is_nondecreasing = true;
  c.is_strictly_increasing = true;
  for (int x = 1; x < b.n; ++x) {
    double d = b.at(x + 1) - b.at(x);
    if (d < -tol) c.is_nondecreasing = false;
    if (d <= tol) c.is_strictly_increasing = false;
  }

  c.is_discrete_convex = true;  // on the tabulated domain 1..n
  for (int x = 1; x + 2 <= b.n; ++x)
    if (b.at(x + 2) - b.at(x + 1) < b.at(x + 1) - b.at(x) - tol)
      c.is_discrete_convex = false;

  c.is_xb_strictly_convex = true;  // g(x) = x*b(x) with g(0) = 0
  auto g = [&](int x) { return x == 0 ? 0.0 : x * b.at(x); };
  for (int x = 1; x + 1 <= b.n; ++x)
    if (g(x + 1) - g(x) <= g(x) - g(x - 1) + tol)
      c.is_xb_strictly_convex = false;

  bool top_increase = b.n >= 2 ? b.at(b.n) > b.at(b.n - 1) : b.at(1) > 0.0;
  c.monotone_program_ok =
      c.is_positive && ((c.is_discrete_convex && c.is_strictly_increasing) ||
                        (c.is_xb_strictly_convex && top_increase));
  return c;
}

BasisTable basis_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ValidationError("basis json needs a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  std::string name = j.value("name", "");
  if (kind == "monomial") {
    int n = j.at("n").get<int>();
    int degree = j.at("degree").get<int>();
    BasisTable b = monomial(degree, n);
    if (!name.empty()) b.name = name;
    return b;
  }
  if (kind == "table") {
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(values.size()))
      throw LengthMismatch("basis json: n disagrees with values length");
    return basis_from_values(name.empty() ? "table" : name, std::move(values));
  }
  throw ValidationError("unknown basis kind: " + kind);
}

nlohmann::json basis_to_json(const BasisTable& b) {
  return {{"name", b.name}, {"n", b.n}, {"kind", "table"}, {"values", b.values}};
}

}  // namespace tollforge
