#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tollforge/consttoll.hpp"
#include "tollforge/design.hpp"
#include "tollforge/largen.hpp"
#include "tollforge/margcost.hpp"
#include "tollforge/oracle.hpp"

using nlohmann::json;
using namespace tollforge;

namespace {

int worker_cap() {
  if (const char* env = std::getenv("TOLLFORGE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  return hw >= 1 ? hw : 1;
}

// Run one job per index with at most worker_cap() threads; results are
// assembled by index, so the output order never depends on scheduling.
void parallel_for(int count, const std::function<void(int)>& job) {
  int workers = std::min(worker_cap(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (int i = next++; i < count; i = next++) job(i);
    });
  for (std::thread& t : pool) t.join();
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + out_path);
  out << text;
}

std::vector<BasisTable> monomials_up_to(int d, int n) {
  std::vector<BasisTable> bases;
  for (int j = 0; j <= d; ++j) bases.push_back(monomial(j, n));
  return bases;
}

struct Table1Row {
  int d = 0;
  double no_toll = 0.0, optimal_local = 0.0, optimal_constant = 0.0,
         marginal = 0.0;
};

Table1Row table1_row(int d, int n, double tol) {
  Table1Row row;
  row.d = d;
  std::vector<BasisTable> bases = monomials_up_to(d, n);
  std::vector<InducedCost> untolled;
  for (const BasisTable& b : bases)
    untolled.push_back({n, std::vector<double>(b.values.begin(),
                                               b.values.begin() + n)});
  row.no_toll = poa_monotone(bases, untolled, n, tol).poa;
  // Constant costs need no toll (every equilibrium is optimal), so the
  // degree-0 basis contributes exactly 1 to the max.
  row.optimal_local = 1.0;
  for (const BasisTable& b : bases)
    if (classify(b).monotone_program_ok)
      row.optimal_local = std::max(row.optimal_local, 1.0 / solve_rho_star(b, n));
  row.optimal_constant = const_design(bases, n, tol).poa;
  row.marginal = marginal_poa(bases, n, tol).poa;
  return row;
}

int cmd_table1(int n, const std::vector<int>& degrees, const std::string& fmt,
               const std::string& out, double tol) {
  // Literature values for the best load-aware global toll, never computed here.
  static const std::map<int, int> kCitedGlobal = {{1, 2},   {2, 5},   {3, 15},
                                                  {4, 52},  {5, 203}, {6, 877}};
  std::vector<Table1Row> rows(degrees.size());
  std::vector<std::exception_ptr> errs(degrees.size());
  parallel_for(static_cast<int>(degrees.size()), [&](int i) {
    try {
      rows[i] = table1_row(degrees[i], n, tol);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (size_t i = 0; i < errs.size(); ++i)
    if (errs[i]) {
      std::cerr << "table1: failed at d=" << degrees[i] << "\n";
      std::rethrow_exception(errs[i]);
    }

  if (fmt == "json") {
    json arr = json::array();
    for (const Table1Row& r : rows) {
      json o = {{"d", r.d},
                {"no_toll", r.no_toll},
                {"optimal_local", r.optimal_local},
                {"optimal_constant", r.optimal_constant},
                {"marginal_cost", r.marginal}};
      auto it = kCitedGlobal.find(r.d);
      if (it != kCitedGlobal.end()) o["global_toll_cited"] = it->second;
      arr.push_back(o);
    }
    emit(arr.dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    csv << "d,no_toll,global_toll_cited,optimal_local,optimal_constant,"
           "marginal_cost\n";
    for (const Table1Row& r : rows) {
      auto it = kCitedGlobal.find(r.d);
      csv << r.d << ',' << fmt6(r.no_toll) << ','
          << (it != kCitedGlobal.end() ? std::to_string(it->second) : "") << ','
          << fmt6(r.optimal_local) << ',' << fmt6(r.optimal_constant) << ','
          << fmt6(r.marginal) << '\n';
    }
    emit(csv.str(), out);
  }
  return 0;
}

int cmd_table2(int n_bar, const std::vector<int>& degrees,
               const std::string& fmt, const std::string& out, double tol) {
  std::vector<int> windows;
  for (int w = 10; w <= n_bar; w += 10) windows.push_back(w);
  if (windows.empty() || windows.back() != n_bar) windows.push_back(n_bar);

  struct Cell {
    int n_bar, d;
    Sandwich s;
  };
  std::vector<Cell> cells;
  for (int w : windows)
    for (int d : degrees) cells.push_back({w, d, {}});
  std::vector<std::exception_ptr> errs(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int i) {
    try {
      cells[i].s = sandwich(cells[i].d, cells[i].n_bar, tol);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (size_t i = 0; i < errs.size(); ++i)
    if (errs[i]) {
      std::cerr << "table2: failed at nbar=" << cells[i].n_bar
                << " d=" << cells[i].d << "\n";
      std::rethrow_exception(errs[i]);
    }

  if (fmt == "json") {
    json arr = json::array();
    for (const Cell& c : cells)
      arr.push_back({{"nbar", c.n_bar},
                     {"d", c.d},
                     {"lower", c.s.lower},
                     {"upper", c.s.upper}});
    emit(arr.dump(2) + "\n", out);
  } else {
    std::ostringstream csv;
    csv << "nbar,d,lower,upper\n";
    for (const Cell& c : cells)
      csv << c.n_bar << ',' << c.d << ',' << fmt6(c.s.lower) << ','
          << fmt6(c.s.upper) << '\n';
    emit(csv.str(), out);
  }
  return 0;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad json in ") + path + ": " + e.what());
  }
}

int cmd_design(const std::string& basis_file, const std::vector<int>& degrees,
               int n, const std::string& method, bool nonneg,
               const std::string& out, double tol) {
  std::vector<BasisTable> bases;
  if (!basis_file.empty()) {
    json j = load_json(basis_file);
    if (j.is_array())
      for (const auto& bj : j) bases.push_back(basis_from_json(bj));
    else
      bases.push_back(basis_from_json(j));
  } else {
    for (int d : degrees) bases.push_back(monomial(d, n));
  }
  if (bases.empty())
    throw ValidationError("design needs --degrees or --basis-file");
  Mechanism m =
      design_mechanism(bases, n, method_from_name(method), nonneg, tol);
  emit(mechanism_to_json(m).dump(2) + "\n", out);
  return 0;
}

json eval_mechanism(const Mechanism& m, double tol) {
  std::vector<InducedCost> fs;
  for (size_t j = 0; j < m.bases.size(); ++j)
    fs.push_back(induced_from(m.bases[j], m.tolls[j], m.n));
  PoaReport rep;
  try {
    rep = poa_monotone(m.bases, fs, m.n, tol);
  } catch (const NotMonotone&) {
    rep = poa_full(m.bases, fs, m.n, tol);
  }
  json o = {{"rho", rep.rho}, {"poa", rep.poa}};
  if (rep.nu) o["nu"] = *rep.nu;
  o["binding"] = rep.binding;
  return o;
}

int cmd_eval(const std::string& path, const std::string& out, double tol) {
  json j = load_json(path);
  if (j.contains("players")) {
    EquilibriumReport rep = enumerate_pure_nash(instance_from_json(j));
    emit(report_to_json(rep).dump(2) + "\n", out);
  } else {
    emit(eval_mechanism(mechanism_from_json(j), tol).dump(2) + "\n", out);
  }
  return 0;
}

int cmd_oracle(const std::string& path, const std::string& builtin,
               double const_tau, const std::string& tolls,
               const std::string& write_instance, const std::string& out) {
  GameInstance g;
  if (builtin == "pigou")
    g = build_pigou_example();
  else if (builtin == "const-lb")
    g = build_const_lb_game(const_tau);
  else if (!path.empty())
    g = instance_from_json(load_json(path));
  else
    throw ValidationError("oracle needs an instance file or --builtin");
  if (tolls == "marginal")
    apply_marginal_tolls(g);
  else if (tolls == "none")
    g.tolls.clear();
  else if (tolls != "keep")
    throw ValidationError("--tolls must be keep, none or marginal");
  if (!write_instance.empty())
    emit(instance_to_json(g).dump(2) + "\n", write_instance);
  EquilibriumReport rep = enumerate_pure_nash(g);
  emit(report_to_json(rep).dump(2) + "\n", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal local tolling mechanisms for congestion games"};
  app.require_subcommand(1);

  int n = 100, n_bar = 40;
  double tol = 1e-9, const_tau = 3.0;
  std::string fmt = "csv", out, method = "recursion", basis_file, input;
  std::string tolls = "keep", builtin, write_instance;
  bool nonneg = false;
  std::vector<int> degrees;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", out, "Output path (default: stdout)");
    c->add_option("--tol-feas", tol, "LP feasibility tolerance");
  };

  CLI::App* t1 = app.add_subcommand("table1", "Efficiency of the toll families");
  t1->add_option("--n", n, "Number of players");
  t1->add_option("--degrees", degrees, "Polynomial degrees (default 1..6)")->delimiter(',');
  t1->add_option("--format", fmt, "csv or json");
  add_common(t1);

  CLI::App* t2 = app.add_subcommand("table2", "Bounds for unbounded player counts");
  t2->add_option("--nbar", n_bar, "Largest window size (steps of 10)");
  t2->add_option("--degrees", degrees, "Polynomial degrees (default 1..3)")->delimiter(',');
  t2->add_option("--format", fmt, "csv or json");
  add_common(t2);

  CLI::App* de = app.add_subcommand("design", "Compute an optimal mechanism");
  de->add_option("--n", n, "Number of players");
  de->add_option("--degrees", degrees, "Monomial degrees to design for")->delimiter(',');
  de->add_option("--basis-file", basis_file, "JSON basis spec (object or array)");
  de->add_option("--method", method, "full, simplified or recursion");
  de->add_flag("--nonneg", nonneg, "Scale tolls to be nonnegative");
  add_common(de);

  CLI::App* ev = app.add_subcommand("eval", "Evaluate a mechanism or instance file");
  ev->add_option("file", input, "Mechanism or instance JSON")->required();
  add_common(ev);

  CLI::App* orc = app.add_subcommand("oracle", "Brute-force equilibrium scan");
  orc->add_option("file", input, "Instance JSON");
  orc->add_option("--builtin", builtin, "pigou or const-lb");
  orc->add_option("--const-tau", const_tau, "Toll level for const-lb");
  orc->add_option("--tolls", tolls, "keep, none or marginal");
  orc->add_option("--write-instance", write_instance, "Also dump the instance");
  add_common(orc);

  CLI11_PARSE(app, argc, argv);

  try {
    if (n < 1) throw ValidationError("--n must be >= 1");
    for (int d : degrees)
      if (d < 0 || d > 8) throw ValidationError("degrees must lie in 0..8");
    if (fmt != "csv" && fmt != "json")
      throw ValidationError("--format must be csv or json");
    if (t1->parsed()) {
      if (degrees.empty()) degrees = {1, 2, 3, 4, 5, 6};
      return cmd_table1(n, degrees, fmt, out, tol);
    }
    if (t2->parsed()) {
      if (degrees.empty()) degrees = {1, 2, 3};
      if (n_bar < 2 || n_bar % 2 != 0)
        throw ValidationError("--nbar must be even and >= 2");
      return cmd_table2(n_bar, degrees, fmt, out, tol);
    }
    if (de->parsed()) return cmd_design(basis_file, degrees, n, method, nonneg, out, tol);
    if (ev->parsed()) return cmd_eval(input, out, tol);
    if (orc->parsed())
      return cmd_oracle(input, builtin, const_tau, tolls, write_instance, out);
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
