// circkit: exact determinants and permanents of r-line circulant matrices,
// coefficient oracles, and GT-system certification. Every subcommand is
// deterministic: identical inputs give byte-identical outputs (bench timing
// columns excepted).
//
// Exit codes: 0 success, 1 verification failure, 2 contract/hypothesis
// error, 3 resource limit, 4 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circkit/circkit.hpp"

namespace {

using circkit::Int;
using circkit::json;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

// "8:14" inclusive range, or "8,10,12" list; empty string = empty grid.
std::vector<int> parse_d_grid(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const int lo = std::stoi(s.substr(0, colon));
    const int hi = std::stoi(s.substr(colon + 1));
    for (int d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  return parse_int_list(s);
}

std::vector<Int> parse_point(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.emplace_back(item);
    } catch (const std::invalid_argument&) {
      throw circkit::contract_error("bad integer in point: '" + item + "'");
    }
  }
  return out;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw circkit::contract_error("cannot open output file: " + path);
  f << payload;
  if (payload.empty() || payload.back() != '\n') f << '\n';
}

struct ThreeLine {
  int a = 0, b = 0;
};

ThreeLine three_line_of(const circkit::CirculantSpec& spec) {
  if (spec.lines() != 3 || spec.shifts[0] != 0)
    throw circkit::contract_error("this mode needs shifts of the form 0,a,b");
  return {spec.shifts[1], spec.shifts[2]};
}

int run_expand(int d, const std::string& shifts_csv, const std::string& mode,
               const std::string& plan_name, int bound, int threads,
               const std::string& out) {
  circkit::CirculantSpec spec(d, parse_int_list(shifts_csv));
  json j;
  j["d"] = spec.d;
  j["shifts"] = spec.shifts;
  j["mode"] = mode;
  j["nvars"] = spec.lines();
  circkit::IntPolynomial poly(spec.lines());
  if (mode == "det-leibniz") {
    poly = circkit::leibniz_expand(spec, circkit::ExpandMode::Det, bound);
  } else if (mode == "per-leibniz") {
    poly = circkit::leibniz_expand(spec, circkit::ExpandMode::Per, bound);
  } else if (mode == "det-step") {
    poly = circkit::step_expand(spec, circkit::ExpandMode::Det);
  } else if (mode == "per-step") {
    poly = circkit::step_expand(spec, circkit::ExpandMode::Per);
  } else if (mode == "det-interp") {
    const auto [a, b] = three_line_of(spec);
    const auto plan = plan_name == "kronecker" ? circkit::InterpPlan::Kronecker
                                               : circkit::InterpPlan::Grid;
    circkit::PlanInfo info;
    poly = circkit::det_poly_interpolate(spec.d, a, b, plan, &info, threads);
    j["plan"] = {{"name", info.plan},
                 {"points", info.points},
                 {"degree_bound", info.degree_bound},
                 {"nodes_per_problem", info.nodes_per_problem},
                 {"substitution", info.substitution}};
  } else {
    throw circkit::contract_error("unknown mode: " + mode);
  }
  j["terms"] = circkit::poly_to_json(poly);
  write_output(out, j.dump());
  return 0;
}

int run_coeff(int d, int a, int b, int A, int B, const std::string& method,
              const std::string& witness_path, const std::string& out) {
  if (method == "oracle") {
    if (!witness_path.empty())
      throw circkit::contract_error("witness dump requires --method step");
    write_output(out, circkit::report_to_json(circkit::full_coefficient(d, a, b, A, B)).dump());
    return 0;
  }
  if (method != "step") throw circkit::contract_error("unknown method: " + method);
  if (A < 0 || B < 0 || A + B > d)
    throw circkit::contract_error("need A, B >= 0 with A + B <= d");
  circkit::CirculantSpec spec(d, {0, a, b});
  const auto res =
      circkit::step_enumerate(spec, circkit::ExponentVec{d - A - B, A, B},
                              !witness_path.empty());
  if (!witness_path.empty()) {
    std::ofstream f(witness_path, std::ios::binary);
    if (!f) throw circkit::contract_error("cannot open witness file: " + witness_path);
    for (const auto& w : res.witnesses) {
      for (size_t i = 0; i < w.steps.size(); ++i) f << (i ? " " : "") << w.steps[i];
      f << '\n';
    }
  }
  json j;
  j["d"] = d;
  j["a"] = a;
  j["b"] = b;
  j["A"] = A;
  j["B"] = B;
  j["method"] = "step";
  j["det_coeff"] = res.det_coeff.get_str();
  j["per_coeff"] = res.per_coeff.get_str();
  if (!witness_path.empty()) j["witnesses_written"] = res.witnesses.size();
  write_output(out, j.dump());
  return 0;
}

int run_support(int d, const std::string& shifts_csv, const std::string& method, int bound,
                const std::string& out) {
  circkit::CirculantSpec spec(d, parse_int_list(shifts_csv));
  long D = 0, P = 0;
  if (method == "leibniz") {
    std::tie(D, P) = circkit::support_counts(spec, circkit::SupportMethod::Leibniz, bound);
  } else if (method == "step") {
    std::tie(D, P) = circkit::support_counts(spec, circkit::SupportMethod::Step);
  } else if (method == "oracle") {
    const auto [a, b] = three_line_of(spec);
    std::tie(D, P) = circkit::oracle_support_count(spec.d, a, b);
  } else {
    throw circkit::contract_error("unknown method: " + method);
  }
  json j;
  j["d"] = spec.d;
  j["shifts"] = spec.shifts;
  j["method"] = method;
  j["D"] = D;
  j["P"] = P;
  write_output(out, j.dump());
  return 0;
}

int run_gt(int d, int a, int b, int threads, const std::string& out) {
  write_output(out, circkit::report_to_json(circkit::minimality_certificate(d, a, b, threads))
                        .dump());
  return 0;
}

int run_perm(int d, int a, int b, const std::string& point_csv, const std::string& method,
             int ryser_bound, int threads, const std::string& out) {
  const auto pt = parse_point(point_csv);
  if (pt.size() != 3) throw circkit::contract_error("--point needs three integers x,y,z");
  circkit::PermanentMethod m;
  if (method == "ryser")
    m = circkit::PermanentMethod::Ryser;
  else if (method == "interp")
    m = circkit::PermanentMethod::Interp;
  else
    throw circkit::contract_error("unknown method: " + method);
  const Int v = circkit::per_eval(d, a, b, {pt[0], pt[1], pt[2]}, m, ryser_bound, threads);
  json j;
  j["d"] = d;
  j["a"] = a;
  j["b"] = b;
  j["method"] = method;
  j["point"] = {pt[0].get_str(), pt[1].get_str(), pt[2].get_str()};
  j["value"] = v.get_str();
  write_output(out, j.dump());
  return 0;
}

int run_bench(const std::string& d_grid, int a, int b, const std::string& methods_csv,
              int ryser_bound, int threads, const std::string& out) {
  std::vector<circkit::PermanentMethod> methods;
  {
    std::stringstream ss(methods_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "ryser")
        methods.push_back(circkit::PermanentMethod::Ryser);
      else if (item == "interp")
        methods.push_back(circkit::PermanentMethod::Interp);
      else if (!item.empty())
        throw circkit::contract_error("unknown method: " + item);
    }
  }
  std::vector<std::array<int, 3>> grid;
  for (int d : parse_d_grid(d_grid)) {
    if (d < 3 || a < 1 || b <= a || b > d - 1)
      throw circkit::contract_error("bench cell (d=" + std::to_string(d) +
                                    ") needs 1 <= a < b <= d-1");
    grid.push_back({d, a, b});
  }
  const auto cells = circkit::bench_matrix(grid, methods, ryser_bound, threads);
  std::ostringstream csv;
  csv << "d,a,b,method,wall_ms,agrees\n";
  csv.setf(std::ios::fixed);
  csv.precision(3);
  for (const auto& c : cells) {
    csv << c.d << ',' << c.a << ',' << c.b << ',' << c.method << ',';
    if (c.agrees == "skipped")
      csv << "";
    else
      csv << c.wall_ms;
    csv << ',' << c.agrees << '\n';
  }
  write_output(out, csv.str());
  return 0;
}

int run_verify(int max_d, int ryser_d, int gt_d, int points, std::uint64_t seed,
               const std::string& format, int threads, const std::string& out) {
  if (max_d < 3 || max_d > 9)
    throw circkit::contract_error("--max-d must be in [3, 9] (full S_d sweeps)");
  if (ryser_d > 14 || ryser_d < 3)
    throw circkit::contract_error("--ryser-d must be in [3, 14]");
  if (gt_d < 3) throw circkit::contract_error("--gt-d must be at least 3");
  std::vector<circkit::PropertyResult> results;
  results.push_back(circkit::verify_oracle_vs_brute(max_d));
  results.push_back(circkit::verify_structure_lemmas(max_d));
  results.push_back(circkit::verify_two_line(std::min(max_d + 1, 10)));
  results.push_back(circkit::verify_counterexamples());
  results.push_back(circkit::verify_interp_vs_leibniz(max_d));
  results.push_back(circkit::verify_interp_vs_ryser(ryser_d, points, seed));
  results.push_back(circkit::verify_support_counts(max_d));
  results.push_back(circkit::verify_per_support_is_invariant(max_d));
  results.push_back(circkit::verify_gt_systems(gt_d, threads));
  results.push_back(circkit::verify_exact_division(gt_d, threads));

  int failed = 0;
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      if (!r.pass()) ++failed;
      arr.push_back({{"name", r.name},
                     {"cases", r.cases},
                     {"pass", r.pass()},
                     {"violations", r.violations}});
    }
    write_output(out, json{{"properties", arr}, {"failed", failed}}.dump());
  } else {
    std::ostringstream os;
    for (const auto& r : results) {
      if (!r.pass()) ++failed;
      os << (r.pass() ? "PASS " : "FAIL ") << r.name << " [cases=" << r.cases << "]\n";
      for (const auto& v : r.violations) os << "  violation: " << v << "\n";
    }
    os << "SUMMARY " << (results.size() - static_cast<size_t>(failed)) << "/" << results.size()
       << " properties passed\n";
    write_output(out, os.str());
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact r-line circulant determinants/permanents and GT-systems"};
  app.require_subcommand(1);

  int threads = 1;
  if (const char* env = std::getenv("CIRCKIT_THREADS")) {
    try {
      threads = std::max(1, std::stoi(env));
    } catch (...) {
      threads = 1;
    }
  }
  app.add_option("--threads", threads, "worker threads for point evaluations");
  std::string out;
  app.add_option("--out", out, "output file (default: stdout)");

  // expand
  auto* expand = app.add_subcommand("expand", "symbolic det/per expansion");
  int e_d = 0;
  std::string e_shifts, e_mode, e_plan = "grid";
  int e_bound = 9;
  expand->add_option("--d", e_d, "matrix order")->required();
  expand->add_option("--shifts", e_shifts, "comma-separated shifts, e.g. 0,2,6")->required();
  expand
      ->add_option("--mode", e_mode,
                   "det-leibniz | per-leibniz | det-step | per-step | det-interp")
      ->required();
  expand->add_option("--plan", e_plan, "interpolation plan: grid | kronecker");
  expand->add_option("--bound", e_bound, "full S_d iteration bound (default 9)");

  // coeff
  auto* coeff = app.add_subcommand("coeff", "single-coefficient query");
  int c_d = 0, c_a = 0, c_b = 0, c_A = 0, c_B = 0;
  std::string c_method = "oracle", c_witnesses;
  coeff->add_option("--d", c_d)->required();
  coeff->add_option("--a", c_a)->required();
  coeff->add_option("--b", c_b)->required();
  coeff->add_option("--A", c_A)->required();
  coeff->add_option("--B", c_B)->required();
  coeff->add_option("--method", c_method, "oracle | step");
  coeff->add_option("--witnesses", c_witnesses, "dump step permutations to file (step only)");

  // support
  auto* support = app.add_subcommand("support", "support sizes D and P");
  int s_d = 0, s_bound = 9;
  std::string s_shifts, s_method = "step";
  support->add_option("--d", s_d)->required();
  support->add_option("--shifts", s_shifts)->required();
  support->add_option("--method", s_method, "leibniz | step | oracle");
  support->add_option("--bound", s_bound, "full S_d iteration bound (default 9)");

  // gt
  auto* gt = app.add_subcommand("gt", "GT-system report for (d; 0,a,b)");
  int g_d = 0, g_a = 0, g_b = 0;
  gt->add_option("--d", g_d)->required();
  gt->add_option("--a", g_a)->required();
  gt->add_option("--b", g_b)->required();

  // perm
  auto* perm = app.add_subcommand("perm", "numeric permanent evaluation");
  int p_d = 0, p_a = 0, p_b = 0, p_ryser_bound = 20;
  std::string p_point = "1,1,1", p_method = "interp";
  perm->add_option("--d", p_d)->required();
  perm->add_option("--a", p_a)->required();
  perm->add_option("--b", p_b)->required();
  perm->add_option("--point", p_point, "x,y,z (default 1,1,1)");
  perm->add_option("--method", p_method, "ryser | interp");
  perm->add_option("--ryser-bound", p_ryser_bound, "ryser order bound (default 20)");

  // bench
  auto* bench = app.add_subcommand("bench", "timing/agreement CSV");
  std::string b_d, b_methods = "ryser,interp";
  int b_a = 1, b_b = 2, b_ryser_bound = 20;
  bench->add_option("--d", b_d, "orders: lo:hi or comma list (empty = header only)");
  bench->add_option("--a", b_a, "shift a (default 1)");
  bench->add_option("--b", b_b, "shift b (default 2)");
  bench->add_option("--methods", b_methods, "comma list of ryser,interp");
  bench->add_option("--ryser-bound", b_ryser_bound);

  // verify
  auto* verify = app.add_subcommand("verify", "cross-check sweeps; exit 1 on any mismatch");
  int v_max_d = 7, v_ryser_d = 12, v_gt_d = 12, v_points = 3;
  std::uint64_t v_seed = 0;
  std::string v_format = "text";
  verify->add_option("--max-d", v_max_d, "bound for full S_d sweeps (3..9, default 7)");
  verify->add_option("--ryser-d", v_ryser_d, "bound for ryser cross-checks (default 12)");
  verify->add_option("--gt-d", v_gt_d, "bound for GT-system sweeps (default 12)");
  verify->add_option("--points", v_points, "random points per (d,a,b) (default 3)");
  verify->add_option("--seed", v_seed, "RNG seed for point sampling (default 0)");
  verify->add_option("--format", v_format, "text | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << circkit::error_to_json("contract", e.what()).dump() << std::endl;
    return 2;
  }

  try {
    if (*expand) return run_expand(e_d, e_shifts, e_mode, e_plan, e_bound, threads, out);
    if (*coeff) return run_coeff(c_d, c_a, c_b, c_A, c_B, c_method, c_witnesses, out);
    if (*support) return run_support(s_d, s_shifts, s_method, s_bound, out);
    if (*gt) return run_gt(g_d, g_a, g_b, threads, out);
    if (*perm) return run_perm(p_d, p_a, p_b, p_point, p_method, p_ryser_bound, threads, out);
    if (*bench) return run_bench(b_d, b_a, b_b, b_methods, b_ryser_bound, threads, out);
    if (*verify)
      return run_verify(v_max_d, v_ryser_d, v_gt_d, v_points, v_seed, v_format, threads, out);
  } catch (const circkit::hypothesis_error& e) {
    std::cerr << circkit::error_to_json("hypothesis", e.what()).dump() << std::endl;
    return 2;
  } catch (const circkit::contract_error& e) {
    std::cerr << circkit::error_to_json("contract", e.what()).dump() << std::endl;
    return 2;
  } catch (const circkit::divisibility_error& e) {
    std::cerr << circkit::error_to_json("divisibility", e.what()).dump() << std::endl;
    return 2;
  } catch (const circkit::resource_limit_error& e) {
    std::cerr << circkit::error_to_json("resource", e.what()).dump() << std::endl;
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << circkit::error_to_json("contract", e.what()).dump() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << circkit::error_to_json("internal", e.what()).dump() << std::endl;
    return 4;
  }
  return 0;
}
