#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellsq/bmo_bellman.hpp"
#include "bellsq/boundary_functions.hpp"
#include "bellsq/constants.hpp"
#include "bellsq/errors.hpp"
#include "bellsq/extremizers.hpp"
#include "bellsq/martingale_tree.hpp"
#include "bellsq/roof_model.hpp"
#include "bellsq/serialization.hpp"
#include "bellsq/verification.hpp"

using namespace bellsq;
using nlohmann::json;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("BELLMAN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("BELLMAN_SEED is not an unsigned integer: ") + env);
    }
  }
  return flag;
}

// Upper bound b_{sqrt(1 - z^2)}(x, y) for a catalog payoff, if it has one.
std::optional<double> bellman_bound(const BoundaryFunction& f, const State3& s) {
  const double eps = std::sqrt(std::max(0.0, 1.0 - s.z * s.z));
  if (s.y - s.x * s.x <= 0.0 || !(eps > 0.0)) return f(s.x);
  try {
    return BellmanSurface(f, eps).eval(s.xy());
  } catch (const DivergenceError&) {
    return std::nullopt;
  }
}

struct EvalArgs {
  std::string payoff;
  double eps = 1.0;
  double x = 0.0;
  double y = 0.0;
  bool quadrature = false;
  std::string json_path;
};

struct ExtremizeArgs {
  std::string kind;
  std::string payoff = "indicator";
  double x = 0.0;
  double y = 1.0;
  double z = 0.0;
  double target_x = 1.0;
  double target_y = 2.0;
  double anchor = 0.0;
  double v0 = 0.0;
  double c0 = 1.0;
  int steps = 1000;
  std::string tree_path;
  std::string json_path;
};

struct VerifyArgs {
  std::string suite;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string json_path;
};

struct ExportArgs {
  std::string surface;
  double eps = 1.0;
  int grid = 101;
  double x_min = -2.0;
  double x_max = 2.0;
  std::string out;
};

int run_eval(const EvalArgs& a) {
  const BellmanSurface b(make_payoff(a.payoff), a.eps,
                         a.quadrature ? SlopeSource::Quadrature : SlopeSource::Auto);
  const double v = b.eval({a.x, a.y});
  std::cout << format_double(v) << '\n';
  write_json(a.json_path, {{"payoff", a.payoff}, {"eps", a.eps}, {"x", a.x}, {"y", a.y}, {"value", v}});
  return 0;
}

int run_roof(double x, double y, const std::string& json_path) {
  const double v = roof_B({x, y});
  std::cout << format_double(v) << '\n';
  write_json(json_path, {{"x", x}, {"y", y}, {"value", v}});
  return 0;
}

int run_extremize(const ExtremizeArgs& a) {
  const BoundaryFunction f = make_payoff(a.payoff);
  const State3 start{a.x, a.y, a.z};
  std::optional<MartingaleTree> tree;
  std::optional<double> bound;
  if (a.kind == "two-point") {
    tree = extremize_two_point(start);
    bound = two_point_value(start.xy(), f);
  } else if (a.kind == "parabola") {
    tree = extremize_parabola_chain(start, a.target_x, a.steps);
    bound = bellman_bound(f, start);
  } else if (a.kind == "scaling") {
    tree = extremize_scaling_chain(start, {a.target_x, a.target_y}, a.anchor, a.steps);
    bound = bellman_bound(f, start);
  } else if (a.kind == "roof") {
    tree = extremize_roof_indicator(a.v0, a.c0, a.steps);
    const State3& r = tree->root();
    bound = f.kind() == PayoffKind::Indicator ? std::optional<double>(roof_B(r.xy())) : bellman_bound(f, r);
  } else {
    throw DomainError("unknown extremizer kind '" + a.kind + "'");
  }
  const double e = expectation(*tree, f);
  const double s = square_function_sup(*tree);
  std::cout << "E f = " << format_double(e) << '\n' << "sup S = " << format_double(s) << '\n';
  json j{{"kind", a.kind}, {"payoff", a.payoff}, {"expectation", e}, {"square_function_sup", s},
         {"nodes", tree->size()}, {"max_split_residual", max_split_residual(*tree)}};
  if (bound) {
    std::cout << "bound = " << format_double(*bound) << '\n'
              << "gap = " << format_double(*bound - e) << '\n';
    j["bound"] = *bound;
    j["gap"] = *bound - e;
  }
  write_json(a.json_path, j);
  write_json(a.tree_path, tree_to_json(*tree));
  return 0;
}

int run_verify(const VerifyArgs& a) {
  SuiteConfig cfg;
  cfg.samples = a.samples;
  cfg.seed = effective_seed(a.seed);
  std::vector<VerificationReport> reports;
  if (a.suite == "supersolution") {
    reports.push_back(verify_indicator_b1(cfg));
    reports.push_back(verify_exp_composite(0.5, cfg));
    reports.push_back(verify_roof_glued(cfg));
  } else if (a.suite == "perturbed-control") {
    reports.push_back(verify_perturbed_control(cfg));
  } else if (a.suite == "tangent") {
    reports.push_back(verify_roof_tangent_condition(cfg));
  } else if (a.suite == "monotone-c") {
    reports.push_back(verify_monotone_c(TangentSide::Right, cfg));
    reports.push_back(verify_monotone_c(TangentSide::Left, cfg));
  } else if (a.suite == "f-kernel") {
    reports.push_back(verify_f_kernel());
    reports.push_back(verify_f_kernel_convexity());
  } else if (a.suite == "embedding") {
    reports.push_back(verify_embedding(std::min<std::size_t>(a.samples, 100), cfg.seed));
  } else if (a.suite == "ode-residual") {
    reports.push_back(verify_ode_residual(std::min<std::size_t>(a.samples, 1000), cfg.seed));
    reports.push_back(verify_psi_t_identity(std::min<std::size_t>(a.samples, 1000), cfg.seed));
  } else if (a.suite == "weak-jn") {
    reports.push_back(verify_weak_jn_c1());
  } else {
    throw DomainError("unknown suite '" + a.suite + "'");
  }
  bool ok = true;
  json out = json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << " samples=" << r.samples
              << " worst=" << format_double(r.worst_violation) << " tol=" << format_double(r.tolerance) << '\n';
    out.push_back(report_to_json(r));
  }
  write_json(a.json_path, out);
  return ok ? 0 : 1;
}

int run_constants(const std::string& which, int grid, const std::string& json_path) {
  ConstantResult r;
  if (which == "tail") {
    r = sharp_constant_tail(grid > 0 ? grid : 2001);
  } else if (which.rfind("cp:", 0) == 0) {
    r = sharp_constant_cp(std::stod(which.substr(3)), grid > 0 ? grid : 201);
  } else if (which.rfind("exp:", 0) == 0) {
    r = sharp_constant_exp(std::stod(which.substr(4)), grid > 0 ? grid : 201);
  } else {
    throw DomainError("unknown constant '" + which + "'");
  }
  std::cout << fixed6(r.value) << " at (" << fixed6(r.argmax.x) << ", " << fixed6(r.argmax.y) << ")\n";
  write_json(json_path, {{"which", which}, {"value", r.value}, {"argmax", {r.argmax.x, r.argmax.y}}});
  return 0;
}

int run_export(const ExportArgs& a) {
  if (a.grid < 2) throw DomainError("export: grid must be at least 2");
  std::function<double(Point2)> value;
  double eps = a.eps;
  std::optional<BellmanSurface> surface;
  if (a.surface == "roof") {
    eps = 1.0;
    value = [](Point2 p) { return roof_B(p); };
  } else {
    surface.emplace(make_payoff(a.surface), eps);
    value = [&](Point2 p) { return surface->eval(p); };
  }
  std::vector<double> xs, ys, vs;
  for (int i = 0; i < a.grid; ++i) {
    const double x = a.x_min + (a.x_max - a.x_min) * i / (a.grid - 1);
    for (int j = 0; j < a.grid; ++j) {
      const double y = x * x + eps * eps * j / (a.grid - 1);
      xs.push_back(x);
      ys.push_back(y);
      vs.push_back(value({x, y}));
    }
  }
  if (a.out.empty() || a.out == "-") {
    write_csv_xyz(std::cout, xs, ys, vs);
  } else {
    std::ofstream out(a.out);
    if (!out) throw std::runtime_error("cannot write " + a.out);
    write_csv_xyz(out, xs, ys, vs);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bellman functions for martingales with bounded square function"};
  app.require_subcommand(1);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate b_eps(x, y)");
  eval->add_option("--payoff", ea.payoff, "indicator | exp:<lambda> | power:<p>")->required();
  eval->add_option("--eps", ea.eps, "strip width")->required();
  eval->add_option("--x", ea.x)->required();
  eval->add_option("--y", ea.y)->required();
  eval->add_flag("--quadrature", ea.quadrature, "integrate tangent slopes even when closed forms exist");
  eval->add_option("--json", ea.json_path);

  double rx = 0.0, ry = 1.0;
  std::string roof_json;
  auto* roof = app.add_subcommand("roof", "Evaluate B on the roof for the indicator payoff");
  roof->add_option("--x", rx)->required();
  roof->add_option("--y", ry)->required();
  roof->add_option("--json", roof_json);

  ExtremizeArgs xa;
  auto* ext = app.add_subcommand("extremize", "Build an extremal martingale tree");
  ext->add_option("--kind", xa.kind)->required()->check(CLI::IsMember({"two-point", "parabola", "scaling", "roof"}));
  ext->add_option("--payoff", xa.payoff);
  ext->add_option("--x", xa.x, "start mean");
  ext->add_option("--y", xa.y, "start second moment");
  ext->add_option("--z", xa.z, "start square-function budget used");
  ext->add_option("--target-x", xa.target_x, "parabola end / scaling target x");
  ext->add_option("--target-y", xa.target_y, "scaling target y");
  ext->add_option("--anchor", xa.anchor, "scaling anchor t");
  ext->add_option("--v0", xa.v0, "roof chain start ratio x/c");
  ext->add_option("--c0", xa.c0, "roof chain start scale");
  ext->add_option("--steps", xa.steps);
  ext->add_option("--emit-tree", xa.tree_path, "write the tree as JSON");
  ext->add_option("--json", xa.json_path);

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run a verification suite; exit 0 iff it passes");
  ver->add_option("--suite", va.suite)
      ->required()
      ->check(CLI::IsMember({"supersolution", "perturbed-control", "tangent", "monotone-c", "f-kernel",
                             "embedding", "ode-residual", "weak-jn"}));
  ver->add_option("--samples", va.samples);
  ver->add_option("--seed", va.seed, "overridden by BELLMAN_SEED");
  ver->add_option("--json", va.json_path);

  std::string which, const_json;
  int const_grid = 0;
  auto* cons = app.add_subcommand("constants", "Compute a sharp constant");
  cons->add_option("--which", which, "cp:<p> | exp:<eps> | tail")->required();
  cons->add_option("--grid", const_grid);
  cons->add_option("--json", const_json);

  ExportArgs xp;
  auto* exp = app.add_subcommand("export", "Write x,y,value CSV of a surface over its strip");
  exp->add_option("--surface", xp.surface, "indicator | exp:<lambda> | power:<p> | roof")->required();
  exp->add_option("--eps", xp.eps);
  exp->add_option("--grid", xp.grid);
  exp->add_option("--x-min", xp.x_min);
  exp->add_option("--x-max", xp.x_max);
  exp->add_option("--out", xp.out, "CSV path, '-' for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) return run_eval(ea);
    if (*roof) return run_roof(rx, ry, roof_json);
    if (*ext) return run_extremize(xa);
    if (*ver) return run_verify(va);
    if (*cons) return run_constants(which, const_grid, const_json);
    if (*exp) return run_export(xp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
