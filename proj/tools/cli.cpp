#include "cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "majorant/hille_region.hpp"
#include "majorant/implicit_solver.hpp"
#include "majorant/io.hpp"
#include "majorant/kantorovich.hpp"
#include "majorant/majorant.hpp"

namespace majorant::cli {

namespace {

struct Options {
  std::string spec;
  std::string mode;
  std::string out;
  unsigned degree = 10;
  bool oracle = false;
  std::vector<std::string> X;
  std::vector<std::string> x;
  std::vector<std::string> direction;
  double tol = 1e-12;
  std::size_t max_iter = 10000;
  std::size_t budget = 10000;
  std::size_t samples = 1000;
  std::uint64_t seed = 0x5eed;
  double box = 0.1;
  double ymax = 1.0;
  std::size_t steps = 100;
};

// A verdict that the caller asked for but the mathematics refused.
class DomainFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LatticeVec<double> parse_vector(const std::vector<std::string>& items, const char* flag) {
  if (items.empty()) throw ValidationError(std::string("missing required option ") + flag);
  std::vector<double> v;
  for (const auto& s : items) v.push_back(parse_double(s));
  return LatticeVec<double>(std::move(v));
}

SpecDocument load(const Options& o) {
  std::optional<Mode> override_mode;
  if (!o.mode.empty()) override_mode = parse_mode(o.mode);
  return parse_spec(o.spec, override_mode);
}

// Equation documents are majorized; comparison documents are used as is.
template <Scalar T>
ComparisonEquation<T> comparison_of(const SpecDocument& doc, const EquationSpec<T>& eq) {
  return doc.kind == SpecKind::Comparison ? as_comparison(eq) : majorant(eq);
}

// The numeric verbs iterate in floating point.
ComparisonEquation<double> float_comparison(const SpecDocument& doc) {
  return std::visit(
      [&](const auto& eq) { return convert_comparison<double>(comparison_of(doc, eq)); }, doc.equation);
}

void emit_json(const json& doc, std::ostream& os) { os << doc.dump(2) << '\n'; }

int cmd_solve(const Options& o, std::ostream& os) {
  SpecDocument doc = load(o);
  std::visit(
      [&](const auto& eq) {
        auto sol = o.oracle ? solve_partition_oracle(eq, o.degree) : solve_formal(eq, o.degree);
        emit_json(solution_to_json(sol), os);
      },
      doc.equation);
  return kExitOk;
}

int cmd_majorant(const Options& o, std::ostream& os) {
  SpecDocument doc = load(o);
  std::visit([&](const auto& eq) { emit_json(comparison_to_json(comparison_of(doc, eq)), os); }, doc.equation);
  return kExitOk;
}

int cmd_hille(const Options& o, std::ostream& os) {
  HillePoint hp = hille_point(float_comparison(load(o)));
  emit_json(hille_to_json(hp), os);
  return hp.status == HilleStatus::Failed ? kExitDomain : kExitOk;
}

IterationOptions<double> iteration_options(const Options& o) {
  IterationOptions<double> it;
  it.tol = o.tol;
  it.max_iter = o.max_iter;
  return it;
}

int cmd_iterate(const Options& o, std::ostream& os, std::ostream& err) {
  SpecDocument doc = load(o);
  if (o.x.empty()) {
    ComparisonEquation<double> cmp = float_comparison(doc);
    auto trace = iterate_comparison(cmp, parse_vector(o.X, "--X"), iteration_options(o));
    write_trace_csv(os, trace);
    err << "status: " << iteration_status_name(trace.status) << '\n';
    return kExitOk;
  }
  if (doc.kind == SpecKind::Comparison) throw ValidationError("primal iteration needs an equation spec, not a comparison spec");
  EquationSpec<double> eq = std::visit([](const auto& e) { return convert_equation<double>(e); }, doc.equation);
  ComparisonEquation<double> cmp = majorant(eq);
  std::vector<double> x = parse_vector(o.x, "--x").entries;
  LatticeVec<double> X = o.X.empty() ? norm(eq.profile_x, x) : parse_vector(o.X, "--X");
  try {
    auto trace = iterate_primal(eq, x, cmp, X, iteration_options(o));
    write_trace_csv(os, trace);
  } catch (const ConvergenceError& e) {
    throw DomainFailure(e.what());
  }
  return kExitOk;
}

int cmd_membership(const Options& o, std::ostream& os) {
  ComparisonEquation<double> cmp = float_comparison(load(o));
  auto m = membership(cmp, parse_vector(o.X, "--X"), o.budget, iteration_options(o));
  emit_json(membership_to_json(m), os);
  return kExitOk;
}

int cmd_region(const Options& o, std::ostream& os) {
  ComparisonEquation<double> cmp = float_comparison(load(o));
  RegionSample region = trace_graph(cmp, o.ymax, o.steps);
  write_region_csv(os, region);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& os) {
  SpecDocument doc = load(o);
  MajorantReport report = std::visit(
      [&](const auto& eq) {
        using T = std::decay_t<decltype(eq.psi[0].coefficient({}))>;
        auto cmp = majorant(eq);
        MajorantCheckOptions opts;
        opts.n_samples = o.samples;
        opts.seed = o.seed;
        return check_majorant_samples(eq, cmp, symmetric_box<T>(eq.dim_x + eq.dim_y, from_double<T>(o.box)), opts);
      },
      doc.equation);
  emit_json(report_to_json(report), os);
  return report.ok() ? kExitOk : kExitDomain;
}

int cmd_radius(const Options& o, std::ostream& os) {
  ComparisonEquation<double> cmp = float_comparison(load(o));
  // --tol is the bracket width here; each probe keeps the default step tolerance.
  RayOptions ray_opts;
  ray_opts.iteration.max_iter = o.budget;
  LatticeVec<double> dir = o.direction.empty() ? LatticeVec<double>(std::vector<double>(cmp.dim_X, 1.0))
                                               : parse_vector(o.direction, "--direction");
  RayRadius ray = radius_along_ray(cmp, dir, o.tol, o.budget, ray_opts);
  emit_json(ray_to_json(ray), os);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Series solutions of implicit equations y = psi(x, y) with majorant convergence certificates"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", o.spec, "Equation spec JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--mode", o.mode, "Override coefficient mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--out", o.out, "Write primary output to this file");
  };
  auto add_iteration = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "Absolute step tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-iter", o.max_iter, "Iteration budget");
  };

  auto* solve = app.add_subcommand("solve", "Formal series solution");
  add_common(solve);
  solve->add_option("--degree", o.degree, "Degree cap D")->check(CLI::Range(1u, 1000u));
  solve->add_flag("--oracle", o.oracle, "Use the set-partition recursion (D <= 6)");

  auto* maj = app.add_subcommand("majorant", "Positive-type comparison equation");
  add_common(maj);

  auto* hille = app.add_subcommand("hille", "Turning point of the scalar comparison graph");
  add_common(hille);

  auto* iterate = app.add_subcommand("iterate", "Successive approximation trace (CSV)");
  add_common(iterate);
  add_iteration(iterate);
  iterate->add_option("--X", o.X, "Norming-space point, comma separated")->delimiter(',');
  iterate->add_option("--x", o.x, "Primal point, comma separated")->delimiter(',');

  auto* member = app.add_subcommand("membership", "Classify X against the convergence region");
  add_common(member);
  add_iteration(member);
  member->add_option("--X", o.X, "Norming-space point, comma separated")->delimiter(',')->required();
  member->add_option("--budget", o.budget, "Iteration budget");

  auto* region = app.add_subcommand("region", "Sample the comparison graph (CSV)");
  add_common(region);
  region->add_option("--ymax", o.ymax, "Largest Y on the grid")->check(CLI::PositiveNumber);
  region->add_option("--steps", o.steps, "Grid intervals")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));

  auto* check = app.add_subcommand("check", "Sample the majorant inequalities");
  add_common(check);
  check->add_option("--samples", o.samples, "Points and increment pairs");
  check->add_option("--seed", o.seed, "Random seed");
  check->add_option("--box", o.box, "Half-width of the sampling box")->check(CLI::PositiveNumber);

  auto* radius = app.add_subcommand("radius", "Radius of the convergence region along a ray");
  add_common(radius);
  radius->add_option("--tol", o.tol, "Width of the returned bracket")->check(CLI::PositiveNumber);
  radius->add_option("--direction", o.direction, "Nonnegative direction, comma separated")->delimiter(',');
  radius->add_option("--budget", o.budget, "Iteration budget per probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "error: cannot open output file '" << o.out << "'\n";
      return kExitUsage;
    }
    os = &file;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, *os);
    if (maj->parsed()) return cmd_majorant(o, *os);
    if (hille->parsed()) return cmd_hille(o, *os);
    if (iterate->parsed()) return cmd_iterate(o, *os, err);
    if (member->parsed()) return cmd_membership(o, *os);
    if (region->parsed()) return cmd_region(o, *os);
    if (check->parsed()) return cmd_check(o, *os);
    if (radius->parsed()) return cmd_radius(o, *os);
  } catch (const DomainFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace majorant::cli
