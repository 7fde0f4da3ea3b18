#include "majorant/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace majorant {

namespace {

const json& require(const json& doc, const char* key, const std::string& ctx) {
  if (!doc.is_object()) throw ParseError(ctx + ": expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(ctx + ": missing field '" + key + "'");
  return *it;
}

std::size_t get_count(const json& doc, const char* key, const std::string& ctx) {
  const json& v = require(doc, key, ctx);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(ctx + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

std::string get_string(const json& doc, const char* key, const std::string& ctx) {
  const json& v = require(doc, key, ctx);
  if (!v.is_string()) throw ParseError(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<unsigned> get_exponents(const json& v, std::size_t expected, const std::string& ctx) {
  if (!v.is_array()) throw ParseError(ctx + ": expected an array of exponents");
  if (v.size() != expected)
    throw ParseError(ctx + ": expected " + std::to_string(expected) + " exponents, got " + std::to_string(v.size()));
  std::vector<unsigned> out;
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0) throw ParseError(ctx + ": exponents must be non-negative integers");
    out.push_back(e.get<unsigned>());
  }
  return out;
}

template <Scalar T>
T get_value(const json& term, const std::string& ctx) {
  const json& v = require(term, "value", ctx);
  if (!v.is_string()) throw ParseError(ctx + ".value: expected a string literal");
  try {
    return parse_scalar<T>(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(ctx + ".value: " + e.what());
  }
}

template <Scalar T>
EquationSpec<T> parse_equation(const json& doc, SpecKind kind) {
  const std::string ctx = "spec";
  const std::size_t dim_x = get_count(doc, "dim_x", ctx);
  const std::size_t dim_y = get_count(doc, "dim_y", ctx);
  const std::size_t cap = get_count(doc, "degree_cap", ctx);
  if (dim_x == 0 || dim_y == 0) throw ValidationError("dim_x and dim_y must be positive");
  if (cap < 1) throw ValidationError("degree_cap must be at least 1");

  auto profile = [&](const char* key, std::size_t dim) {
    if (kind == SpecKind::Comparison && !doc.contains(key)) return NormProfile(NormKind::Componentwise, dim);
    try {
      return NormProfile(parse_norm_kind(get_string(doc, key, ctx)), dim);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(key) + ": " + e.what());
    }
  };
  NormProfile px = profile("profile_x", dim_x);
  NormProfile py = profile("profile_y", dim_y);

  const json& terms = require(doc, "terms", ctx);
  if (!terms.is_array()) throw ParseError("spec.terms: expected an array");
  SeriesMap<T> psi(dim_y, dim_x + dim_y, static_cast<unsigned>(cap));
  std::set<std::pair<std::size_t, std::vector<unsigned>>> seen;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string tctx = "spec.terms[" + std::to_string(k) + "]";
    const json& term = terms[k];
    std::size_t output = get_count(term, "output", tctx);
    if (output >= dim_y) throw ParseError(tctx + ".output: must be below dim_y");
    std::vector<unsigned> alpha = get_exponents(require(term, "alpha", tctx), dim_x, tctx + ".alpha");
    std::vector<unsigned> beta = get_exponents(require(term, "beta", tctx), dim_y, tctx + ".beta");
    T value = get_value<T>(term, tctx);
    unsigned m = 0, n = 0;
    for (unsigned e : alpha) m += e;
    for (unsigned e : beta) n += e;
    if (m == 0 && n == 0) throw ValidationError(tctx + ": constant term (psi(0,0) must be 0)");
    if (m == 0 && n == 1) throw ValidationError(tctx + ": linear y term (a01 must be 0)");
    if (m + n > cap) throw ValidationError(tctx + ": degree " + std::to_string(m + n) + " exceeds degree_cap");
    if (kind == SpecKind::Comparison && value < 0)
      throw ValidationError(tctx + ": negative coefficient in a comparison equation (positive type required)");
    std::vector<unsigned> exps = alpha;
    exps.insert(exps.end(), beta.begin(), beta.end());
    if (!seen.emplace(output, exps).second) throw ValidationError(tctx + ": duplicate term");
    psi[output].set(MultiIndex(std::move(exps)), value);
  }
  return make_equation(std::move(psi), dim_x, px, py);
}

}  // namespace

SpecDocument parse_spec_text(std::string_view text, std::optional<Mode> mode_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("spec: expected a JSON object");
  SpecDocument out;
  if (doc.contains("kind")) {
    std::string kind = get_string(doc, "kind", "spec");
    if (kind == "equation") out.kind = SpecKind::Equation;
    else if (kind == "comparison") out.kind = SpecKind::Comparison;
    else throw ParseError("spec.kind: expected 'equation' or 'comparison'");
  }
  Mode mode = parse_mode(get_string(doc, "mode", "spec"));
  if (mode == Mode::Exact) {
    out.equation = parse_equation<Rational>(doc, out.kind);
  } else {
    out.equation = parse_equation<double>(doc, out.kind);
  }
  if (mode_override && *mode_override != mode) {
    if (*mode_override == Mode::Float) {
      out.equation = convert_equation<double>(std::get<EquationSpec<Rational>>(out.equation));
    } else {
      out.equation = convert_equation<Rational>(std::get<EquationSpec<double>>(out.equation));
    }
  }
  return out;
}

SpecDocument parse_spec(const std::filesystem::path& path, std::optional<Mode> mode_override) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), mode_override);
}

template <Scalar T>
Series<T> series_from_json(const json& doc, std::size_t num_vars, unsigned degree_cap) {
  if (!doc.is_array()) throw ParseError("series: expected an array of terms");
  Series<T> out(num_vars, degree_cap);
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const std::string ctx = "series[" + std::to_string(k) + "]";
    auto exps = get_exponents(require(doc[k], "exponents", ctx), num_vars, ctx + ".exponents");
    MultiIndex idx(std::move(exps));
    if (idx.total_degree() > degree_cap) throw ValidationError(ctx + ": degree exceeds degree_cap");
    out.add_to(idx, get_value<T>(doc[k], ctx));
  }
  return out;
}

template <Scalar T>
json spec_to_json(const EquationSpec<T>& eq, SpecKind kind) {
  json terms = json::array();
  for (std::size_t i = 0; i < eq.dim_y; ++i) {
    for (const auto& [idx, c] : eq.psi[i].terms()) {
      const auto& e = idx.exponents();
      std::vector<unsigned> alpha(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(eq.dim_x));
      std::vector<unsigned> beta(e.begin() + static_cast<std::ptrdiff_t>(eq.dim_x), e.end());
      terms.push_back({{"output", i}, {"alpha", alpha}, {"beta", beta}, {"value", format_scalar(c)}});
    }
  }
  return json{{"kind", kind == SpecKind::Comparison ? "comparison" : "equation"},
              {"dim_x", eq.dim_x},
              {"dim_y", eq.dim_y},
              {"mode", mode_name(eq.mode())},
              {"profile_x", norm_kind_name(eq.profile_x.kind)},
              {"profile_y", norm_kind_name(eq.profile_y.kind)},
              {"degree_cap", eq.degree_cap()},
              {"terms", std::move(terms)}};
}

template <Scalar T>
json comparison_to_json(const ComparisonEquation<T>& cmp) {
  EquationSpec<T> eq{cmp.dim_X, cmp.dim_Y, cmp.Psi, NormProfile(NormKind::Componentwise, cmp.dim_X),
                     NormProfile(NormKind::Componentwise, cmp.dim_Y)};
  return spec_to_json(eq, SpecKind::Comparison);
}

template <Scalar T>
json solution_to_json(const SolutionSeries<T>& sol) {
  json comps = json::array();
  for (const auto& c : sol.phi.components()) comps.push_back(series_to_json(c));
  return json{{"source", solution_source_name(sol.source)},
              {"degree_cap", sol.degree_cap},
              {"mode", mode_name(mode_of<T>())},
              {"dim_x", sol.phi.num_vars()},
              {"dim_y", sol.phi.size()},
              {"components", std::move(comps)}};
}

template <Scalar T>
SolutionSeries<T> solution_from_json(const json& doc) {
  const std::string ctx = "solution";
  if (parse_mode(get_string(doc, "mode", ctx)) != mode_of<T>()) throw ModeError("solution mode does not match");
  const std::size_t dim_x = get_count(doc, "dim_x", ctx);
  const std::size_t dim_y = get_count(doc, "dim_y", ctx);
  const auto cap = static_cast<unsigned>(get_count(doc, "degree_cap", ctx));
  std::string source = get_string(doc, "source", ctx);
  const json& comps = require(doc, "components", ctx);
  if (!comps.is_array() || comps.size() != dim_y) throw ParseError("solution.components: expected dim_y series");
  std::vector<Series<T>> series;
  for (const auto& c : comps) series.push_back(series_from_json<T>(c, dim_x, cap));
  SolutionSource src;
  if (source == "iterative") src = SolutionSource::Iterative;
  else if (source == "partition_oracle") src = SolutionSource::PartitionOracle;
  else throw ParseError("solution.source: unknown source '" + source + "'");
  return {SeriesMap<T>(std::move(series), dim_x, cap), cap, src};
}

json hille_to_json(const HillePoint& hp) {
  json out{{"X_star", hp.X_star},
           {"Y_star", hp.Y_star},
           {"residuals", {{"fixed", hp.residual_fixed}, {"derivative", hp.residual_derivative}}},
           {"status", hille_status_name(hp.status)}};
  if (!hp.note.empty()) out["note"] = hp.note;
  return out;
}

json report_to_json(const MajorantReport& report) {
  return json{{"values_checked", report.values_checked},
              {"increments_checked", report.increments_checked},
              {"violations", report.violations},
              {"max_excess", report.max_excess},
              {"first_violations", report.first_violations}};
}

json ray_to_json(const RayRadius& ray) {
  return json{{"t_in", ray.t_in},
              {"t_out", std::isinf(ray.t_out) ? json(nullptr) : json(ray.t_out)},
              {"unbounded", ray.unbounded},
              {"estimate", ray.unbounded ? json(nullptr) : json(ray.estimate())},
              {"probes", ray.probes}};
}

template Series<Rational> series_from_json<Rational>(const json&, std::size_t, unsigned);
template Series<double> series_from_json<double>(const json&, std::size_t, unsigned);
template json spec_to_json<Rational>(const EquationSpec<Rational>&, SpecKind);
template json spec_to_json<double>(const EquationSpec<double>&, SpecKind);
template json comparison_to_json<Rational>(const ComparisonEquation<Rational>&);
template json comparison_to_json<double>(const ComparisonEquation<double>&);
template json solution_to_json<Rational>(const SolutionSeries<Rational>&);
template json solution_to_json<double>(const SolutionSeries<double>&);
template SolutionSeries<Rational> solution_from_json<Rational>(const json&);
template SolutionSeries<double> solution_from_json<double>(const json&);

}  // namespace majorant
