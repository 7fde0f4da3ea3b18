#pragma once

// JSON documents for equations, series and results.
//
// Equation spec:
//   {"dim_x": p, "dim_y": q, "mode": "exact"|"float",
//    "profile_x": "scalar"|"componentwise"|"aggregate", "profile_y": ...,
//    "degree_cap": D, "kind": "equation"|"comparison" (optional),
//    "terms": [{"output": i, "alpha": [..p..], "beta": [..q..], "value": "1/3"}]}
//
// Series: [{"exponents": [...], "value": "p/q" | "<shortest decimal>"}]

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "majorant/hille_region.hpp"
#include "majorant/implicit_solver.hpp"
#include "majorant/kantorovich.hpp"
#include "majorant/majorant.hpp"

namespace majorant {

using nlohmann::json;

enum class SpecKind { Equation, Comparison };

using AnyEquation = std::variant<EquationSpec<Rational>, EquationSpec<double>>;

struct SpecDocument {
  SpecKind kind = SpecKind::Equation;
  AnyEquation equation;

  Mode mode() const { return equation.index() == 0 ? Mode::Exact : Mode::Float; }
};

/// Parses and validates a spec document. `mode_override` converts the
/// coefficients after they are read in the document's own mode.
SpecDocument parse_spec_text(std::string_view text, std::optional<Mode> mode_override = std::nullopt);
SpecDocument parse_spec(const std::filesystem::path& path, std::optional<Mode> mode_override = std::nullopt);

template <Scalar T>
json series_to_json(const Series<T>& s) {
  json out = json::array();
  for (const auto& [idx, c] : s.terms()) out.push_back({{"exponents", idx.exponents()}, {"value", format_scalar(c)}});
  return out;
}

template <Scalar T>
Series<T> series_from_json(const json& doc, std::size_t num_vars, unsigned degree_cap);

template <Scalar T>
json spec_to_json(const EquationSpec<T>& eq, SpecKind kind = SpecKind::Equation);

/// A comparison equation written as a spec document of kind "comparison"
/// with componentwise profiles.
template <Scalar T>
json comparison_to_json(const ComparisonEquation<T>& cmp);

template <Scalar T>
json solution_to_json(const SolutionSeries<T>& sol);

template <Scalar T>
SolutionSeries<T> solution_from_json(const json& doc);

template <Scalar T>
json membership_to_json(const Membership<T>& m) {
  json out{{"verdict", verdict_name(m.verdict)}, {"iterations_used", m.iterations_used}};
  auto vec = [](const LatticeVec<T>& v) {
    json a = json::array();
    for (const auto& e : v.entries) a.push_back(format_scalar(e));
    return a;
  };
  out["principal_Y"] = m.principal_Y ? vec(*m.principal_Y) : json(nullptr);
  out["divergence_witness"] = m.divergence_witness ? vec(*m.divergence_witness) : json(nullptr);
  return out;
}

json hille_to_json(const HillePoint& hp);
json report_to_json(const MajorantReport& report);
json ray_to_json(const RayRadius& ray);

}  // namespace majorant
