#include "majorant/implicit_solver.hpp"
#include "majorant/kantorovich.hpp"
#include "majorant/lattice_norm.hpp"

namespace majorant {

std::string_view norm_kind_name(NormKind k) {
  switch (k) {
    case NormKind::Scalar: return "scalar";
    case NormKind::Componentwise: return "componentwise";
    case NormKind::Aggregate: return "aggregate";
  }
  return "componentwise";
}

NormKind parse_norm_kind(std::string_view name) {
  if (name == "scalar") return NormKind::Scalar;
  if (name == "componentwise") return NormKind::Componentwise;
  if (name == "aggregate") return NormKind::Aggregate;
  throw ParseError("unknown norm profile '" + std::string(name) + "' (expected scalar, componentwise or aggregate)");
}

std::string_view solution_source_name(SolutionSource s) {
  return s == SolutionSource::Iterative ? "iterative" : "partition_oracle";
}

std::string_view iteration_status_name(IterationStatus s) {
  switch (s) {
    case IterationStatus::Converged: return "Converged";
    case IterationStatus::Diverged: return "Diverged";
    case IterationStatus::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "Inside";
    case Verdict::Outside: return "Outside";
    case Verdict::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

}  // namespace majorant
