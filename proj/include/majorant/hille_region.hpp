#pragma once

// Geometry of the comparison graph Gamma = {(X, Y) >= 0 : Y = Psi(X, Y)}:
// the turning point where dPsi/dY = 1, the traced graph, radii along rays
// for vector X, and the ratio-test radius of a computed series.

#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "majorant/implicit_solver.hpp"
#include "majorant/kantorovich.hpp"
#include "majorant/majorant.hpp"

namespace majorant {

enum class HilleStatus { Found, Unbounded, Failed };

std::string_view hille_status_name(HilleStatus s);

/// Turning point (X*, Y*) of Gamma: Y* = Psi(X*, Y*) and dPsi/dY(X*, Y*) = 1.
struct HillePoint {
  double X_star = 0.0;
  double Y_star = 0.0;
  double residual_fixed = 0.0;       // |Y* - Psi(X*, Y*)|
  double residual_derivative = 0.0;  // |1 - dPsi/dY(X*, Y*)|
  HilleStatus status = HilleStatus::Failed;
  std::string note;
};

struct HilleOptions {
  double residual_tol = 1e-12;
  double initial_Y_window = 1.0;
  double max_Y = 1e6;            // give up (Unbounded) past this Y
  std::size_t grid_steps = 256;  // per window while bracketing the crossing
  std::size_t newton_max_iter = 50;
};

HillePoint hille_point(const ComparisonEquation<double>& cmp, const HilleOptions& opts = {});

struct GraphPoint {
  double X = 0.0;
  double Y = 0.0;
  double dPsi_dY = 0.0;
};

struct RegionSample {
  std::vector<GraphPoint> points;
  std::optional<std::size_t> turning_index;  // index of the maximal X
  std::vector<double> omitted_Y;             // grid values with no X >= 0 on Gamma
};

/// Samples Gamma on Y = k * Y_max / steps, k = 0..steps, solving
/// Y = Psi(X, Y) for X >= 0 by bisection.
RegionSample trace_graph(const ComparisonEquation<double>& cmp, double Y_max, std::size_t steps);

/// Solves Y = Psi(X, Y) for X >= 0 at fixed Y; nullopt if no such X exists.
std::optional<double> solve_X_on_graph(const ComparisonEquation<double>& cmp, double Y);

/// Certified bracket [t_in, t_out] for sup{t : t * direction is Inside}.
struct RayRadius {
  double t_in = 0.0;   // largest probe classified Inside
  double t_out = 0.0;  // smallest probe classified Outside (infinity when unbounded)
  bool unbounded = false;
  std::size_t probes = 0;

  double estimate() const { return unbounded ? t_out : 0.5 * (t_in + t_out); }
  double width() const { return t_out - t_in; }
};

struct RayOptions {
  double probe_cap = 1e6;
  IterationOptions<double> iteration{};
};

/// Exponential bracketing followed by bisection on membership verdicts.
/// Unresolved probes (near the boundary) are side-stepped by probing the
/// quarter points; when those are unresolved too the bracket is returned as is.
RayRadius radius_along_ray(const ComparisonEquation<double>& cmp, const LatticeVec<double>& direction, double tol,
                           std::size_t budget = 10000, const RayOptions& opts = {});

struct RatioEstimate {
  double estimate = 0.0;
  unsigned n = 0;
};

RatioEstimate empirical_radius_from_coefficients(const std::vector<double>& coeffs);

/// |c_{n-1} / c_n| at the largest n whose run of consecutive nonzero
/// coefficients has length >= 10. Scalar series in one variable only.
template <Scalar T>
RatioEstimate empirical_radius(const SolutionSeries<T>& sol) {
  if (sol.phi.size() != 1 || sol.phi.num_vars() != 1)
    throw DimensionError("empirical radius needs a scalar series in one variable");
  std::vector<double> coeffs(sol.phi.degree_cap() + 1, 0.0);
  for (const auto& [idx, c] : sol.phi[0].terms()) coeffs[idx.total_degree()] = to_double(c);
  return empirical_radius_from_coefficients(coeffs);
}

/// CSV with columns Y, X, dPsi_dY, is_turning.
void write_region_csv(std::ostream& os, const RegionSample& region);

}  // namespace majorant
