#include "majorant/hille_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace majorant {

std::string_view hille_status_name(HilleStatus s) {
  switch (s) {
    case HilleStatus::Found: return "Found";
    case HilleStatus::Unbounded: return "Unbounded";
    case HilleStatus::Failed: return "Failed";
  }
  return "Failed";
}

namespace {

// Psi and its derivatives for a scalar comparison equation in (X, Y).
class ScalarGraph {
 public:
  explicit ScalarGraph(const ComparisonEquation<double>& cmp) {
    if (cmp.dim_X != 1 || cmp.dim_Y != 1) throw DimensionError("scalar comparison equation required (dim_X = dim_Y = 1)");
    validate(cmp);
    psi_ = cmp.Psi[0];
    d_x_ = partial_derivative(psi_, 0);
    d_y_ = partial_derivative(psi_, 1);
    d_xy_ = partial_derivative(d_y_, 0);
    d_yy_ = partial_derivative(d_y_, 1);
    for (const auto& [idx, c] : psi_.terms()) {
      if (idx[0] > 0) x_dependent_ = true;
      if (idx[1] >= 2) nonlinear_in_y_ = true;
    }
  }

  double psi(double X, double Y) const { return eval(psi_, X, Y); }
  double dX(double X, double Y) const { return eval(d_x_, X, Y); }
  double dY(double X, double Y) const { return eval(d_y_, X, Y); }
  double dXY(double X, double Y) const { return eval(d_xy_, X, Y); }
  double dYY(double X, double Y) const { return eval(d_yy_, X, Y); }
  bool x_dependent() const { return x_dependent_; }
  bool nonlinear_in_y() const { return nonlinear_in_y_; }

  // X >= 0 with Y = Psi(X, Y); Psi is nondecreasing in X on the positive cone.
  std::optional<double> solve_X(double Y) const {
    auto h = [&](double X) { return psi(X, Y) - Y; };
    double h0 = h(0.0);
    if (h0 > 0.0) return std::nullopt;
    if (h0 == 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (h(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi) || hi > 1e300) return std::nullopt;
    }
    for (int it = 0; it < 2000; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (h(mid) < 0.0) lo = mid;
      else hi = mid;
    }
    return std::fabs(h(lo)) < std::fabs(h(hi)) ? lo : hi;
  }

 private:
  static double eval(const Series<double>& s, double X, double Y) {
    const double p[2] = {X, Y};
    return series_eval(s, std::span<const double>(p, 2));
  }

  Series<double> psi_, d_x_, d_y_, d_xy_, d_yy_;
  bool x_dependent_ = false;
  bool nonlinear_in_y_ = false;
};

HillePoint finish(const ScalarGraph& g, double X, double Y, HilleStatus status, std::string note = {}) {
  HillePoint hp;
  hp.X_star = X;
  hp.Y_star = Y;
  hp.residual_fixed = std::fabs(Y - g.psi(X, Y));
  hp.residual_derivative = std::fabs(1.0 - g.dY(X, Y));
  hp.status = status;
  hp.note = std::move(note);
  return hp;
}

}  // namespace

HillePoint hille_point(const ComparisonEquation<double>& cmp, const HilleOptions& opts) {
  ScalarGraph g(cmp);
  if (!g.x_dependent()) {
    HillePoint hp;
    hp.status = HilleStatus::Failed;
    hp.note = "Psi does not depend on X; the graph is not a curve over X";
    return hp;
  }
  if (!g.nonlinear_in_y()) {
    HillePoint hp;
    hp.status = HilleStatus::Unbounded;
    hp.note = "Psi is at most linear in Y; dPsi/dY stays below 1 along the graph";
    return hp;
  }

  // Continuation along Gamma in Y until dPsi/dY reaches 1.
  auto gap = [&](double Y, double X) { return g.dY(X, Y) - 1.0; };
  double window_lo = 0.0;
  double window_hi = opts.initial_Y_window;
  double prev_Y = 0.0, prev_X = 0.0;
  std::optional<std::pair<double, double>> bracket;
  while (!bracket) {
    if (window_lo > opts.max_Y) {
      return finish(g, prev_X, prev_Y, HilleStatus::Unbounded, "dPsi/dY stays below 1 over the traced range");
    }
    const double h = (window_hi - window_lo) / static_cast<double>(opts.grid_steps);
    for (std::size_t k = 1; k <= opts.grid_steps; ++k) {
      double Y = window_lo + h * static_cast<double>(k);
      auto X = g.solve_X(Y);
      if (!X) return finish(g, prev_X, prev_Y, HilleStatus::Failed, "graph ended before dPsi/dY reached 1");
      if (gap(Y, *X) >= 0.0) {
        bracket = std::pair{prev_Y, Y};
        break;
      }
      if (*X < prev_X) return finish(g, prev_X, prev_Y, HilleStatus::Failed, "X decreased before the turning point; graph is not unimodal");
      prev_Y = Y;
      prev_X = *X;
    }
    window_lo = window_hi;
    window_hi *= 2.0;
  }

  // Bisection on dPsi/dY - 1 along the graph.
  double lo = bracket->first, hi = bracket->second;
  for (int it = 0; it < 2000; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    auto X = g.solve_X(mid);
    if (!X) return finish(g, prev_X, mid, HilleStatus::Failed, "graph point missing inside the bracket");
    if (gap(mid, *X) < 0.0) lo = mid;
    else hi = mid;
  }
  double Y = std::fabs(gap(lo, *g.solve_X(lo))) < std::fabs(gap(hi, *g.solve_X(hi))) ? lo : hi;
  double X = *g.solve_X(Y);

  // Newton polish of G(X, Y) = (Y - Psi, 1 - dPsi/dY).
  auto residual = [&](double x, double y) {
    return std::max(std::fabs(y - g.psi(x, y)), std::fabs(1.0 - g.dY(x, y)));
  };
  double best = residual(X, Y);
  for (std::size_t it = 0; it < opts.newton_max_iter && best > opts.residual_tol; ++it) {
    double f1 = Y - g.psi(X, Y);
    double f2 = 1.0 - g.dY(X, Y);
    double j11 = -g.dX(X, Y), j12 = 1.0 - g.dY(X, Y);
    double j21 = -g.dXY(X, Y), j22 = -g.dYY(X, Y);
    double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) break;
    double dx = (-f1 * j22 + f2 * j12) / det;
    double dy = (-f2 * j11 + f1 * j21) / det;
    double r = residual(X + dx, Y + dy);
    if (!(r < best)) break;
    X += dx;
    Y += dy;
    best = r;
  }
  if (best > opts.residual_tol) return finish(g, X, Y, HilleStatus::Failed, "Newton polish stalled above the residual tolerance");
  return finish(g, X, Y, HilleStatus::Found);
}

std::optional<double> solve_X_on_graph(const ComparisonEquation<double>& cmp, double Y) {
  return ScalarGraph(cmp).solve_X(Y);
}

RegionSample trace_graph(const ComparisonEquation<double>& cmp, double Y_max, std::size_t steps) {
  ScalarGraph g(cmp);
  if (!g.x_dependent()) throw ValidationError("Psi does not depend on X; cannot solve for X along the graph");
  if (steps == 0 || !(Y_max > 0.0)) throw ValidationError("trace_graph needs Y_max > 0 and at least one step");
  RegionSample out;
  for (std::size_t k = 0; k <= steps; ++k) {
    double Y = Y_max * static_cast<double>(k) / static_cast<double>(steps);
    auto X = g.solve_X(Y);
    if (!X) {
      out.omitted_Y.push_back(Y);
      continue;
    }
    out.points.push_back({*X, Y, g.dY(*X, Y)});
  }
  if (!out.points.empty()) {
    auto it = std::max_element(out.points.begin(), out.points.end(),
                               [](const GraphPoint& a, const GraphPoint& b) { return a.X < b.X; });
    out.turning_index = static_cast<std::size_t>(it - out.points.begin());
  }
  return out;
}

RayRadius radius_along_ray(const ComparisonEquation<double>& cmp, const LatticeVec<double>& direction, double tol,
                           std::size_t budget, const RayOptions& opts) {
  if (direction.dimension() != cmp.dim_X) throw DimensionError("direction has the wrong dimension");
  if (!is_nonnegative(direction) || max_entry(direction) <= 0.0)
    throw ValidationError("direction must be nonzero and entrywise nonnegative");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");

  RayRadius out;
  out.t_out = std::numeric_limits<double>::infinity();
  auto classify = [&](double t) {
    ++out.probes;
    return membership(cmp, lattice_scale(direction, t), budget, opts.iteration).verdict;
  };
  auto record = [&](double t, Verdict v) {
    if (v == Verdict::Inside) out.t_in = std::max(out.t_in, t);
    if (v == Verdict::Outside) out.t_out = std::min(out.t_out, t);
  };

  constexpr std::size_t kMaxProbes = 400;
  while (out.probes < kMaxProbes) {
    if (std::isinf(out.t_out) && out.t_in > opts.probe_cap) {
      out.unbounded = true;
      return out;
    }
    if (!std::isinf(out.t_out) && out.t_out - out.t_in <= tol) break;
    double m = std::isinf(out.t_out) ? std::max(1.0, 2.0 * out.t_in) : 0.5 * (out.t_in + out.t_out);
    Verdict v = classify(m);
    if (v != Verdict::Unresolved) {
      record(m, v);
      continue;
    }
    // Near the boundary: step to either side of the unresolved probe.
    double half = 0.5 * (m - out.t_in);
    double left = m - half;
    double right = std::isinf(out.t_out) ? m + half : 0.5 * (m + out.t_out);
    Verdict vl = classify(left);
    Verdict vr = classify(right);
    record(left, vl);
    record(right, vr);
    if (vl != Verdict::Inside && vr != Verdict::Outside) break;
  }
  return out;
}

RatioEstimate empirical_radius_from_coefficients(const std::vector<double>& coeffs) {
  constexpr std::size_t kMinRun = 10;
  for (std::size_t n = coeffs.size(); n-- > 0;) {
    if (n + 1 < kMinRun) break;
    bool run = true;
    for (std::size_t k = n + 1 - kMinRun; k <= n; ++k)
      if (coeffs[k] == 0.0) run = false;
    if (run) return {std::fabs(coeffs[n - 1] / coeffs[n]), static_cast<unsigned>(n)};
  }
  throw ValidationError("empirical radius needs at least 10 consecutive nonzero coefficients");
}

void write_region_csv(std::ostream& os, const RegionSample& region) {
  os << "Y,X,dPsi_dY,is_turning\n";
  for (std::size_t i = 0; i < region.points.size(); ++i) {
    const auto& p = region.points[i];
    os << format_scalar(p.Y) << ',' << format_scalar(p.X) << ',' << format_scalar(p.dPsi_dY) << ','
       << (region.turning_index && *region.turning_index == i ? 1 : 0) << '\n';
  }
}

}  // namespace majorant
