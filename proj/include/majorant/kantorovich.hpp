#pragma once

// Successive approximation for y = psi(x, y) paired with the monotone
// iteration Y <- Psi(X, Y) of a comparison equation.
//
// All statements concern the truncated polynomials psi and Psi. Float runs
// use ordinary rounding; no directed rounding is attempted.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "majorant/lattice_norm.hpp"
#include "majorant/majorant.hpp"

namespace majorant {

enum class IterationStatus { Converged, Diverged, Unresolved };
enum class Verdict { Inside, Outside, Unresolved };

std::string_view iteration_status_name(IterationStatus s);
std::string_view verdict_name(Verdict v);

template <Scalar T>
struct IterationOptions {
  std::size_t max_iter = 10000;
  T tol = from_double<T>(1e-12);
  T divergence_threshold = T(1000000000);
  double monotone_slack = 1e-12;  // relative, float mode only
};

template <Scalar T>
struct IterationTrace {
  std::vector<LatticeVec<T>> iterates_Y;            // Y^(0) = 0, Y^(1), ...
  std::vector<std::vector<T>> iterates_y;           // primal iterates when paired
  bool monotone_ok = true;
  bool converged = false;
  IterationStatus status = IterationStatus::Unresolved;
  T residual_norm = 0;                              // max |Y - Psi(X, Y)| at the last iterate
  std::vector<LatticeVec<T>> error_bounds;          // Y_final - Y^(p), filled when converged

  std::size_t final_index() const { return iterates_Y.empty() ? 0 : iterates_Y.size() - 1; }
  const LatticeVec<T>& final_Y() const { return iterates_Y.back(); }
};

template <Scalar T>
struct Membership {
  Verdict verdict = Verdict::Unresolved;
  std::optional<LatticeVec<T>> principal_Y;
  std::optional<LatticeVec<T>> divergence_witness;
  std::size_t iterations_used = 0;
};

namespace detail {

template <Scalar T>
bool exceeds(const LatticeVec<T>& v, const T& threshold) {
  for (const auto& e : v.entries)
    if (!is_finite(e) || e > threshold) return true;
  return false;
}

template <Scalar T>
T max_abs_difference(const LatticeVec<T>& a, const LatticeVec<T>& b) {
  T m = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    T d = abs_value(T(a[i] - b[i]));
    if (d > m) m = d;
  }
  return m;
}

template <Scalar T>
void require_nonnegative(const LatticeVec<T>& v, const char* what) {
  if (!is_nonnegative(v)) throw ValidationError(std::string(what) + " must be entrywise nonnegative");
}

}  // namespace detail

/// Monotone iteration Y^(p+1) = Psi(X, Y^(p)) from Y^(0) = 0.
///
/// Stops when every entry moves by at most tol (Converged), when an entry
/// exceeds the divergence threshold (Diverged; nondecreasing iterates cannot
/// come back), or when max_iter steps are used (Unresolved). A decrease
/// beyond the slack throws MonotonicityError.
template <Scalar T>
IterationTrace<T> iterate_comparison(const ComparisonEquation<T>& cmp, const LatticeVec<T>& X,
                                     const IterationOptions<T>& opts = {}) {
  if (X.dimension() != cmp.dim_X) throw DimensionError("X has the wrong dimension");
  detail::require_nonnegative(X, "X");
  IterationTrace<T> trace;
  trace.iterates_Y.push_back(LatticeVec<T>::zeros(cmp.dim_Y));
  for (std::size_t p = 0; p < opts.max_iter; ++p) {
    const LatticeVec<T>& cur = trace.iterates_Y.back();
    LatticeVec<T> next = cmp.eval(X, cur);
    for (std::size_t i = 0; i < next.dimension(); ++i) {
      bool decreased;
      if constexpr (std::same_as<T, Rational>) {
        decreased = next[i] < cur[i];
      } else {
        decreased = next[i] < cur[i] - opts.monotone_slack * std::max(1.0, std::fabs(cur[i]));
      }
      if (decreased) {
        trace.monotone_ok = false;
        throw MonotonicityError("comparison iterate decreased at step " + std::to_string(p + 1));
      }
    }
    bool diverged = detail::exceeds(next, opts.divergence_threshold);
    T step = diverged ? T(0) : detail::max_abs_difference(next, cur);
    trace.iterates_Y.push_back(std::move(next));
    if (diverged) {
      trace.status = IterationStatus::Diverged;
      return trace;
    }
    if (step <= opts.tol) {
      trace.status = IterationStatus::Converged;
      trace.converged = true;
      break;
    }
  }
  const LatticeVec<T>& last = trace.iterates_Y.back();
  trace.residual_norm = detail::max_abs_difference(last, cmp.eval(X, last));
  if (trace.converged)
    for (const auto& Y : trace.iterates_Y) trace.error_bounds.push_back(lattice_sub(last, Y));
  return trace;
}

/// Successive approximation y^(p+1) = psi(x, y^(p)) from 0, paired with the
/// comparison run at X >= ||x||. Produces one primal iterate per comparison
/// iterate; error_bounds[p] = Y(X) - Y^(p)(X) bounds ||y(x) - y^(p)(x)||.
template <Scalar T>
IterationTrace<T> iterate_primal(const EquationSpec<T>& eq, const std::vector<T>& x, const ComparisonEquation<T>& cmp,
                                 const LatticeVec<T>& X, const IterationOptions<T>& opts = {}) {
  if (x.size() != eq.dim_x) throw DimensionError("x has the wrong dimension");
  if (cmp.dim_X != eq.profile_x.norming_dim() || cmp.dim_Y != eq.profile_y.norming_dim())
    throw DimensionError("comparison equation does not match the equation's norming spaces");
  if (!lattice_leq(norm(eq.profile_x, x), X)) throw ValidationError("norm(x) is not bounded by X");
  IterationTrace<T> trace = iterate_comparison(cmp, X, opts);
  if (!trace.converged)
    throw ConvergenceError("comparison iteration did not converge; no error certificate is available");
  std::vector<T> y(eq.dim_y, T(0));
  std::vector<T> point(eq.dim_x + eq.dim_y);
  trace.iterates_y.push_back(y);
  for (std::size_t p = 1; p < trace.iterates_Y.size(); ++p) {
    std::copy(x.begin(), x.end(), point.begin());
    std::copy(y.begin(), y.end(), point.begin() + static_cast<std::ptrdiff_t>(eq.dim_x));
    y = series_eval(eq.psi, std::span<const T>(point));
    trace.iterates_y.push_back(y);
  }
  return trace;
}

/// Y_final - Y^(p) for a converged trace.
template <Scalar T>
LatticeVec<T> error_bound(const IterationTrace<T>& trace, std::size_t p) {
  if (!trace.converged) throw ConvergenceError("error bounds need a converged trace");
  if (p > trace.final_index()) throw DimensionError("iterate index beyond the end of the trace");
  return trace.error_bounds[p];
}

/// Classifies X against the convergence region of the comparison iteration.
template <Scalar T>
Membership<T> membership(const ComparisonEquation<T>& cmp, const LatticeVec<T>& X, std::size_t budget = 10000,
                         IterationOptions<T> opts = {}) {
  opts.max_iter = budget;
  IterationTrace<T> trace = iterate_comparison(cmp, X, opts);
  Membership<T> m;
  m.iterations_used = trace.final_index();
  switch (trace.status) {
    case IterationStatus::Converged:
      m.verdict = Verdict::Inside;
      m.principal_Y = trace.final_Y();
      break;
    case IterationStatus::Diverged:
      m.verdict = Verdict::Outside;
      m.divergence_witness = trace.final_Y();
      break;
    case IterationStatus::Unresolved:
      m.verdict = Verdict::Unresolved;
      break;
  }
  return m;
}

/// Y_tilde >= Psi(X, Y_tilde) entrywise. True certifies that the principal
/// solution at X exists and lies below Y_tilde.
template <Scalar T>
bool certificate_check(const ComparisonEquation<T>& cmp, const LatticeVec<T>& X, const LatticeVec<T>& Y_tilde) {
  detail::require_nonnegative(X, "X");
  detail::require_nonnegative(Y_tilde, "Y_tilde");
  return lattice_leq(cmp.eval(X, Y_tilde), Y_tilde);
}

/// CSV with columns p, Y_i..., y_i... (paired runs), bound_i... (converged
/// runs), delta_i (Y^(p) - Y^(p-1), empty at p = 0).
template <Scalar T>
void write_trace_csv(std::ostream& os, const IterationTrace<T>& trace) {
  const std::size_t nY = trace.iterates_Y.empty() ? 0 : trace.iterates_Y.front().dimension();
  const std::size_t ny = trace.iterates_y.empty() ? 0 : trace.iterates_y.front().size();
  const bool bounds = !trace.error_bounds.empty();
  os << "p";
  for (std::size_t i = 0; i < nY; ++i) os << ",Y" << i;
  for (std::size_t i = 0; i < ny; ++i) os << ",y" << i;
  if (bounds)
    for (std::size_t i = 0; i < nY; ++i) os << ",bound" << i;
  for (std::size_t i = 0; i < nY; ++i) os << ",delta" << i;
  os << '\n';
  for (std::size_t p = 0; p < trace.iterates_Y.size(); ++p) {
    os << p;
    for (const auto& v : trace.iterates_Y[p].entries) os << ',' << format_scalar(v);
    if (ny > 0)
      for (const auto& v : trace.iterates_y.at(p)) os << ',' << format_scalar(v);
    if (bounds)
      for (const auto& v : trace.error_bounds[p].entries) os << ',' << format_scalar(v);
    for (std::size_t i = 0; i < nY; ++i) {
      os << ',';
      if (p > 0) os << format_scalar(T(trace.iterates_Y[p][i] - trace.iterates_Y[p - 1][i]));
    }
    os << '\n';
  }
}

}  // namespace majorant
