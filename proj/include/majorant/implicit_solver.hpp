#pragma once

// Formal power-series solution y = phi(x) of y = psi(x, y).

#include <cstddef>
#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "majorant/majorant.hpp"
#include "majorant/series.hpp"

namespace majorant {

enum class SolutionSource { Iterative, PartitionOracle };

std::string_view solution_source_name(SolutionSource s);

template <Scalar T>
struct SolutionSeries {
  SeriesMap<T> phi;  // dim_x variables, dim_y outputs
  unsigned degree_cap = 0;
  SolutionSource source = SolutionSource::Iterative;
};

template <Scalar T>
using RoundObserver = std::function<void(unsigned round, const SeriesMap<T>& phi)>;

namespace detail {

// psi(x, phi(x)) truncated at the cap of phi.
template <Scalar T>
SeriesMap<T> substitute_solution(const SeriesMap<T>& psi, std::size_t dim_x, const SeriesMap<T>& phi) {
  const unsigned cap = phi.degree_cap();
  std::vector<Series<T>> inner;
  for (std::size_t v = 0; v < dim_x; ++v) inner.push_back(Series<T>::variable(dim_x, cap, v));
  for (const auto& c : phi.components()) inner.push_back(c);
  return series_compose(psi.with_cap(cap), SeriesMap<T>(std::move(inner), dim_x, cap));
}

template <Scalar T>
SolutionSeries<T> solve_formal_map(const SeriesMap<T>& psi, std::size_t dim_x, unsigned D,
                                   const RoundObserver<T>& observer) {
  SeriesMap<T> phi(psi.size(), dim_x, D);
  for (unsigned round = 1; round <= D; ++round) {
    phi = substitute_solution(psi, dim_x, phi);
    if (observer) observer(round, phi);
  }
  return {std::move(phi), D, SolutionSource::Iterative};
}

}  // namespace detail

/// Runs D rounds of phi <- trunc_D psi(x, phi) from phi = 0. After round k
/// the coefficients of degree <= k no longer change, so the result is the
/// unique formal solution through degree D.
template <Scalar T>
SolutionSeries<T> solve_formal(const EquationSpec<T>& eq, unsigned D, const RoundObserver<T>& observer = {}) {
  validate(eq);
  return detail::solve_formal_map(eq.psi, eq.dim_x, D, observer);
}

template <Scalar T>
SolutionSeries<T> solve_formal(const ComparisonEquation<T>& cmp, unsigned D, const RoundObserver<T>& observer = {}) {
  validate(cmp);
  return detail::solve_formal_map(cmp.Psi, cmp.dim_X, D, observer);
}

/// trunc_D(phi - psi(x, phi)); all-zero certifies phi through degree D.
template <Scalar T>
SeriesMap<T> residual(const EquationSpec<T>& eq, const SolutionSeries<T>& sol) {
  if (sol.phi.num_vars() != eq.dim_x || sol.phi.size() != eq.dim_y)
    throw DimensionError("solution dimensions do not match the equation");
  SeriesMap<T> image = detail::substitute_solution(eq.psi, eq.dim_x, sol.phi);
  std::vector<Series<T>> out;
  for (std::size_t i = 0; i < eq.dim_y; ++i) out.push_back(sol.phi[i] - image[i]);
  return SeriesMap<T>(std::move(out), eq.dim_x, sol.phi.degree_cap());
}

inline constexpr unsigned kPartitionOracleMaxDegree = 6;

namespace detail {

// b_n of the solution evaluated on multisets of x-basis vectors, computed by
// summing a_{m r}(x_S; b_{|B_1|}(x_{B_1}), ..., b_{|B_r|}(x_{B_r})) over every
// split of the slots {1..n} into a (possibly empty) x-set S and an unordered
// set partition {B_1..B_r} of the rest, excluding (m, r) = (0, 1).
template <Scalar T>
class PartitionRecursion {
 public:
  PartitionRecursion(const EquationSpec<T>& eq) : eq_(eq) {}

  const std::vector<T>& b(const std::vector<std::size_t>& labels) {
    if (auto it = memo_.find(labels); it != memo_.end()) return it->second;
    std::vector<T> value = compute(labels);
    return memo_.emplace(labels, std::move(value)).first->second;
  }

 private:
  std::vector<T> compute(const std::vector<std::size_t>& labels) {
    const std::size_t n = labels.size();
    const std::size_t q = eq_.dim_y;
    std::vector<T> out(q, T(0));
    if (n == 0) return out;

    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> x_labels, rest;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (1u << k)) x_labels.push_back(labels[k]);
        else rest.push_back(labels[k]);
      }
      // Restricted growth strings enumerate each set partition of `rest` once.
      std::vector<std::size_t> block(rest.size(), 0);
      for (;;) {
        std::size_t r = rest.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
        if (!(x_labels.empty() && r == 1)) accumulate(x_labels, rest, block, r, out);
        if (!next_growth_string(block)) break;
      }
    }
    return out;
  }

  static bool next_growth_string(std::vector<std::size_t>& a) {
    for (std::size_t i = a.size(); i-- > 1;) {
      std::size_t prefix_max = *std::max_element(a.begin(), a.begin() + i);
      if (a[i] <= prefix_max) {
        ++a[i];
        std::fill(a.begin() + i + 1, a.end(), 0);
        return true;
      }
    }
    return false;
  }

  void accumulate(const std::vector<std::size_t>& x_labels, const std::vector<std::size_t>& rest,
                  const std::vector<std::size_t>& block, std::size_t r, std::vector<T>& out) {
    const std::size_t m = x_labels.size();
    if (m + r > eq_.degree_cap()) return;  // a_{m r} vanishes above the cap
    std::vector<std::vector<T>> args(r);
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::size_t> sub;
      for (std::size_t k = 0; k < rest.size(); ++k)
        if (block[k] == j) sub.push_back(rest[k]);
      std::sort(sub.begin(), sub.end());
      args[j] = b(sub);
    }
    // Expand each y-argument over the y-basis: multilinearity in y.
    const std::size_t q = eq_.dim_y;
    std::vector<std::size_t> pick(r, 0);
    for (;;) {
      T weight = 1;
      for (std::size_t j = 0; j < r && !is_zero(weight); ++j) weight *= args[j][pick[j]];
      if (!is_zero(weight)) {
        std::vector<std::size_t> multiset = x_labels;
        for (std::size_t j = 0; j < r; ++j) multiset.push_back(eq_.dim_x + pick[j]);
        for (std::size_t i = 0; i < q; ++i) {
          T a = sym_tensor_entry(eq_.psi[i], multiset).value;
          if (!is_zero(a)) out[i] += weight * a;
        }
      }
      std::size_t j = 0;
      while (j < r && ++pick[j] == q) pick[j++] = 0;
      if (j == r) break;
    }
  }

  const EquationSpec<T>& eq_;
  std::map<std::vector<std::size_t>, std::vector<T>> memo_;
};

}  // namespace detail

/// Independent solution by explicit enumeration of set partitions in the
/// multilinear recursion for b_n; converts back via c_alpha = b_n(e_alpha) / alpha!.
/// Exponential in D; limited to D <= 6.
template <Scalar T>
SolutionSeries<T> solve_partition_oracle(const EquationSpec<T>& eq, unsigned D) {
  if (D > kPartitionOracleMaxDegree) throw DimensionError("partition oracle supports degree caps up to 6");
  validate(eq);
  detail::PartitionRecursion<T> rec(eq);
  SeriesMap<T> phi(eq.dim_y, eq.dim_x, D);

  // All multisets of x-variables of size 1..D, in nondecreasing label order.
  std::vector<std::size_t> labels;
  std::function<void(std::size_t)> walk = [&](std::size_t start) {
    if (!labels.empty()) {
      const std::vector<T>& value = rec.b(labels);
      std::vector<unsigned> e(eq.dim_x, 0);
      for (std::size_t l : labels) ++e[l];
      MultiIndex alpha(std::move(e));
      T fact = alpha.template factorial<T>();
      for (std::size_t i = 0; i < eq.dim_y; ++i)
        if (!is_zero(value[i])) phi[i].set(alpha, T(value[i] / fact));
    }
    if (labels.size() == D) return;
    for (std::size_t v = start; v < eq.dim_x; ++v) {
      labels.push_back(v);
      walk(v);
      labels.pop_back();
    }
  };
  walk(0);
  return {std::move(phi), D, SolutionSource::PartitionOracle};
}

namespace detail {

// Gauss-Jordan inverse; partial pivoting in float mode.
template <Scalar T>
std::vector<std::vector<T>> invert(std::vector<std::vector<T>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<T>> inv(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  double scale = 0.0;
  for (const auto& row : a)
    for (const auto& v : row) scale = std::max(scale, std::fabs(to_double(v)));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col; r < n; ++r) {
      if constexpr (std::same_as<T, Rational>) {
        if (!is_zero(a[r][col])) { pivot = r; break; }
      } else {
        if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
      }
    }
    bool singular;
    if constexpr (std::same_as<T, Rational>) {
      singular = is_zero(a[pivot][col]);
    } else {
      singular = std::fabs(a[pivot][col]) <= 1e-14 * std::max(scale, 1.0);
    }
    if (singular) throw SingularError("I - a01 is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    T p = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_zero(a[r][col])) continue;
      T f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Removes the linear-in-y block: y = L y + rest becomes
/// y = (I - L)^{-1} rest. Exact mode inverts exactly.
template <Scalar T>
EquationSpec<T> resolve_linear(const SeriesMap<T>& raw, std::size_t dim_x, NormProfile px, NormProfile py) {
  const std::size_t q = raw.size();
  if (raw.num_vars() != dim_x + q) throw DimensionError("raw equation must have dim_x + dim_y variables");
  if (py.primal_dim != q || px.primal_dim != dim_x) throw DimensionError("profiles do not match the equation dimensions");
  std::vector<std::vector<T>> i_minus_l(q, std::vector<T>(q, T(0)));
  std::vector<Series<T>> rest;
  for (std::size_t i = 0; i < q; ++i) {
    if (!is_zero(raw[i].constant_term())) throw ValidationError("constant term in output " + std::to_string(i));
    i_minus_l[i][i] = 1;
    Series<T> r = raw[i];
    for (std::size_t l = 0; l < q; ++l) {
      MultiIndex y_l = MultiIndex::unit(dim_x + q, dim_x + l);
      T c = raw[i].coefficient(y_l);
      i_minus_l[i][l] -= c;
      r.set(y_l, T(0));
    }
    rest.push_back(std::move(r));
  }
  auto inv = detail::invert(std::move(i_minus_l));
  std::vector<Series<T>> out;
  for (std::size_t i = 0; i < q; ++i) {
    Series<T> s(dim_x + q, raw.degree_cap());
    for (std::size_t l = 0; l < q; ++l)
      if (!is_zero(inv[i][l])) s = s + series_scale(rest[l], inv[i][l]);
    out.push_back(std::move(s));
  }
  return make_equation(SeriesMap<T>(std::move(out), dim_x + q, raw.degree_cap()), dim_x, px, py);
}

template <Scalar S, Scalar T>
SolutionSeries<S> convert_solution(const SolutionSeries<T>& sol) {
  return {convert_series<S>(sol.phi), sol.degree_cap, sol.source};
}

}  // namespace majorant
