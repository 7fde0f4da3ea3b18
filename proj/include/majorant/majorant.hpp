#pragma once

// Implicit equations y = psi(x, y), their positive-type comparison
// equations Y = Psi(X, Y), and the majorant functor psi -> Psi.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "majorant/lattice_norm.hpp"
#include "majorant/series.hpp"

namespace majorant {

/// y = psi(x, y) with x in R^p, y in R^q. psi has p + q variables ordered
/// (x_1..x_p, y_1..y_q) and q outputs.
template <Scalar T>
struct EquationSpec {
  std::size_t dim_x = 0;
  std::size_t dim_y = 0;
  SeriesMap<T> psi;
  NormProfile profile_x;
  NormProfile profile_y;

  static constexpr Mode mode() { return mode_of<T>(); }
  unsigned degree_cap() const { return psi.degree_cap(); }

  friend bool operator==(const EquationSpec&, const EquationSpec&) = default;
};

/// Y = Psi(X, Y) over the norming spaces; every coefficient is >= 0.
template <Scalar T>
struct ComparisonEquation {
  std::size_t dim_X = 0;
  std::size_t dim_Y = 0;
  SeriesMap<T> Psi;

  static constexpr Mode mode() { return mode_of<T>(); }
  unsigned degree_cap() const { return Psi.degree_cap(); }

  LatticeVec<T> eval(const LatticeVec<T>& X, const LatticeVec<T>& Y) const {
    if (X.dimension() != dim_X || Y.dimension() != dim_Y) throw DimensionError("comparison argument dimension mismatch");
    std::vector<T> point = X.entries;
    point.insert(point.end(), Y.entries.begin(), Y.entries.end());
    return LatticeVec<T>(series_eval(Psi, std::span<const T>(point)));
  }

  friend bool operator==(const ComparisonEquation&, const ComparisonEquation&) = default;
};

namespace detail {

inline std::string describe_term(std::size_t output, const MultiIndex& idx, std::size_t dim_x) {
  std::string s = "term (output " + std::to_string(output) + ", alpha [";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == dim_x) s += "], beta [";
    else if (i > 0) s += ", ";
    s += std::to_string(idx[i]);
  }
  if (dim_x == idx.size()) s += "], beta [";
  return s + "])";
}

// Zero constant term and no term linear in y alone.
template <Scalar T>
void validate_shape(const SeriesMap<T>& map, std::size_t dim_x, std::size_t dim_y) {
  if (map.size() != dim_y) throw ValidationError("equation must have one output per y coordinate");
  if (map.num_vars() != dim_x + dim_y) throw ValidationError("equation must have dim_x + dim_y variables");
  if (map.degree_cap() < 1) throw ValidationError("degree cap must be at least 1");
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (const auto& [idx, c] : map[i].terms()) {
      unsigned x_deg = 0;
      for (std::size_t v = 0; v < dim_x; ++v) x_deg += idx[v];
      unsigned y_deg = idx.total_degree() - x_deg;
      if (x_deg == 0 && y_deg == 0)
        throw ValidationError("constant term: " + describe_term(i, idx, dim_x) + " (psi(0,0) must be 0)");
      if (x_deg == 0 && y_deg == 1)
        throw ValidationError("linear y term: " + describe_term(i, idx, dim_x) + " (a01 must be 0)");
    }
  }
}

}  // namespace detail

template <Scalar T>
void validate(const EquationSpec<T>& eq) {
  if (eq.profile_x.primal_dim != eq.dim_x) throw ValidationError("profile_x dimension differs from dim_x");
  if (eq.profile_y.primal_dim != eq.dim_y) throw ValidationError("profile_y dimension differs from dim_y");
  detail::validate_shape(eq.psi, eq.dim_x, eq.dim_y);
}

template <Scalar T>
void validate(const ComparisonEquation<T>& cmp) {
  detail::validate_shape(cmp.Psi, cmp.dim_X, cmp.dim_Y);
  for (std::size_t i = 0; i < cmp.Psi.size(); ++i)
    for (const auto& [idx, c] : cmp.Psi[i].terms())
      if (c < 0) throw ValidationError("negative coefficient: " + detail::describe_term(i, idx, cmp.dim_X) + " (positive type required)");
}

template <Scalar T>
EquationSpec<T> make_equation(SeriesMap<T> psi, std::size_t dim_x, NormProfile px, NormProfile py) {
  EquationSpec<T> eq{dim_x, py.primal_dim, std::move(psi), px, py};
  validate(eq);
  return eq;
}

template <Scalar T>
ComparisonEquation<T> make_comparison(SeriesMap<T> Psi, std::size_t dim_X) {
  ComparisonEquation<T> cmp{dim_X, Psi.size(), std::move(Psi)};
  validate(cmp);
  return cmp;
}

/// Reads a positive-type equation as a comparison equation (componentwise
/// norming, so the norming spaces are the primal spaces).
template <Scalar T>
ComparisonEquation<T> as_comparison(const EquationSpec<T>& eq) {
  return make_comparison(eq.psi, eq.dim_x);
}

/// Positive-type comparison equation Psi with psi << Psi.
///
/// Each primal monomial c x^alpha y^beta is sent to |c| X^alpha' Y^beta',
/// where alpha', beta' collect the exponents onto the norming coordinates
/// (identity for componentwise profiles, a single coordinate otherwise).
/// Outputs sharing a norming coordinate are combined with max, which bounds
/// the aggregate max-norm.
template <Scalar T>
ComparisonEquation<T> majorant(const EquationSpec<T>& eq) {
  validate(eq);
  const std::size_t nX = eq.profile_x.norming_dim();
  const std::size_t nY = eq.profile_y.norming_dim();
  const unsigned cap = eq.degree_cap();
  std::vector<Series<T>> comps(nY, Series<T>(nX + nY, cap));
  std::vector<std::map<MultiIndex, T>> per_output(eq.dim_y);
  for (std::size_t i = 0; i < eq.dim_y; ++i) {
    for (const auto& [idx, c] : eq.psi[i].terms()) {
      std::vector<unsigned> e(nX + nY, 0);
      for (std::size_t v = 0; v < eq.dim_x; ++v) e[eq.profile_x.norming_index(v)] += idx[v];
      for (std::size_t v = 0; v < eq.dim_y; ++v) e[nX + eq.profile_y.norming_index(v)] += idx[eq.dim_x + v];
      per_output[i][MultiIndex(std::move(e))] += abs_value(c);
    }
  }
  for (std::size_t i = 0; i < eq.dim_y; ++i) {
    auto& target = comps[eq.profile_y.norming_index(i)];
    for (const auto& [idx, c] : per_output[i])
      if (c > target.coefficient(idx)) target.set(idx, c);
  }
  return make_comparison(SeriesMap<T>(std::move(comps), nX + nY, cap), nX);
}

/// Axis-aligned sampling box over the primal coordinates (x_1..x_p, y_1..y_q).
template <Scalar T>
struct SampleBox {
  LatticeVec<T> lower;
  LatticeVec<T> upper;
};

template <Scalar T>
SampleBox<T> symmetric_box(std::size_t dims, const T& half_width) {
  return {LatticeVec<T>(std::vector<T>(dims, T(-half_width))), LatticeVec<T>(std::vector<T>(dims, half_width))};
}

struct MajorantCheckOptions {
  std::size_t n_samples = 1000;
  bool check_increments = true;
  std::uint64_t seed = 0x5eed;
  double relative_slack = 1e-9;  // float mode only; exact mode allows none
};

struct MajorantReport {
  std::size_t values_checked = 0;
  std::size_t increments_checked = 0;
  std::size_t violations = 0;
  double max_excess = 0.0;
  std::vector<std::string> first_violations;

  bool ok() const { return violations == 0; }
};

/// Samples ||psi(x,y)|| <= Psi(||x||, ||y||) and, optionally, the increment
/// inequality ||psi(z+h) - psi(z)|| <= Psi(Z+H) - Psi(Z) with Z = ||z||,
/// H = ||h||, both evaluated on the truncated polynomials.
template <Scalar T>
MajorantReport check_majorant_samples(const EquationSpec<T>& eq, const ComparisonEquation<T>& cmp,
                                      const SampleBox<T>& box, const MajorantCheckOptions& opts = {}) {
  const std::size_t n = eq.dim_x + eq.dim_y;
  if (box.lower.dimension() != n || box.upper.dimension() != n)
    throw DimensionError("sample box must cover dim_x + dim_y coordinates");
  if (cmp.dim_X != eq.profile_x.norming_dim() || cmp.dim_Y != eq.profile_y.norming_dim())
    throw DimensionError("comparison equation dimensions do not match the norming spaces");

  std::mt19937_64 rng(opts.seed);
  auto draw = [&] {
    std::vector<T> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      double lo = to_double(box.lower[i]);
      double hi = to_double(box.upper[i]);
      p[i] = from_double<T>(std::uniform_real_distribution<double>(lo, hi)(rng));
    }
    return p;
  };
  auto split_norms = [&](const std::vector<T>& p) {
    std::vector<T> xs(p.begin(), p.begin() + eq.dim_x), ys(p.begin() + eq.dim_x, p.end());
    return std::pair{norm(eq.profile_x, xs), norm(eq.profile_y, ys)};
  };
  auto psi_norm = [&](const std::vector<T>& out) { return norm(eq.profile_y, out); };

  MajorantReport report;
  auto compare = [&](const LatticeVec<T>& lhs, const LatticeVec<T>& rhs, const LatticeVec<T>& scale, const char* what) {
    for (std::size_t i = 0; i < lhs.dimension(); ++i) {
      T excess = lhs[i] - rhs[i];
      bool bad;
      if constexpr (std::same_as<T, Rational>) {
        bad = excess > 0;
      } else {
        bad = excess > opts.relative_slack * abs_value(scale[i]);
      }
      if (bad) {
        ++report.violations;
        report.max_excess = std::max(report.max_excess, to_double(excess));
        if (report.first_violations.size() < 5)
          report.first_violations.push_back(std::string(what) + " coordinate " + std::to_string(i) +
                                            ": lhs " + format_scalar(lhs[i]) + " > rhs " + format_scalar(rhs[i]));
      }
    }
  };

  for (std::size_t k = 0; k < opts.n_samples; ++k) {
    std::vector<T> p = draw();
    auto [X, Y] = split_norms(p);
    LatticeVec<T> lhs = psi_norm(series_eval(eq.psi, std::span<const T>(p)));
    LatticeVec<T> rhs = cmp.eval(X, Y);
    compare(lhs, rhs, rhs, "value");
    ++report.values_checked;
  }
  if (opts.check_increments) {
    for (std::size_t k = 0; k < opts.n_samples; ++k) {
      std::vector<T> z = draw();
      std::vector<T> h = draw();
      std::vector<T> zh(n);
      for (std::size_t i = 0; i < n; ++i) zh[i] = z[i] + h[i];
      std::vector<T> fz = series_eval(eq.psi, std::span<const T>(z));
      std::vector<T> fzh = series_eval(eq.psi, std::span<const T>(zh));
      for (std::size_t i = 0; i < fz.size(); ++i) fzh[i] -= fz[i];
      LatticeVec<T> lhs = psi_norm(fzh);
      auto [Zx, Zy] = split_norms(z);
      auto [Hx, Hy] = split_norms(h);
      LatticeVec<T> upper = cmp.eval(lattice_add(Zx, Hx), lattice_add(Zy, Hy));
      LatticeVec<T> rhs = lattice_sub(upper, cmp.eval(Zx, Zy));
      compare(lhs, rhs, upper, "increment");
      ++report.increments_checked;
    }
  }
  return report;
}

template <Scalar S, Scalar T>
EquationSpec<S> convert_equation(const EquationSpec<T>& eq) {
  return EquationSpec<S>{eq.dim_x, eq.dim_y, convert_series<S>(eq.psi), eq.profile_x, eq.profile_y};
}

template <Scalar S, Scalar T>
ComparisonEquation<S> convert_comparison(const ComparisonEquation<T>& cmp) {
  return ComparisonEquation<S>{cmp.dim_X, cmp.dim_Y, convert_series<S>(cmp.Psi)};
}

}  // namespace majorant
