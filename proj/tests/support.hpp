#pragma once

// Test-only oracles and generators. Nothing here calls into the library's
// composition or solver code paths.

#include <gmpxx.h>

#include <cmath>
#include <random>
#include <vector>

#include "majorant/majorant.hpp"
#include "majorant/series.hpp"

namespace majorant::testing {

// Catalan numbers C_0..C_{n-1} from C_{k+1} = sum_i C_i C_{k-i}.
inline std::vector<mpz_class> catalan(std::size_t n) {
  std::vector<mpz_class> c{1};
  while (c.size() < n) {
    mpz_class next = 0;
    const std::size_t k = c.size() - 1;
    for (std::size_t i = 0; i <= k; ++i) next += c[i] * c[k - i];
    c.push_back(next);
  }
  c.resize(n);
  return c;
}

// Dense univariate product, no truncation.
template <class T>
std::vector<T> naive_convolution(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <Scalar T>
Series<T> univariate(const std::vector<T>& dense, unsigned cap) {
  Series<T> s(1, cap);
  for (std::size_t k = 0; k < dense.size() && k <= cap; ++k) s.set(MultiIndex({static_cast<unsigned>(k)}), dense[k]);
  return s;
}

template <Scalar T>
std::vector<T> dense_of(const Series<T>& s) {
  std::vector<T> out(s.degree_cap() + 1, T(0));
  for (const auto& [idx, c] : s.terms()) out[idx.total_degree()] = c;
  return out;
}

// Term c * x^alpha y^beta in a map of dim_x + dim_y variables.
template <Scalar T>
void add_term(SeriesMap<T>& m, std::size_t output, std::vector<unsigned> exps, const T& c) {
  m[output].add_to(MultiIndex(std::move(exps)), c);
}

inline Rational random_rational(std::mt19937_64& rng) {
  // Nonzero p/q in [-2, 2] with q in {1, 2, 3}.
  std::uniform_int_distribution<int> den_d(1, 3);
  int q = den_d(rng);
  std::uniform_int_distribution<int> num_d(-2 * q, 2 * q);
  int p = 0;
  while (p == 0) p = num_d(rng);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Random admissible exponent vector: total degree in [1, cap], not (0 x, 1 y).
inline std::vector<unsigned> random_exponents(std::mt19937_64& rng, std::size_t dim_x, std::size_t dim_y, unsigned cap) {
  std::uniform_int_distribution<unsigned> deg_d(1, cap);
  std::uniform_int_distribution<std::size_t> var_d(0, dim_x + dim_y - 1);
  for (;;) {
    std::vector<unsigned> e(dim_x + dim_y, 0);
    unsigned deg = deg_d(rng);
    for (unsigned k = 0; k < deg; ++k) ++e[var_d(rng)];
    unsigned m = 0;
    for (std::size_t v = 0; v < dim_x; ++v) m += e[v];
    if (m == 0 && deg == 1) continue;
    return e;
  }
}

struct RandomEquationShape {
  std::size_t max_dim = 2;
  std::size_t max_terms = 6;
  unsigned cap = 3;
  bool random_profiles = false;
};

// Random exact equation with p, q <= max_dim and at most max_terms terms.
// Every output gets an x-linear term so the solution is not trivially zero.
inline EquationSpec<Rational> random_equation(std::mt19937_64& rng, const RandomEquationShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> dim_d(1, shape.max_dim);
  const std::size_t p = dim_d(rng), q = dim_d(rng);
  SeriesMap<Rational> psi(q, p + q, shape.cap);
  std::uniform_int_distribution<std::size_t> out_d(0, q - 1);
  std::uniform_int_distribution<std::size_t> x_d(0, p - 1);
  std::size_t terms = 0;
  for (std::size_t i = 0; i < q && terms < shape.max_terms; ++i, ++terms) {
    std::vector<unsigned> e(p + q, 0);
    e[x_d(rng)] = 1;
    add_term(psi, i, e, random_rational(rng));
  }
  std::uniform_int_distribution<std::size_t> count_d(terms, shape.max_terms);
  const std::size_t total = count_d(rng);
  for (; terms < total; ++terms) add_term(psi, out_d(rng), random_exponents(rng, p, q, shape.cap), random_rational(rng));

  auto profile = [&](std::size_t dim) {
    if (!shape.random_profiles) return NormProfile(NormKind::Componentwise, dim);
    std::uniform_int_distribution<int> k(0, dim == 1 ? 2 : 1);
    int pick = k(rng);
    if (pick == 0) return NormProfile(NormKind::Componentwise, dim);
    if (pick == 1) return NormProfile(NormKind::Aggregate, dim);
    return NormProfile(NormKind::Scalar, dim);
  };
  NormProfile px = profile(p), py = profile(q);
  return make_equation(std::move(psi), p, px, py);
}

// Random positive-type comparison equation with an X-linear term per output.
inline ComparisonEquation<double> random_comparison(std::mt19937_64& rng, std::size_t max_dim = 2, unsigned cap = 3) {
  std::uniform_int_distribution<std::size_t> dim_d(1, max_dim);
  const std::size_t p = dim_d(rng), q = dim_d(rng);
  SeriesMap<double> Psi(q, p + q, cap);
  std::uniform_real_distribution<double> coef(0.1, 1.0);
  std::uniform_int_distribution<std::size_t> x_d(0, p - 1);
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<unsigned> e(p + q, 0);
    e[x_d(rng)] = 1;
    add_term(Psi, i, e, coef(rng));
    // A genuinely nonlinear Y term in every output.
    std::vector<unsigned> y(p + q, 0);
    y[p + std::uniform_int_distribution<std::size_t>(0, q - 1)(rng)] = 2;
    add_term(Psi, i, y, coef(rng));
  }
  std::uniform_int_distribution<std::size_t> extra_d(0, 3), out_d(0, q - 1);
  std::size_t extra = extra_d(rng);
  for (std::size_t k = 0; k < extra; ++k) add_term(Psi, out_d(rng), random_exponents(rng, p, q, cap), coef(rng));
  return make_comparison(std::move(Psi), p);
}

inline LatticeVec<double> random_direction(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> d(0.2, 1.0);
  std::vector<double> v(dim);
  for (auto& e : v) e = d(rng);
  return LatticeVec<double>(std::move(v));
}

}  // namespace majorant::testing
