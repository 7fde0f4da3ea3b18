#pragma once

// Truncated multivariate power series over exact rationals or doubles.
//
// A Series stores monomial coefficients c_alpha for every multi-index alpha
// with |alpha| <= degree_cap. The completely symmetric multilinear form
// a_n of degree n relates to the monomial form by
//
//     a_n(e_{i_1}, ..., e_{i_n}) = c_alpha * alpha!
//
// where alpha counts how often each variable occurs in {i_1, ..., i_n}, so
// that (1/n!) a_n(x, ..., x) = sum_{|alpha| = n} c_alpha x^alpha.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "majorant/errors.hpp"
#include "majorant/scalar.hpp"

namespace majorant {

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {
    total_ = std::accumulate(exponents_.begin(), exponents_.end(), 0u);
  }

  static MultiIndex zero(std::size_t num_vars) { return MultiIndex(std::vector<unsigned>(num_vars, 0)); }
  static MultiIndex unit(std::size_t num_vars, std::size_t var) {
    std::vector<unsigned> e(num_vars, 0);
    e.at(var) = 1;
    return MultiIndex(std::move(e));
  }

  std::size_t size() const { return exponents_.size(); }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  unsigned total_degree() const { return total_; }
  const std::vector<unsigned>& exponents() const { return exponents_; }

  MultiIndex operator+(const MultiIndex& other) const {
    if (other.size() != size()) throw DimensionError("multi-index length mismatch");
    std::vector<unsigned> e(exponents_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
    return MultiIndex(std::move(e));
  }

  // alpha! = prod alpha_i!
  template <Scalar T>
  T factorial() const {
    T out = 1;
    for (unsigned e : exponents_) out *= majorant::factorial<T>(e);
    return out;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  // Graded order: lower total degree first, then lexicographically larger
  // exponent vectors first (x^2 < xy < y^2).
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.total_ <=> b.total_; c != 0) return c;
    if (auto c = a.exponents_.size() <=> b.exponents_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.exponents_.size(); ++i) {
      if (a.exponents_[i] != b.exponents_[i]) return b.exponents_[i] <=> a.exponents_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  std::vector<unsigned> exponents_;
  unsigned total_ = 0;
};

template <Scalar T>
class Series {
 public:
  using Terms = std::map<MultiIndex, T>;

  Series() = default;
  Series(std::size_t num_vars, unsigned degree_cap) : num_vars_(num_vars), degree_cap_(degree_cap) {}

  static constexpr Mode mode() { return mode_of<T>(); }

  static Series constant(std::size_t num_vars, unsigned degree_cap, const T& c) {
    Series s(num_vars, degree_cap);
    s.set(MultiIndex::zero(num_vars), c);
    return s;
  }

  static Series variable(std::size_t num_vars, unsigned degree_cap, std::size_t var) {
    if (var >= num_vars) throw DimensionError("variable index out of range");
    Series s(num_vars, degree_cap);
    if (degree_cap >= 1) s.set(MultiIndex::unit(num_vars, var), T(1));
    return s;
  }

  std::size_t num_vars() const { return num_vars_; }
  unsigned degree_cap() const { return degree_cap_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  T coefficient(const MultiIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? T(0) : it->second;
  }

  T constant_term() const { return coefficient(MultiIndex::zero(num_vars_)); }

  // Replaces the coefficient at idx; zero erases the term.
  void set(const MultiIndex& idx, const T& value) {
    check_index(idx);
    check_value(value);
    if (is_zero_value(value)) {
      terms_.erase(idx);
    } else {
      terms_[idx] = value;
    }
  }

  void add_to(const MultiIndex& idx, const T& value) {
    check_index(idx);
    if (is_zero_value(value)) return;
    auto [it, inserted] = terms_.try_emplace(idx, value);
    if (!inserted) {
      it->second += value;
      if (is_zero_value(it->second)) {
        terms_.erase(it);
        return;
      }
    }
    check_value(it->second);
  }

  // Same polynomial under a different cap; terms above the new cap are dropped.
  Series with_cap(unsigned cap) const {
    Series out(num_vars_, cap);
    for (const auto& [idx, c] : terms_)
      if (idx.total_degree() <= cap) out.terms_.emplace(idx, c);
    return out;
  }

  unsigned max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.total_degree(); }

  friend bool operator==(const Series& a, const Series& b) {
    return a.num_vars_ == b.num_vars_ && a.degree_cap_ == b.degree_cap_ && a.terms_ == b.terms_;
  }

 private:
  static bool is_zero_value(const T& v) { return majorant::is_zero(v); }

  void check_index(const MultiIndex& idx) const {
    if (idx.size() != num_vars_) throw DimensionError("multi-index length does not match num_vars");
    if (idx.total_degree() > degree_cap_) throw DimensionError("term degree exceeds degree cap");
  }

  static void check_value(const T& v) {
    if (!majorant::is_finite(v)) throw ValidationError("non-finite coefficient");
  }

  std::size_t num_vars_ = 0;
  unsigned degree_cap_ = 0;
  Terms terms_;
};

/// A vector-valued series; every component shares num_vars and degree_cap.
template <Scalar T>
class SeriesMap {
 public:
  SeriesMap() = default;
  SeriesMap(std::size_t outputs, std::size_t num_vars, unsigned degree_cap)
      : components_(outputs, Series<T>(num_vars, degree_cap)), num_vars_(num_vars), degree_cap_(degree_cap) {}
  SeriesMap(std::vector<Series<T>> components, std::size_t num_vars, unsigned degree_cap)
      : components_(std::move(components)), num_vars_(num_vars), degree_cap_(degree_cap) {
    for (const auto& c : components_)
      if (c.num_vars() != num_vars_ || c.degree_cap() != degree_cap_)
        throw DimensionError("series map components disagree on num_vars or degree_cap");
  }

  static SeriesMap identity(std::size_t num_vars, unsigned degree_cap) {
    std::vector<Series<T>> comps;
    for (std::size_t i = 0; i < num_vars; ++i) comps.push_back(Series<T>::variable(num_vars, degree_cap, i));
    return SeriesMap(std::move(comps), num_vars, degree_cap);
  }

  static constexpr Mode mode() { return mode_of<T>(); }
  std::size_t size() const { return components_.size(); }
  std::size_t num_vars() const { return num_vars_; }
  unsigned degree_cap() const { return degree_cap_; }

  const Series<T>& operator[](std::size_t i) const { return components_.at(i); }
  Series<T>& operator[](std::size_t i) { return components_.at(i); }
  const std::vector<Series<T>>& components() const { return components_; }

  SeriesMap with_cap(unsigned cap) const {
    std::vector<Series<T>> comps;
    for (const auto& c : components_) comps.push_back(c.with_cap(cap));
    return SeriesMap(std::move(comps), num_vars_, cap);
  }

  bool is_zero() const {
    return std::all_of(components_.begin(), components_.end(), [](const auto& c) { return c.is_zero(); });
  }

  friend bool operator==(const SeriesMap&, const SeriesMap&) = default;

 private:
  std::vector<Series<T>> components_;
  std::size_t num_vars_ = 0;
  unsigned degree_cap_ = 0;
};

/// Value of the completely symmetric multilinear coefficient a_n on a
/// multiset of basis vectors.
template <Scalar T>
struct SymTensorEntry {
  unsigned degree = 0;
  std::vector<std::size_t> index_multiset;
  T value{};
};

namespace detail {

template <Scalar T>
void require_compatible(const Series<T>& a, const Series<T>& b) {
  if (a.num_vars() != b.num_vars()) throw DimensionError("series have different num_vars");
  if (a.degree_cap() != b.degree_cap()) throw DimensionError("series have different degree caps");
}

// Horner substitution of `values` into the polynomial `s`, generic over the
// value ring V. Terms are grouped by the exponent of each variable in turn:
//   s = sum_e v_0^e * s_e(v_1, ...) evaluated as (((s_E) v_0^{E-E'} + s_E') ...) v_0^{e_min}.
template <Scalar T, class V, class Mul, class Add, class Lift>
class HornerSubstitution {
 public:
  HornerSubstitution(std::span<const V> values, Mul mul, Add add, Lift lift)
      : values_(values), mul_(std::move(mul)), add_(std::move(add)), lift_(std::move(lift)), powers_(values.size()) {}

  V run(const Series<T>& s, const V& zero) {
    if (s.is_zero()) return zero;
    std::vector<const std::pair<const MultiIndex, T>*> terms;
    terms.reserve(s.terms().size());
    for (const auto& t : s.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(),
              [](auto* a, auto* b) { return a->first.exponents() > b->first.exponents(); });
    return rec(terms, 0, terms.size(), 0);
  }

 private:
  using TermPtr = const std::pair<const MultiIndex, T>*;

  const V& power(std::size_t var, unsigned k) {
    auto& cache = powers_[var];
    if (cache.empty()) cache.push_back(values_[var]);
    while (cache.size() < k) cache.push_back(mul_(cache.back(), values_[var]));
    return cache[k - 1];
  }

  V rec(const std::vector<TermPtr>& terms, std::size_t first, std::size_t last, std::size_t var) {
    if (var == values_.size()) return lift_(terms[first]->second);
    std::size_t group_end = first;
    unsigned prev = terms[first]->first[var];
    while (group_end < last && terms[group_end]->first[var] == prev) ++group_end;
    V acc = rec(terms, first, group_end, var + 1);
    while (group_end < last) {
      std::size_t start = group_end;
      unsigned e = terms[start]->first[var];
      while (group_end < last && terms[group_end]->first[var] == e) ++group_end;
      acc = add_(mul_(acc, power(var, prev - e)), rec(terms, start, group_end, var + 1));
      prev = e;
    }
    if (prev > 0) acc = mul_(acc, power(var, prev));
    return acc;
  }

  std::span<const V> values_;
  Mul mul_;
  Add add_;
  Lift lift_;
  std::vector<std::vector<V>> powers_;
};

}  // namespace detail

template <Scalar T>
Series<T> series_add(const Series<T>& a, const Series<T>& b) {
  detail::require_compatible(a, b);
  Series<T> out = a;
  for (const auto& [idx, c] : b.terms()) out.add_to(idx, c);
  return out;
}

template <Scalar T>
Series<T> series_scale(const Series<T>& a, const T& factor) {
  Series<T> out(a.num_vars(), a.degree_cap());
  if (is_zero(factor)) return out;
  for (const auto& [idx, c] : a.terms()) out.set(idx, T(c * factor));
  return out;
}

template <Scalar T>
Series<T> series_neg(const Series<T>& a) {
  return series_scale(a, T(-1));
}

template <Scalar T>
Series<T> series_sub(const Series<T>& a, const Series<T>& b) {
  detail::require_compatible(a, b);
  Series<T> out = a;
  for (const auto& [idx, c] : b.terms()) out.add_to(idx, T(-c));
  return out;
}

/// Product truncated to the shared degree cap.
template <Scalar T>
Series<T> series_mul(const Series<T>& a, const Series<T>& b) {
  detail::require_compatible(a, b);
  const unsigned cap = a.degree_cap();
  Series<T> out(a.num_vars(), cap);
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      // b's terms are ordered by total degree, so the rest are too high too.
      if (ia.total_degree() + ib.total_degree() > cap) break;
      out.add_to(ia + ib, T(ca * cb));
    }
  }
  return out;
}

template <Scalar T>
Series<T> operator+(const Series<T>& a, const Series<T>& b) { return series_add(a, b); }
template <Scalar T>
Series<T> operator-(const Series<T>& a, const Series<T>& b) { return series_sub(a, b); }
template <Scalar T>
Series<T> operator-(const Series<T>& a) { return series_neg(a); }
template <Scalar T>
Series<T> operator*(const Series<T>& a, const Series<T>& b) { return series_mul(a, b); }

/// Formal partial derivative. The result is exact through degree D-1 and
/// carries degree cap max(D-1, 0).
template <Scalar T>
Series<T> partial_derivative(const Series<T>& s, std::size_t var) {
  if (var >= s.num_vars()) throw DimensionError("derivative variable out of range");
  Series<T> out(s.num_vars(), s.degree_cap() == 0 ? 0 : s.degree_cap() - 1);
  for (const auto& [idx, c] : s.terms()) {
    unsigned e = idx[var];
    if (e == 0) continue;
    std::vector<unsigned> exps = idx.exponents();
    exps[var] -= 1;
    out.set(MultiIndex(std::move(exps)), T(c * T(e)));
  }
  return out;
}

/// Horner evaluation of the truncated polynomial.
template <Scalar T>
T series_eval(const Series<T>& s, std::span<const T> point) {
  if (point.size() != s.num_vars()) throw DimensionError("evaluation point length does not match num_vars");
  auto mul = [](const T& a, const T& b) -> T { return a * b; };
  auto add = [](const T& a, const T& b) -> T { return a + b; };
  auto lift = [](const T& c) -> T { return c; };
  detail::HornerSubstitution<T, T, decltype(mul), decltype(add), decltype(lift)> horner(point, mul, add, lift);
  return horner.run(s, T(0));
}

template <Scalar T>
std::vector<T> series_eval(const SeriesMap<T>& m, std::span<const T> point) {
  std::vector<T> out;
  out.reserve(m.size());
  for (const auto& c : m.components()) out.push_back(series_eval(c, point));
  return out;
}

/// Truncated substitution outer(inner_1, ..., inner_k) of a single series.
template <Scalar T>
Series<T> series_substitute(const Series<T>& outer, std::span<const Series<T>> inner) {
  if (inner.size() != outer.num_vars()) throw DimensionError("inner map length must equal outer num_vars");
  if (inner.empty()) throw DimensionError("composition needs at least one inner component");
  const std::size_t nv = inner.front().num_vars();
  const unsigned cap = outer.degree_cap();
  for (const auto& f : inner) {
    if (f.num_vars() != nv) throw DimensionError("inner components disagree on num_vars");
    if (f.degree_cap() != cap) throw DimensionError("inner and outer degree caps differ");
    if (!is_zero(f.constant_term())) throw ValidationError("inner series has a nonzero constant term");
  }
  auto mul = [](const Series<T>& a, const Series<T>& b) { return series_mul(a, b); };
  auto add = [](const Series<T>& a, const Series<T>& b) { return series_add(a, b); };
  auto lift = [nv, cap](const T& c) { return Series<T>::constant(nv, cap, c); };
  detail::HornerSubstitution<T, Series<T>, decltype(mul), decltype(add), decltype(lift)> horner(inner, mul, add, lift);
  return horner.run(outer, Series<T>(nv, cap));
}

/// Truncated composition outer o inner.
template <Scalar T>
SeriesMap<T> series_compose(const SeriesMap<T>& outer, const SeriesMap<T>& inner) {
  if (inner.size() != outer.num_vars()) throw DimensionError("inner output dimension must equal outer num_vars");
  if (inner.degree_cap() != outer.degree_cap()) throw DimensionError("inner and outer degree caps differ");
  std::vector<Series<T>> comps;
  comps.reserve(outer.size());
  for (const auto& g : outer.components())
    comps.push_back(series_substitute(g, std::span<const Series<T>>(inner.components())));
  return SeriesMap<T>(std::move(comps), inner.num_vars(), outer.degree_cap());
}

/// a_n evaluated on the basis vectors listed (with multiplicity) in idx.
template <Scalar T>
SymTensorEntry<T> sym_tensor_entry(const Series<T>& s, std::vector<std::size_t> idx) {
  if (idx.size() > s.degree_cap()) throw DimensionError("index multiset larger than degree cap");
  std::vector<unsigned> exps(s.num_vars(), 0);
  for (std::size_t v : idx) {
    if (v >= s.num_vars()) throw DimensionError("index multiset references a variable out of range");
    ++exps[v];
  }
  std::sort(idx.begin(), idx.end());
  MultiIndex alpha(std::move(exps));
  SymTensorEntry<T> out;
  out.degree = static_cast<unsigned>(idx.size());
  out.index_multiset = std::move(idx);
  out.value = s.coefficient(alpha) * alpha.template factorial<T>();
  return out;
}

template <Scalar S, Scalar T>
Series<S> convert_series(const Series<T>& s) {
  Series<S> out(s.num_vars(), s.degree_cap());
  for (const auto& [idx, c] : s.terms()) out.set(idx, convert_scalar<S>(c));
  return out;
}

template <Scalar S, Scalar T>
SeriesMap<S> convert_series(const SeriesMap<T>& m) {
  std::vector<Series<S>> comps;
  for (const auto& c : m.components()) comps.push_back(convert_series<S>(c));
  return SeriesMap<S>(std::move(comps), m.num_vars(), m.degree_cap());
}

}  // namespace majorant
