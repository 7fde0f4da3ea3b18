#pragma once

// Coordinate Riesz spaces R^n with the entrywise order, and the lattice
// norms used to measure the primal x- and y-spaces.
//
// Every finite-dimensional coordinate space is Dedekind sigma-complete, so
// monotone bounded iterates always have a supremum here.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "majorant/errors.hpp"
#include "majorant/scalar.hpp"

namespace majorant {

template <Scalar T>
struct LatticeVec {
  std::vector<T> entries;

  LatticeVec() = default;
  explicit LatticeVec(std::vector<T> e) : entries(std::move(e)) {}
  LatticeVec(std::initializer_list<T> e) : entries(e) {}

  static LatticeVec zeros(std::size_t n) { return LatticeVec(std::vector<T>(n, T(0))); }

  std::size_t dimension() const { return entries.size(); }
  const T& operator[](std::size_t i) const { return entries[i]; }
  T& operator[](std::size_t i) { return entries[i]; }
  std::span<const T> span() const { return entries; }

  friend bool operator==(const LatticeVec&, const LatticeVec&) = default;
};

namespace detail {
template <Scalar T>
void require_same_dimension(const LatticeVec<T>& a, const LatticeVec<T>& b) {
  if (a.dimension() != b.dimension()) throw DimensionError("lattice vectors have different dimensions");
}
}  // namespace detail

template <Scalar T>
LatticeVec<T> lattice_abs(const LatticeVec<T>& v) {
  LatticeVec<T> out = v;
  for (auto& e : out.entries) e = abs_value(e);
  return out;
}

template <Scalar T>
LatticeVec<T> lattice_sup(const LatticeVec<T>& a, const LatticeVec<T>& b) {
  detail::require_same_dimension(a, b);
  LatticeVec<T> out = a;
  for (std::size_t i = 0; i < out.dimension(); ++i)
    if (b[i] > out[i]) out[i] = b[i];
  return out;
}

template <Scalar T>
LatticeVec<T> lattice_inf(const LatticeVec<T>& a, const LatticeVec<T>& b) {
  detail::require_same_dimension(a, b);
  LatticeVec<T> out = a;
  for (std::size_t i = 0; i < out.dimension(); ++i)
    if (b[i] < out[i]) out[i] = b[i];
  return out;
}

/// a <= b entrywise. Incomparable pairs are false in both directions.
template <Scalar T>
bool lattice_leq(const LatticeVec<T>& a, const LatticeVec<T>& b) {
  detail::require_same_dimension(a, b);
  for (std::size_t i = 0; i < a.dimension(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

template <Scalar T>
bool is_nonnegative(const LatticeVec<T>& v) {
  return std::all_of(v.entries.begin(), v.entries.end(), [](const T& e) { return e >= 0; });
}

template <Scalar T>
LatticeVec<T> lattice_add(const LatticeVec<T>& a, const LatticeVec<T>& b) {
  detail::require_same_dimension(a, b);
  LatticeVec<T> out = a;
  for (std::size_t i = 0; i < out.dimension(); ++i) out[i] += b[i];
  return out;
}

template <Scalar T>
LatticeVec<T> lattice_sub(const LatticeVec<T>& a, const LatticeVec<T>& b) {
  detail::require_same_dimension(a, b);
  LatticeVec<T> out = a;
  for (std::size_t i = 0; i < out.dimension(); ++i) out[i] -= b[i];
  return out;
}

template <Scalar T>
LatticeVec<T> lattice_scale(const LatticeVec<T>& a, const T& s) {
  LatticeVec<T> out = a;
  for (auto& e : out.entries) e *= s;
  return out;
}

template <Scalar T>
T max_entry(const LatticeVec<T>& v) {
  T m = 0;
  for (const auto& e : v.entries)
    if (e > m) m = e;
  return m;
}

enum class NormKind { Scalar, Componentwise, Aggregate };

std::string_view norm_kind_name(NormKind k);
NormKind parse_norm_kind(std::string_view name);

/// How a primal coordinate space R^p is normed:
///   Scalar        p = 1, ||v|| = |v_1| in R
///   Componentwise ||v|| = (|v_1|, ..., |v_p|) in R^p (the space normed by itself)
///   Aggregate     ||v|| = max_i |v_i| in R (a Banach-normed space)
struct NormProfile {
  NormKind kind = NormKind::Componentwise;
  std::size_t primal_dim = 1;

  NormProfile() = default;
  NormProfile(NormKind k, std::size_t dim) : kind(k), primal_dim(dim) {
    if (dim == 0) throw ValidationError("norm profile needs a positive primal dimension");
    if (k == NormKind::Scalar && dim != 1) throw ValidationError("scalar norm profile requires primal dimension 1");
  }

  std::size_t norming_dim() const { return kind == NormKind::Componentwise ? primal_dim : 1; }

  // Norming coordinate that bounds primal coordinate i.
  std::size_t norming_index(std::size_t i) const { return kind == NormKind::Componentwise ? i : 0; }

  friend bool operator==(const NormProfile&, const NormProfile&) = default;
};

template <Scalar T>
LatticeVec<T> norm(const NormProfile& profile, std::span<const T> v) {
  if (v.size() != profile.primal_dim) throw DimensionError("vector length does not match the profile's primal dimension");
  switch (profile.kind) {
    case NormKind::Scalar:
      return LatticeVec<T>{abs_value(v[0])};
    case NormKind::Componentwise: {
      LatticeVec<T> out(std::vector<T>(v.begin(), v.end()));
      return lattice_abs(out);
    }
    case NormKind::Aggregate: {
      T m = 0;
      for (const auto& e : v) {
        T a = abs_value(e);
        if (a > m) m = a;
      }
      return LatticeVec<T>{m};
    }
  }
  throw ValidationError("unknown norm kind");
}

template <Scalar T>
LatticeVec<T> norm(const NormProfile& profile, const std::vector<T>& v) {
  return norm(profile, std::span<const T>(v));
}

}  // namespace majorant
