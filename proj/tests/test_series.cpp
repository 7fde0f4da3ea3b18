#include "doctest.h"
#include "majorant/series.hpp"
#include "support.hpp"

#include <random>

using namespace majorant;
using namespace majorant::testing;

namespace {

using Q = Rational;

Series<Q> xq(unsigned cap, std::size_t nv = 1, std::size_t v = 0) { return Series<Q>::variable(nv, cap, v); }

MultiIndex mi(std::initializer_list<unsigned> e) { return MultiIndex(std::vector<unsigned>(e)); }

Series<Q> random_series(std::mt19937_64& rng, std::size_t nv, unsigned cap, bool zero_constant) {
  Series<Q> s(nv, cap);
  std::uniform_int_distribution<int> count(0, 6);
  int n = count(rng);
  for (int k = 0; k < n; ++k) {
    std::vector<unsigned> e(nv, 0);
    std::uniform_int_distribution<unsigned> deg(zero_constant ? 1 : 0, cap);
    unsigned d = deg(rng);
    for (unsigned j = 0; j < d; ++j) ++e[std::uniform_int_distribution<std::size_t>(0, nv - 1)(rng)];
    s.add_to(MultiIndex(std::move(e)), random_rational(rng));
  }
  return s;
}

}  // namespace

TEST_SUITE("series_core") {
  TEST_CASE("multi-index bookkeeping") {
    MultiIndex a = mi({2, 0, 1});
    CHECK(a.total_degree() == 3);
    CHECK(a.size() == 3);
    CHECK((a + mi({0, 1, 1})) == mi({2, 1, 2}));
    CHECK(a.factorial<Q>() == 2);
    CHECK(mi({1, 0}) < mi({0, 2}));
    CHECK(mi({2, 0}) < mi({1, 1}));
  }

  TEST_CASE("sparsity and degree invariants") {
    Series<Q> s(2, 3);
    s.set(mi({1, 0}), Q(0));
    CHECK(s.is_zero());
    CHECK_THROWS_AS(s.set(mi({2, 2}), Q(1)), DimensionError);
    CHECK_THROWS_AS(s.set(mi({1}), Q(1)), DimensionError);
    Series<double> f(1, 2);
    CHECK_THROWS_AS(f.set(mi({1}), std::nan("")), ValidationError);
  }

  TEST_CASE("add: cancellation, identity, linearity") {
    auto x = xq(4);
    auto x2 = x * x;
    CHECK(((x + x2) + (-x2)) == x);
    CHECK((x + Series<Q>(1, 4)) == x);
    CHECK((series_scale(x, Q(2)) + series_scale(x, Q(3))) == series_scale(x, Q(5)));
    CHECK_THROWS_AS(series_add(x, xq(3)), DimensionError);
    CHECK_THROWS_AS(series_add(x, xq(4, 2)), DimensionError);
  }

  TEST_CASE("mul matches naive convolution") {
    std::vector<Q> f{0, 1, 1};
    auto full = naive_convolution(f, f);  // x^2 + 2x^3 + x^4
    CHECK(full == std::vector<Q>{0, 0, 1, 2, 1});

    auto s = univariate(f, 4);
    CHECK((s * s) == univariate(full, 4));
    auto s3 = univariate(f, 3);
    CHECK((s3 * s3) == univariate(full, 3));
    CHECK((s3 * s3).coefficient(mi({4})) == 0);
    CHECK((s * Series<Q>::constant(1, 4, Q(1))) == s);
  }

  TEST_CASE("compose") {
    SUBCASE("y^2 after x + x^2") {
      auto x = xq(4);
      SeriesMap<Q> outer({xq(4) * xq(4)}, 1, 4);
      SeriesMap<Q> inner({x + x * x}, 1, 4);
      auto expected = naive_convolution(std::vector<Q>{0, 1, 1}, std::vector<Q>{0, 1, 1});
      CHECK(series_compose(outer, inner)[0] == univariate(expected, 4));
    }
    SUBCASE("identity outer") {
      auto x = xq(5, 2, 0), y = xq(5, 2, 1);
      SeriesMap<Q> inner({x * y + x, y * y * y - x}, 2, 5);
      CHECK(series_compose(SeriesMap<Q>::identity(2, 5), inner) == inner);
    }
    SUBCASE("linear chain") {
      SeriesMap<Q> outer({xq(3)}, 1, 3);
      SeriesMap<Q> inner({series_scale(xq(3), Q(3))}, 1, 3);
      CHECK(series_compose(outer, inner)[0] == series_scale(xq(3), Q(3)));
    }
    SUBCASE("errors") {
      SeriesMap<Q> outer({xq(3)}, 1, 3);
      SeriesMap<Q> shifted({xq(3) + Series<Q>::constant(1, 3, Q(1))}, 1, 3);
      CHECK_THROWS_AS(series_compose(outer, shifted), ValidationError);
      SeriesMap<Q> two(2, 1, 3);
      CHECK_THROWS_AS(series_compose(outer, two), DimensionError);
    }
  }

  TEST_CASE("partial derivative") {
    auto X = xq(3, 2, 0), Y = xq(3, 2, 1);
    CHECK(partial_derivative(X + Y * Y, 1) == series_scale(Y, Q(2)).with_cap(2));
    CHECK(partial_derivative(Series<Q>::constant(2, 3, Q(7)), 0).is_zero());
    CHECK(partial_derivative(X * X * Y, 0) == series_scale(X * Y, Q(2)).with_cap(2));
    CHECK(partial_derivative(X, 0).degree_cap() == 2);
    CHECK_THROWS_AS(partial_derivative(X, 2), DimensionError);
  }

  TEST_CASE("evaluation") {
    Series<double> X = Series<double>::variable(2, 2, 0), Y = Series<double>::variable(2, 2, 1);
    const double pt[] = {0.25, 0.5};
    CHECK(series_eval(X + Y * Y, std::span<const double>(pt)) == doctest::Approx(0.5));
    Series<Q> s(2, 3);
    s.set(mi({0, 0}), Q(7, 3));
    s.set(mi({1, 2}), Q(5));
    const Q zero[] = {Q(0), Q(0)};
    CHECK(series_eval(s, std::span<const Q>(zero)) == Q(7, 3));
    auto x = xq(3);
    const Q two[] = {Q(2)};
    CHECK(series_eval(x * x * x, std::span<const Q>(two)) == 8);
    CHECK_THROWS_AS(series_eval(x, std::span<const Q>(zero)), DimensionError);
  }

  TEST_CASE("symmetric tensor entries") {
    auto x = xq(3, 2, 0), y = xq(3, 2, 1);
    CHECK(sym_tensor_entry(y * y, {1, 1}).value == 2);
    CHECK(sym_tensor_entry(x * y, {1, 0}).value == 1);
    auto e = sym_tensor_entry(x * x * x, {0, 0, 0});
    CHECK(e.value == 6);
    CHECK(e.degree == 3);
    CHECK(e.index_multiset == std::vector<std::size_t>{0, 0, 0});
    CHECK_THROWS_AS(sym_tensor_entry(x, {2}), DimensionError);
    CHECK_THROWS_AS(sym_tensor_entry(x, {0, 0, 0, 0}), DimensionError);
  }

  TEST_CASE("property: ring laws at a fixed cap") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = random_series(rng, 2, 4, false), b = random_series(rng, 2, 4, false), c = random_series(rng, 2, 4, false);
      CHECK(a + b == b + a);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(partial_derivative(a + b, 1) == partial_derivative(a, 1) + partial_derivative(b, 1));
    }
  }

  TEST_CASE("property: truncated composition is associative") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
      const unsigned cap = 4;
      auto map = [&] {
        return SeriesMap<Q>({random_series(rng, 2, cap, true), random_series(rng, 2, cap, true)}, 2, cap);
      };
      auto f = map(), g = map(), h = map();
      CHECK(series_compose(series_compose(h, g), f) == series_compose(h, series_compose(g, f)));
    }
  }

  TEST_CASE("property: monomial / tensor round trip") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      auto s = random_series(rng, 3, 4, false);
      Series<Q> rebuilt(3, 4);
      for (const auto& [idx, c] : s.terms()) {
        std::vector<std::size_t> multiset;
        for (std::size_t v = 0; v < idx.size(); ++v)
          for (unsigned k = 0; k < idx[v]; ++k) multiset.push_back(v);
        Q value = sym_tensor_entry(s, multiset).value;
        rebuilt.set(idx, Q(value / idx.factorial<Q>()));
      }
      CHECK(rebuilt == s);
    }
  }

  TEST_CASE("float composition agrees with exact") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
      SeriesMap<Q> g({random_series(rng, 2, 4, false)}, 2, 4);
      SeriesMap<Q> f({random_series(rng, 2, 4, true), random_series(rng, 2, 4, true)}, 2, 4);
      auto exact = convert_series<double>(series_compose(g, f));
      auto approx = series_compose(convert_series<double>(g), convert_series<double>(f));
      for (const auto& [idx, c] : exact[0].terms()) CHECK(approx[0].coefficient(idx) == doctest::Approx(c));
    }
  }
}
