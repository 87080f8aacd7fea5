#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support.hpp"
#include "qft/polynomial.hpp"
#include "qft/series.hpp"

using namespace qft;
using RP = RationalPolynomial;

namespace {

RP poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.push_back(x);
  return RP(v);
}

PowerSeries geometric(long r, int K) {
  std::vector<Rational> c;
  Rational p = 1;
  for (int n = 0; n <= K; ++n, p *= r) c.push_back(p);
  return PowerSeries(c, K);
}

}  // namespace

TEST_CASE("series arithmetic") {
  const int K = 12;
  PowerSeries one_minus_z = PowerSeries::one(K) - PowerSeries::z(K);
  CHECK(one_minus_z.reciprocal() == geometric(1, K));

  PowerSeries log1pz = (PowerSeries::one(K) + PowerSeries::z(K)).log();
  CHECK(log1pz[3] == Rational(1, 3));
  CHECK(log1pz[4] == Rational(-1, 4));
  CHECK(log1pz.exp() == PowerSeries::one(K) + PowerSeries::z(K));

  std::vector<Rational> c(K + 1);
  for (int n = 1; n <= K; ++n) c[n] = Rational(pow_big(3, static_cast<unsigned>(n)), n);
  CHECK(PowerSeries(c, K).exp() == geometric(3, K));
}

TEST_CASE("series preconditions and truncation") {
  PowerSeries z = PowerSeries::z(8);
  CHECK_THROWS_AS(z.reciprocal(), SeriesError);
  CHECK_THROWS_AS(PowerSeries::one(8).exp(), SeriesError);
  CHECK_THROWS_AS(z.log(), SeriesError);
  PowerSeries mixed = PowerSeries::one(5) + PowerSeries::z(9);
  CHECK(mixed.order() == 5);
  CHECK((PowerSeries::one(9) * PowerSeries::z(4)).order() == 4);
  CHECK(z.derivative().order() == 7);
}

TEST_CASE("from_rational matches the recurrence oracle") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int t = 0; t < 30; ++t) {
    std::vector<Rational> num(3), den(3);
    for (auto& x : num) x = coef(rng);
    for (auto& x : den) x = coef(rng);
    den[0] = 1 + std::abs(coef(rng));
    PowerSeries s = PowerSeries::from_rational(RP(num), RP(den), 15);
    auto ref = oracle::expand(num, den, 15);
    for (int n = 0; n <= 15; ++n) CHECK(s[n] == ref[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("log and exp are inverse on count series") {
  std::vector<BigInt> p = oracle::ints({1, 3, 4, 7, 11, 18, 29, 47, 76, 123});
  std::vector<Rational> c(11);
  for (int n = 1; n <= 10; ++n) c[n] = Rational(p[n - 1], n);
  PowerSeries z = PowerSeries(c, 10).exp();
  CHECK(z.is_integral());
  PowerSeries back = z.log();
  for (int n = 1; n <= 10; ++n) CHECK(back[n] * n == p[n - 1]);
}

TEST_CASE("polynomial arithmetic") {
  RP a = poly({-1, 0, 1});  // x^2 - 1
  RP b = poly({1, 1});      // x + 1
  CHECK(a.degree() == 2);
  CHECK(RP().degree() == -1);
  CHECK(a * b == poly({-1, -1, 1, 1}));
  PolyDivision d = divmod(a, b);
  CHECK(d.quotient == poly({-1, 1}));
  CHECK(d.remainder.is_zero());
  CHECK(gcd(a, poly({1, 2, 1})) == b);
  CHECK(gcd(poly({1, 1}), poly({-1, 1})) == RP::constant(1));
  CHECK_THROWS_AS(divmod(a, RP()), std::domain_error);
  CHECK(a(Rational(3)) == 8);
  CHECK(a.derivative() == poly({0, 2}));
  CHECK(a.compose(b) == poly({0, 2, 1}));
  CHECK(poly({2, 4}).monic() == RP(std::vector<Rational>{Rational(1, 2), Rational(1)}));
  CHECK(a.to_string() == "-1 + x^2");
}

TEST_CASE("rational roots") {
  RP p = poly({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
  auto roots = rational_roots(p);
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == 1);
  CHECK(roots[2] == 3);
  RP q = RP(std::vector<Rational>{Rational(1), Rational(-10)});  // 1 - 10x
  auto r = rational_roots(q);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == Rational(1, 10));
  CHECK(rational_roots(poly({1, 0, 1})).empty());
  CHECK(rational_roots(poly({0, 0, 1})) == std::vector<Rational>{0});
}
