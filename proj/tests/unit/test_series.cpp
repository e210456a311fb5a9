#include "doctest.h"

#include "chabauty/series.hpp"

using namespace chabauty;

namespace {
PadicNumber Z(long n, long p = 3, long N = 20) { return PadicNumber::from_integer(n, p, N); }
}  // namespace

TEST_CASE("strassman count of 3 + t^2") {
  auto f = TruncatedSeries::polynomial(3, {Z(3), Z(0).add_bigoh(kExactPrecision), Z(1)});
  f = TruncatedSeries::polynomial(3, {Z(3), PadicNumber::exact_zero(3), Z(1)});
  CHECK(strassman_count(f) == 2);
}

TEST_CASE("strassman needs precision") {
  TruncatedSeries f(3, {Z(1), PadicNumber::zero(3, 0)}, 2, 5);
  CHECK_THROWS_AS(strassman_count(f), PrecisionExhausted);
  TruncatedSeries g(3, {Z(1), Z(3)}, 2);
  CHECK_THROWS_AS(strassman_count(g), PrecisionExhausted);
}

TEST_CASE("inverse and sqrt") {
  TruncatedSeries f(3, {Z(1), Z(1)}, 8, 0);
  auto g = f.inverse();
  for (long k = 0; k < 8; ++k) CHECK(g.coefficient(k).equals(Z(k % 2 ? -1 : 1)));
  auto s = (f * f).truncate(8).sqrt(Z(1));
  CHECK(s.coefficient(1).equals(Z(1)));
  CHECK(s.coefficient(3).is_zero());
}

TEST_CASE("revert and compose") {
  // f = t + t^2, reversion g satisfies f(g) = t.
  TruncatedSeries f(3, {PadicNumber::exact_zero(3), Z(1), Z(1)}, 10, kExactPrecision);
  auto g = f.revert();
  auto fg = f.compose(g);
  CHECK(fg.coefficient(1).equals(Z(1)));
  for (long k = 2; k < 10; ++k) CHECK(fg.coefficient(k).is_zero());
  // Catalan numbers up to sign.
  CHECK(g.coefficient(4).equals(Z(-5)));
}

TEST_CASE("isolate zeros of (t-1)(t-4)") {
  auto f = TruncatedSeries::polynomial(3, {Z(4), Z(-5), Z(1)});
  auto iso = isolate_zeros(f);
  REQUIRE(iso.zeros.size() == 2);
  CHECK(iso.clusters.empty());
  bool one = false, four = false;
  for (auto& z : iso.zeros) {
    one |= z.equals(Z(1));
    four |= z.equals(Z(4));
  }
  CHECK(one);
  CHECK(four);
}

TEST_CASE("double zero stays a cluster") {
  auto f = TruncatedSeries::polynomial(3, {Z(1), Z(-2), Z(1)});
  auto iso = isolate_zeros(f);
  CHECK(iso.zeros.empty());
  REQUIRE(!iso.clusters.empty());
}
