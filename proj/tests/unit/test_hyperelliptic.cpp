#include "doctest.h"

#include "chabauty/hyperelliptic.hpp"

using namespace chabauty;

namespace {
HyperellipticModel x037() { return HyperellipticModel::from_descending({-1, 0, -9, 0, -11, 0, 37}); }
}  // namespace

TEST_CASE("good reduction") {
  CHECK(check_good_reduction(x037(), 3));
  CHECK_FALSE(check_good_reduction(x037(), 37));
  CHECK(check_good_reduction(HyperellipticModel({0, -1, 0, 1}), 5));
  CHECK_THROWS_AS(HyperellipticModel({0, 0, 1, 1}), Error);
}

TEST_CASE("points mod 3 on X0(37)") {
  auto pts = points_mod_p(x037(), 3);
  REQUIRE(pts.size() == 6);
  std::vector<std::pair<long, long>> expect{{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK_FALSE(pts[i].infinity);
    CHECK(pts[i].x == expect[i].first);
    CHECK(pts[i].y == expect[i].second);
  }
  auto disks = classify_disks(x037(), 3);
  CHECK(disks.size() == 6);
  for (auto& d : disks) CHECK(d.kind == DiskKind::Ordinary);
}

TEST_CASE("brute-force counts") {
  // (2y+1)^2 = 4x^3 - 4x + 1 over F_3.
  HyperellipticModel e1({1, -4, 0, 4});
  long affine = 0;
  for (long x = 0; x < 3; ++x)
    for (long y = 0; y < 3; ++y)
      if (((y * y + y - x * x * x + x) % 3 + 3) % 3 == 0) ++affine;
  CHECK(count_points_mod_p(e1, 3) == affine + 1);
  CHECK(count_points_mod_p(e1, 3) == 7);
  // Independent enumeration over F_49 for y^2 = x^5 + 1 via an explicit F_7[i] model.
  HyperellipticModel c({1, 0, 0, 0, 0, 1});
  long n = 1;
  auto mul = [](std::pair<long, long> a, std::pair<long, long> b) {
    return std::pair<long, long>{((a.first * b.first - a.second * b.second) % 7 + 7) % 7,
                                 ((a.first * b.second + a.second * b.first) % 7 + 7) % 7};
  };
  for (long a = 0; a < 7; ++a)
    for (long b = 0; b < 7; ++b) {
      std::pair<long, long> x{a, b}, v{1, 0};
      for (int k = 0; k < 5; ++k) v = mul(v, x);
      v.first = (v.first + 1) % 7;
      for (long s = 0; s < 7; ++s)
        for (long t = 0; t < 7; ++t)
          if (mul({s, t}, {s, t}) == v) ++n;
    }
  CHECK(count_points_mod_p(c, 7, 2) == n);
}

TEST_CASE("disk kinds") {
  auto d1 = classify_disks(HyperellipticModel({0, -1, 0, 1}), 5);
  bool w = false;
  for (auto& d : d1) w |= (d.kind == DiskKind::Weierstrass && d.x0 == 0);
  CHECK(w);
  auto d2 = classify_disks(HyperellipticModel({1, 0, 0, 0, 0, 1}), 7);
  long inf = 0;
  for (auto& d : d2) inf += d.kind == DiskKind::Infinite;
  CHECK(inf == 1);
}

TEST_CASE("S0 and the local coordinate S_t") {
  auto m = x037();
  ResidueDisk disk{DiskKind::Ordinary, 0, 1};
  auto c = lift_disk_center(disk, m, 3, 10);
  CHECK(c.y.to_string() == "1 + 2*3^2 + 3^4 + 2*3^5 + 3^7 + 2*3^8 + 2*3^9 + O(3^10)");
  auto e = local_parametrization(disk, m, c, 10);
  const auto& y = *e.y;
  auto agrees = [](const PadicNumber& a, long v, long k) {
    return a.equals(PadicNumber::from_integer(v, 3, k)) && a.precision() >= k;
  };
  CHECK(agrees(y.coefficient(0), -3788, 8));
  CHECK(agrees(y.coefficient(2), 2159, 10));
  CHECK(agrees(y.coefficient(4), -15737, 10));
  CHECK(agrees(y.coefficient(6), -23833, 10));
  CHECK(agrees(y.coefficient(8), 746 * 27, 10));
  for (long k = 1; k < 10; k += 2) CHECK(y.coefficient(k).is_zero());
  auto lhs = (y * y).truncate(10);
  auto X = *e.x;
  for (long k = 0; k < 10; ++k) {
    PadicNumber gk = PadicNumber::from_rational(k <= 6 ? m.g()[static_cast<std::size_t>(k)] : mpq_class(0), 3, 20);
    CHECK((lhs.coefficient(k) - gk).is_zero());
  }
}

TEST_CASE("parametrization reproduces other points") {
  auto m = x037();
  ResidueDisk disk{DiskKind::Ordinary, 1, 1};
  auto e = local_parametrization(disk, m, 3, 12, 14);
  // (4, ...) is not on the curve; use the exact point (1,4) = center and a 3-adic neighbour.
  auto c = lift_disk_center(disk, m, 3, 12);
  CHECK(c.y.equals(PadicNumber::from_integer(4, 3, 12)));
  PadicNumber t = PadicNumber::from_integer(3, 3, 12);
  auto q = point_at(e, t);
  CHECK((q.y * q.y - m.eval(q.x)).is_zero());
  CHECK(parameter_of(e, m, q).equals(t));
}

TEST_CASE("weierstrass and infinite expansions satisfy the curve") {
  HyperellipticModel m({0, -1, 0, 1});
  ResidueDisk w{DiskKind::Weierstrass, 1, 0};
  auto e = local_parametrization(w, m, 5, 12, 12);
  auto lhs = (*e.y * *e.y).truncate(12);
  // g(x(t)) via Horner.
  auto X = *e.x;
  TruncatedSeries gx = TruncatedSeries(5, {}, 12, kExactPrecision);
  for (long k = 3; k >= 0; --k)
    gx = (gx * X).truncate(12) + TruncatedSeries(5, {PadicNumber::from_rational(m.g()[static_cast<std::size_t>(k)], 5, 30)}, 12, kExactPrecision);
  for (long k = 0; k < 12; ++k) CHECK((lhs.coefficient(k) - gx.coefficient(k)).is_zero());

  HyperellipticModel q({1, 0, 0, 0, 0, 1});
  auto ei = local_parametrization(ResidueDisk{DiskKind::Infinite, 0, 0}, q, 7, 10, 10);
  CHECK(ei.omega.size() == 2);
  CHECK(ei.omega[1].coefficient(0).equals(PadicNumber::from_integer(-1, 7, 10)));
}

TEST_CASE("involutions") {
  auto m = x037();
  RationalPoint p{1, 4};
  CHECK(apply_involution(m, Involution::Sigma, p) == RationalPoint{1, -4});
  CHECK(apply_involution(m, Involution::W, p) == RationalPoint{-1, 4});
  CHECK(apply_involution(m, Involution::WSigma, apply_involution(m, Involution::WSigma, p)) == p);
  CHECK_THROWS_AS(apply_involution(HyperellipticModel({1, 0, 0, 0, 0, 1}), Involution::W, p), Error);
}

TEST_CASE("small height search and reduction") {
  auto m = x037();
  auto pts = small_height_points(m, 100);
  CHECK(pts.size() == 4);
  auto disks = classify_disks(m, 3);
  for (auto& p : pts) {
    auto d = disk_of(m, to_local(m, p, 3, 10));
    CHECK(std::find(disks.begin(), disks.end(), d) != disks.end());
  }
}

TEST_CASE("rational reconstruction") {
  CHECK(*recognize_rational(PadicNumber::from_rational(mpq_class(-4), 3, 10)) == -4);
  CHECK(*recognize_rational(PadicNumber::from_rational(mpq_class(7, 9), 3, 12)) == mpq_class(7, 9));
  auto r = hensel_sqrt(PadicNumber::from_integer(37, 3, 10), 1);
  CHECK_FALSE(recognize_rational(r).has_value());
}
