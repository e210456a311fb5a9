#include "doctest.h"

#include <algorithm>
#include <set>

#include "chabauty/brings.hpp"

using namespace chabauty;

namespace {

ProjPoint5 known() { return ProjPoint5::parse("(1:i:-1:-i:0)", -1); }

// Projective normalization independent of the library: divide by the first nonzero coordinate.
std::array<QuadElement, 5> normalize(std::array<QuadElement, 5> c) {
  QuadElement lead;
  for (const auto& z : c)
    if (!z.is_zero()) {
      lead = z;
      break;
    }
  for (auto& z : c) z = z / lead;
  return c;
}

std::string key(const std::array<QuadElement, 5>& c) {
  std::string s;
  for (const auto& z : c) s += z.to_string() + ":";
  return s;
}

bool on_e(const EPoint& P) {
  if (P.infinity) return true;
  return e_equation(P.x, P.y).is_zero();
}

bool in_e_q(const EPoint& P) {
  if (P.infinity) return true;
  return P.x == QuadElement::rational(-2, P.x.d()) &&
         (P.y == QuadElement::rational(4, P.x.d()) || P.y == QuadElement::rational(-4, P.x.d()));
}

mpq_class tn(const mpq_class& r) { return 2 * r + 4 * r * r; }

}  // namespace

TEST_CASE("Bring's curve equations") {
  CHECK(verify_brings(known()));
  CHECK(verify_brings(known().conj()));
  CHECK_FALSE(verify_brings(ProjPoint5::parse("(1:1:1:1:1)", -1)));
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  int n = 0;
  do {
    CHECK(verify_brings(known().permuted(perm)));
    ++n;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(n == 120);
}

TEST_CASE("orbit size agrees with explicit deduplication") {
  std::set<std::string> seen;
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  for (int conj = 0; conj < 2; ++conj) {
    auto base = known().coords();
    if (conj)
      for (auto& z : base) z = z.conj();
    std::sort(perm.begin(), perm.end());
    do {
      std::array<QuadElement, 5> c;
      for (int k = 0; k < 5; ++k) c[k] = base[perm[k]];
      seen.insert(key(normalize(c)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  auto orb = orbit(known());
  CHECK(orb.size() == seen.size());
  CHECK(orb.size() == 30);
  for (const auto& p : orb) CHECK(verify_brings(p));
  CHECK(canonical_representative(known().conj().permuted({4, 3, 2, 1, 0})) == canonical_representative(known()));
}

TEST_CASE("E' and E") {
  auto q = [](long a) { return QuadElement::rational(a, -1); };
  CHECK(eprime_equation(q(0), q(-1)).is_zero());
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) CHECK(eprime_equation(q(x), q(y)) == eprime_equation(q(y), q(x)));
  auto [X, Y] = eprime_to_e(q(0), q(-1));
  CHECK(X == q(-2));
  CHECK(Y == q(4));
  CHECK(e_equation(q(-2), q(4)).is_zero());
  CHECK(16 + 5 * (-8) + 5 * 4 + 4 == 0);
  auto [X2, Y2] = eprime_to_e(q(-1), q(0));
  CHECK(X2 == q(-2));
  CHECK(Y2 == q(-4));
  try {
    eprime_to_e(q(0), QuadElement::rational(mpq_class(-1, 2), -1));
    FAIL("expected MapsToInfinity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MapsToInfinity);
  }
}

TEST_CASE("quotient maps land in E(Q)") {
  for (const auto& pt : orbit(known())) {
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) {
        try {
          auto [x, y] = quotient_to_eprime(pt, {a, b});
          CHECK(eprime_equation(x, y).is_zero());
        } catch (const Error& e) {
          CHECK(e.kind() == ErrorKind::AtInfinity);
        }
        EPoint img = bring_to_e(pt, {a, b});
        CHECK(on_e(img));
        EPoint tr = trace_to_e(pt, {a, b});
        CAPTURE(pt.to_string());
        CHECK(in_e_q(tr));
      }
  }
}

TEST_CASE("trace/norm constraint") {
  QuadElement i(0, 1, -1);
  CHECK(trace_norm_constraint(i, -i));
  CHECK(trace_norm_constraint(QuadElement::rational(1, -1), QuadElement::rational(1, -1)));
  CHECK_FALSE(trace_norm_constraint(QuadElement::rational(1, -1), QuadElement::rational(2, -1)));
  try {
    trace_norm_constraint(i, QuadElement(0, 1, 2));
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FieldMismatch);
  }
  // Points (x0:x1:x2:x3:1) whose (x0 x1)-quotient traces to infinity on E satisfy the
  // constraint for x = x2, y = x3.
  int used = 0;
  for (const auto& pt : orbit(known())) {
    const auto& c = pt.coords();
    if (c[4].is_zero()) continue;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (!trace_to_e(pt, {a, b}).infinity) continue;
        std::vector<int> rest;
        for (int k = 0; k < 4; ++k)
          if (k != a && k != b) rest.push_back(k);
        CHECK(trace_norm_constraint(c[rest[0]] / c[4], c[rest[1]] / c[4]));
        ++used;
      }
  }
  CHECK(used > 0);
}

TEST_CASE("S3 product constraint") {
  auto c = known().coords();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k)
        if (a != b && b != k && a != k) CHECK(s3_product_constraint(c[a], c[b], c[k]));
  // (1, 2, 3) factor by factor: over the six orderings (s0, s1, s2),
  // tn(s0/s2) - tn(s1/s2) with tn(r) = 2r + 4r^2.
  const mpq_class v[3] = {1, 2, 3};
  int order[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  mpq_class prod = 1;
  for (auto& o : order) prod *= tn(v[o[0]] / v[o[2]]) - tn(v[o[1]] / v[o[2]]);
  auto q = [](long a) { return QuadElement::rational(a, -1); };
  CHECK(s3_product(q(1), q(2), q(3)) == QuadElement::rational(prod, -1));
  CHECK(prod != 0);
  CHECK_FALSE(s3_product_constraint(q(1), q(2), q(3)));
  CHECK(s3_product_constraint(q(2), q(2), q(5)));
  try {
    s3_product(q(0), q(1), q(2));
    FAIL("expected InvalidRatio");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidRatio);
  }
}

TEST_CASE("bounded search") {
  CHECK(fields_with_discriminant_bound(1).empty());
  auto f5 = fields_with_discriminant_bound(5);
  CHECK(f5 == std::vector<long>{-3, -1, 5});
  auto none = bounded_quadratic_search(1, 2);
  CHECK(none.orbits.empty());
  auto r = bounded_quadratic_search(5, 2);
  REQUIRE(r.orbits.size() == 1);
  const auto& reps = r.orbits[0].representatives;
  REQUIRE(reps.size() == 2);
  std::set<std::string> got{reps[0].to_string(), reps[1].to_string()};
  CHECK(got == std::set<std::string>{"(1:i:-1:-i:0)", "(1:-i:-1:i:0)"});
  CHECK(r.orbits[0].orbit_size == 30);
  CHECK(r.candidates > r.filtered);
}
