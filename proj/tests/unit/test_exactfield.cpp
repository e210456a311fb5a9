#include "doctest.h"

#include <random>

#include "chabauty/exactfield.hpp"

using namespace chabauty;

namespace {

QuadElement random_element(std::mt19937_64& rng, long d) {
  std::uniform_int_distribution<long> n(-50, 50), den(1, 12);
  return QuadElement(mpq_class(n(rng), den(rng)), mpq_class(n(rng), den(rng)), d);
}

}  // namespace

TEST_CASE("Gaussian rationals") {
  QuadElement a(1, 1, -1), b(1, -1, -1);
  CHECK(a * b == QuadElement(2, 0, -1));
  CHECK(a.conj() == b);
  CHECK(a.conj().conj() == a);
  QuadElement i(0, 1, -1);
  CHECK(i.trace() == 0);
  CHECK(i.norm() == 1);
  QuadElement three = QuadElement::rational(3, -1);
  CHECK(three.trace() == 6);
  CHECK(three.norm() == 9);
}

TEST_CASE("parse and print") {
  CHECK(QuadElement::parse("1/2+3*s", 5) == QuadElement(mpq_class(1, 2), 3, 5));
  CHECK(QuadElement::parse("-i", -1) == QuadElement(0, -1, -1));
  CHECK(QuadElement::parse("2*i", -1) == QuadElement(0, 2, -1));
  CHECK(QuadElement::parse("-7/3", 2) == QuadElement(mpq_class(-7, 3), 0, 2));
  CHECK(QuadElement(mpq_class(1, 2), -3, 5).to_string() == "1/2-3*s");
  CHECK(QuadElement(0, 1, -1).to_string() == "i");
  CHECK_THROWS_AS(QuadElement::parse("1.5", 2), Error);
  CHECK_THROWS_AS(QuadElement::parse("1+", 2), Error);
}

TEST_CASE("errors") {
  QuadElement a(1, 1, -1), b(1, 1, 2);
  try {
    (void)(a + b);
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FieldMismatch);
  }
  try {
    (void)(a / QuadElement(0, 0, -1));
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
  CHECK_THROWS_AS(QuadElement(1, 1, 4), Error);
  CHECK(is_squarefree(-1));
  CHECK(is_squarefree(10));
  CHECK_FALSE(is_squarefree(12));
}

TEST_CASE("field identities on random elements") {
  std::mt19937_64 rng(11);
  const long ds[] = {-1, -3, 2, 5, -7, 10};
  for (int k = 0; k < 1000; ++k) {
    long d = ds[k % 6];
    QuadElement x = random_element(rng, d), y = random_element(rng, d);
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK(QuadElement::rational(x.trace(), d) == x + x.conj());
    CHECK(QuadElement::rational(x.norm(), d) == x * x.conj());
    CHECK(x.conj().conj() == x);
    if (!x.is_zero()) CHECK(x * x.inverse() == QuadElement::rational(1, d));
    CHECK((x + y) * x == x * x + y * x);
    // Q embeds as a ring homomorphism.
    mpq_class r = x.a(), s = y.b();
    CHECK(QuadElement::rational(r, d) * QuadElement::rational(s, d) == QuadElement::rational(r * s, d));
    CHECK(QuadElement::rational(r, d) + QuadElement::rational(s, d) == QuadElement::rational(r + s, d));
  }
}

TEST_CASE("square roots") {
  QuadElement root;
  CHECK(quad_sqrt(QuadElement::rational(-4, -1), root));
  CHECK(root * root == QuadElement::rational(-4, -1));
  CHECK_FALSE(quad_sqrt(QuadElement::rational(3, -1), root));
  mpq_class q;
  CHECK(rational_sqrt(mpq_class(9, 4), q));
  CHECK(q * q == mpq_class(9, 4));
  CHECK_FALSE(rational_sqrt(mpq_class(2), q));
}
