#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "chabauty/errors.hpp"

namespace chabauty {

/// a + b*sqrt(d) in Q(sqrt(d)), d squarefree and different from 0 and 1.
/// Rationals are elements with b = 0; they combine with any d.
class QuadElement {
 public:
  QuadElement() : a_(0), b_(0), d_(-1) {}
  QuadElement(mpq_class a, mpq_class b, long d);
  static QuadElement rational(const mpq_class& a, long d) { return QuadElement(a, 0, d); }

  /// Parses "a", "b*s", "a+b*s", "a-s", ... with rational a, b. When d = -1
  /// the letter i is accepted in place of s.
  static QuadElement parse(const std::string& text, long d);

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  long d() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadElement conj() const { return QuadElement(a_, -b_, d_); }
  mpq_class trace() const { return 2 * a_; }
  mpq_class norm() const { return a_ * a_ - d_ * b_ * b_; }

  QuadElement operator-() const { return QuadElement(-a_, -b_, d_); }
  QuadElement operator+(const QuadElement& o) const;
  QuadElement operator-(const QuadElement& o) const;
  QuadElement operator*(const QuadElement& o) const;
  QuadElement operator/(const QuadElement& o) const;
  QuadElement inverse() const;
  QuadElement pow(unsigned e) const;

  bool operator==(const QuadElement& o) const;
  bool operator!=(const QuadElement& o) const { return !(*this == o); }
  /// Total order on (a, b) used for canonical sorting only.
  bool operator<(const QuadElement& o) const;

  /// "a+b*s" form; "i" for d = -1. Rationals print as the rational.
  std::string to_string() const;

 private:
  long common_d(const QuadElement& o) const;

  mpq_class a_, b_;
  long d_;
};

/// True when n (nonzero) has no square factor > 1.
bool is_squarefree(long n);

/// Square root of a rational in Q(sqrt(d)) if it exists there.
bool quad_sqrt(const QuadElement& x, QuadElement& root);

/// Exact rational square root, if any.
bool rational_sqrt(const mpq_class& x, mpq_class& root);

}  // namespace chabauty
