#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "chabauty/errors.hpp"

namespace chabauty {

/// Precision used for values that are known exactly (e.g. the exact zero
/// obtained by multiplying by the rational 0). Large enough to never be the
/// binding minimum, small enough that sums of two never overflow.
inline constexpr long kExactPrecision = 1L << 40;

/// Returns true for odd primes. p = 2 is rejected throughout the library.
bool is_odd_prime(long p);

/// Throws InvalidPrime unless p is an odd prime.
void require_odd_prime(long p);

/// p^k as a GMP integer; k >= 0.
mpz_class prime_power(long p, long k);

/// p-adic valuation of a nonzero integer.
long valuation(const mpz_class& n, long p);

/// p-adic valuation of a nonzero rational.
long valuation(const mpq_class& q, long p);

/// An element of Q_p known modulo p^N (capped absolute precision).
///
/// A nonzero value is p^v * u with u a unit known modulo p^(N - v); the
/// certified zero O(p^N) carries only N. Results of arithmetic carry exactly
/// the precision the propagation rules guarantee:
///
///   add/sub:  min(N_a, N_b)
///   mul:      min(N_a + v_b, N_b + v_a)
///   inverse:  N - 2v
///
/// Values are immutable.
class PadicNumber {
 public:
  /// O(3^0); a placeholder for default-constructed aggregates.
  PadicNumber() = default;

  /// The certified zero O(p^N).
  static PadicNumber zero(long p, long precision);
  /// Zero known exactly.
  static PadicNumber exact_zero(long p) { return zero(p, kExactPrecision); }

  static PadicNumber from_rational(const mpq_class& q, long p, long precision);
  static PadicNumber from_rational(const mpz_class& numerator,
                                   const mpz_class& denominator, long p,
                                   long precision);
  static PadicNumber from_integer(const mpz_class& n, long p, long precision) {
    return from_rational(mpq_class(n), p, precision);
  }

  /// p^v * u with u a unit (or 0) known modulo p^(precision - v).
  static PadicNumber from_parts(long p, long v, const mpz_class& u,
                                long precision);

  long prime() const { return p_; }
  /// Valuation; for the certified zero this is its precision.
  long valuation() const { return v_; }
  long precision() const { return N_; }
  long relative_precision() const { return is_zero() ? 0 : N_ - v_; }
  bool is_zero() const { return u_ == 0; }
  bool is_exact() const { return N_ >= kExactPrecision / 2; }
  const mpz_class& unit() const { return u_; }

  /// Base-p digits of the unit part, least significant first; one digit per
  /// unit of relative precision.
  std::vector<int> unit_digits() const;

  /// The value modulo p (v >= 0 required; returns 0 when v > 0).
  long residue() const;

  /// Smallest nonnegative integer congruent to the value modulo p^N.
  /// Requires v >= 0 (throws InvalidInput otherwise).
  mpz_class lift() const;

  /// Representative of the value modulo p^N in (-p^N/2, p^N/2].
  mpz_class signed_lift() const;

  /// Same value with precision lowered to min(precision, n).
  PadicNumber add_bigoh(long n) const;

  PadicNumber operator-() const;
  PadicNumber operator+(const PadicNumber& rhs) const;
  PadicNumber operator-(const PadicNumber& rhs) const;
  PadicNumber operator*(const PadicNumber& rhs) const;
  PadicNumber operator/(const PadicNumber& rhs) const;
  PadicNumber inverse() const;

  /// Multiplication and division by exactly known rationals.
  PadicNumber operator*(const mpq_class& c) const;
  PadicNumber operator/(const mpq_class& c) const;

  PadicNumber pow(long e) const;

  PadicNumber& operator+=(const PadicNumber& rhs) { return *this = *this + rhs; }
  PadicNumber& operator-=(const PadicNumber& rhs) { return *this = *this - rhs; }
  PadicNumber& operator*=(const PadicNumber& rhs) { return *this = *this * rhs; }

  /// Equality modulo p^min(N_a, N_b).
  bool equals(const PadicNumber& rhs) const;

  /// "d0 + d1*p + ... + O(p^N)" with zero digits omitted and unit
  /// coefficients written without "1*", e.g. "1 + 2*3^2 + 3^4 + O(3^10)".
  std::string to_string() const;

 private:
  PadicNumber(long p, long v, mpz_class u, long precision)
      : p_(p), v_(v), N_(precision), u_(std::move(u)) {}

  static PadicNumber normalized(long p, long v, mpz_class value, long precision);

  long p_ = 3;
  long v_ = 0;
  long N_ = 0;
  mpz_class u_;
};

/// Square root by Hensel lifting. `branch` selects the root whose unit part
/// is congruent to it modulo p. The result squares to `a` at the full
/// precision of `a`.
PadicNumber hensel_sqrt(const PadicNumber& a, long branch);

/// Both square roots exist iff this holds (v even, unit part a residue).
bool is_square(const PadicNumber& a);

/// The (p-1)-st root of unity congruent to `a` modulo p, to precision N.
/// Throws NotAUnit for non-units.
PadicNumber teichmuller(const PadicNumber& a, long precision);

/// Least residue r >= 0 with r^2 = a mod p, or -1.
long sqrt_mod_p(long a, long p);

}  // namespace chabauty
