#include "chabauty/padic.hpp"

#include <algorithm>
#include <unordered_map>

namespace chabauty {

bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

void require_odd_prime(long p) {
  if (!is_odd_prime(p))
    throw Error(ErrorKind::InvalidPrime,
                "expected an odd prime, got " + std::to_string(p));
}

mpz_class prime_power(long p, long k) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "negative exponent in prime_power");
  if (k > 1L << 20)
    throw Error(ErrorKind::InvalidInput, "prime_power exponent out of range");
  thread_local std::unordered_map<long, std::vector<mpz_class>> cache;
  auto& powers = cache[p];
  if (powers.empty()) powers.emplace_back(1);
  while (static_cast<long>(powers.size()) <= k)
    powers.push_back(powers.back() * p);
  return powers[static_cast<std::size_t>(k)];
}

long valuation(const mpz_class& n, long p) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "valuation of zero");
  mpz_class m = n;
  mpz_class pz = p;
  return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
}

long valuation(const mpq_class& q, long p) {
  return valuation(mpz_class(q.get_num()), p) - valuation(mpz_class(q.get_den()), p);
}

namespace {

mpz_class strip(const mpz_class& n, long p, long& removed) {
  mpz_class m = n;
  mpz_class pz = p;
  removed = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
  return m;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorKind::DivisionByZero, "non-invertible residue");
  return r;
}

long cap(long n) { return std::min(n, kExactPrecision); }

void check_same_prime(long a, long b) {
  if (a != b)
    throw Error(ErrorKind::PrimeMismatch,
                "p-adic primes differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

PadicNumber PadicNumber::zero(long p, long precision) {
  return PadicNumber(p, cap(precision), mpz_class(0), cap(precision));
}

PadicNumber PadicNumber::normalized(long p, long v, mpz_class value, long precision) {
  precision = cap(precision);
  if (value == 0 || precision - v <= 0) return zero(p, precision);
  if (precision >= kExactPrecision / 2)
    throw Error(ErrorKind::InvalidInput, "nonzero p-adic value with unbounded precision");
  value = mod_pos(value, prime_power(p, precision - v));
  if (value == 0) return zero(p, precision);
  long removed = 0;
  value = strip(value, p, removed);
  v += removed;
  if (v >= precision) return zero(p, precision);
  return PadicNumber(p, v, std::move(value), precision);
}

PadicNumber PadicNumber::from_parts(long p, long v, const mpz_class& u, long precision) {
  require_odd_prime(p);
  return normalized(p, v, u, precision);
}

PadicNumber PadicNumber::from_rational(const mpq_class& q, long p, long precision) {
  require_odd_prime(p);
  if (q == 0) return zero(p, precision);
  long vn = 0;
  long vd = 0;
  mpz_class num = strip(q.get_num(), p, vn);
  mpz_class den = strip(q.get_den(), p, vd);
  long v = vn - vd;
  if (v >= precision) return zero(p, precision);
  mpz_class m = prime_power(p, precision - v);
  return normalized(p, v, mod_pos(num * inverse_mod(den, m), m), precision);
}

PadicNumber PadicNumber::from_rational(const mpz_class& numerator,
                                       const mpz_class& denominator, long p,
                                       long precision) {
  if (denominator == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  return from_rational(mpq_class(numerator, denominator), p, precision);
}

std::vector<int> PadicNumber::unit_digits() const {
  std::vector<int> digits;
  if (is_zero()) return digits;
  mpz_class u = u_;
  for (long i = 0; i < N_ - v_; ++i) {
    mpz_class r = mod_pos(u, mpz_class(p_));
    digits.push_back(static_cast<int>(r.get_si()));
    u = (u - r) / p_;
  }
  return digits;
}

long PadicNumber::residue() const {
  if (v_ < 0 && !is_zero())
    throw Error(ErrorKind::InvalidInput, "residue of a non-integral p-adic number");
  if (is_zero() && N_ <= 0)
    throw PrecisionExhausted("residue of O(p^" + std::to_string(N_) + ") is undetermined", 1 - N_);
  if (is_zero() || v_ > 0) return 0;
  return mod_pos(u_, mpz_class(p_)).get_si();
}

mpz_class PadicNumber::lift() const {
  if (is_zero()) return 0;
  if (v_ < 0) throw Error(ErrorKind::InvalidInput, "lift of a non-integral p-adic number");
  return u_ * prime_power(p_, v_);
}

mpz_class PadicNumber::signed_lift() const {
  mpz_class r = lift();
  if (is_zero()) return r;
  mpz_class m = prime_power(p_, N_);
  if (2 * r > m) r -= m;
  return r;
}

PadicNumber PadicNumber::add_bigoh(long n) const {
  if (n >= N_) return *this;
  if (is_zero()) return zero(p_, n);
  return normalized(p_, v_, u_, n);
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  return normalized(p_, v_, -u_, N_);
}

PadicNumber PadicNumber::operator+(const PadicNumber& rhs) const {
  check_same_prime(p_, rhs.p_);
  long n = std::min(N_, rhs.N_);
  if (is_zero()) return rhs.add_bigoh(n);
  if (rhs.is_zero()) return add_bigoh(n);
  long vmin = std::min(v_, rhs.v_);
  if (vmin >= n) return zero(p_, n);
  mpz_class sum = u_ * prime_power(p_, v_ - vmin) + rhs.u_ * prime_power(p_, rhs.v_ - vmin);
  return normalized(p_, vmin, std::move(sum), n);
}

PadicNumber PadicNumber::operator-(const PadicNumber& rhs) const { return *this + (-rhs); }

PadicNumber PadicNumber::operator*(const PadicNumber& rhs) const {
  check_same_prime(p_, rhs.p_);
  long n = std::min(cap(N_ + rhs.v_), cap(rhs.N_ + v_));
  if (is_zero() || rhs.is_zero()) return zero(p_, n);
  return normalized(p_, v_ + rhs.v_, u_ * rhs.u_, n);
}

PadicNumber PadicNumber::inverse() const {
  if (is_zero())
    throw Error(ErrorKind::DivisionByZero, "inverse of " + to_string());
  long r = N_ - v_;
  return normalized(p_, -v_, inverse_mod(u_, prime_power(p_, r)), N_ - 2 * v_);
}

PadicNumber PadicNumber::operator/(const PadicNumber& rhs) const {
  check_same_prime(p_, rhs.p_);
  return *this * rhs.inverse();
}

PadicNumber PadicNumber::operator*(const mpq_class& c) const {
  if (c == 0) return exact_zero(p_);
  long vc = chabauty::valuation(c, p_);
  if (is_zero()) return zero(p_, N_ + vc);
  long a = 0;
  long b = 0;
  mpz_class num = strip(c.get_num(), p_, a);
  mpz_class den = strip(c.get_den(), p_, b);
  long n = N_ + vc;
  mpz_class m = prime_power(p_, N_ - v_);
  return normalized(p_, v_ + vc, u_ * num * inverse_mod(den, m), n);
}

PadicNumber PadicNumber::operator/(const mpq_class& c) const {
  if (c == 0) throw Error(ErrorKind::DivisionByZero, "division by the rational 0");
  return *this * mpq_class(1 / c);
}

PadicNumber PadicNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) {
    long n = is_zero() ? 1 : std::max(1L, N_ - v_);
    return from_integer(1, p_, n);
  }
  PadicNumber base = *this;
  PadicNumber result = *this;
  --e;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool PadicNumber::equals(const PadicNumber& rhs) const {
  return (*this - rhs).is_zero();
}

std::string PadicNumber::to_string() const {
  const std::string ps = std::to_string(p_);
  auto power = [&](long e) -> std::string {
    if (e == 0) return "";
    if (e == 1) return ps;
    return ps + "^" + std::to_string(e);
  };
  std::string out;
  if (!is_zero()) {
    auto digits = unit_digits();
    for (std::size_t i = 0; i < digits.size(); ++i) {
      int d = digits[i];
      if (d == 0) continue;
      long e = v_ + static_cast<long>(i);
      std::string term;
      if (e == 0) {
        term = std::to_string(d);
      } else if (d == 1) {
        term = power(e);
      } else {
        term = std::to_string(d) + "*" + power(e);
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
  }
  if (!out.empty()) out += " + ";
  if (N_ >= kExactPrecision / 2) return out.empty() ? "0" : out.substr(0, out.size() - 3);
  out += "O(" + ps + (N_ == 1 ? "" : "^" + std::to_string(N_)) + ")";
  return out;
}

long sqrt_mod_p(long a, long p) {
  a = ((a % p) + p) % p;
  for (long r = 0; r < p; ++r)
    if ((r * r) % p == a) return r;
  return -1;
}

bool is_square(const PadicNumber& a) {
  if (a.is_zero()) return true;
  if (a.valuation() % 2 != 0) return false;
  long r = mod_pos(a.unit(), mpz_class(a.prime())).get_si();
  return sqrt_mod_p(r, a.prime()) >= 0;
}

PadicNumber hensel_sqrt(const PadicNumber& a, long branch) {
  const long p = a.prime();
  if (a.is_zero()) return PadicNumber::zero(p, (a.precision() + 1) / 2);
  if (a.valuation() % 2 != 0)
    throw Error(ErrorKind::NoSquareRoot, "odd valuation in " + a.to_string());
  long ubar = mod_pos(a.unit(), mpz_class(p)).get_si();
  long r0 = sqrt_mod_p(ubar, p);
  if (r0 < 0) throw Error(ErrorKind::NoSquareRoot, a.to_string() + " is not a square");
  long b = ((branch % p) + p) % p;
  if (b == r0) {
  } else if (b == (p - r0) % p) {
    r0 = b;
  } else {
    throw Error(ErrorKind::InvalidInput,
                "branch " + std::to_string(branch) + " is not a square root of " +
                    std::to_string(ubar) + " mod " + std::to_string(p));
  }
  const long rel = a.precision() - a.valuation();
  mpz_class s = r0;
  long known = 1;
  while (known < rel) {
    known = std::min(2 * known, rel);
    mpz_class m = prime_power(p, known);
    mpz_class f = mod_pos(s * s - a.unit(), m);
    s = mod_pos(s - f * inverse_mod(mpz_class(2) * s, m), m);
  }
  long half = a.valuation() / 2;
  return PadicNumber::from_parts(p, half, s, a.precision() - half);
}

PadicNumber teichmuller(const PadicNumber& a, long precision) {
  if (a.is_zero() || a.valuation() != 0)
    throw Error(ErrorKind::NotAUnit, "teichmuller of non-unit " + a.to_string());
  const long p = a.prime();
  if (precision <= 0) return PadicNumber::zero(p, precision);
  mpz_class m = prime_power(p, precision);
  mpz_class x = mod_pos(a.unit(), mpz_class(p));
  mpz_class e = prime_power(p, precision - 1);
  mpz_class r;
  mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return PadicNumber::from_parts(p, 0, r, precision);
}

}  // namespace chabauty
