#include "chabauty/ffield.hpp"

#include "chabauty/errors.hpp"
#include "chabauty/padic.hpp"

namespace chabauty {

namespace {

// Digits of a in base p, length k.
std::vector<long> digits(long a, long p, int k) {
  std::vector<long> d(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = a % p;
    a /= p;
  }
  return d;
}

long undigits(const std::vector<long>& d, long p) {
  long a = 0;
  for (long i = static_cast<long>(d.size()) - 1; i >= 0; --i) a = a * p + d[static_cast<std::size_t>(i)];
  return a;
}

// Multiplication by the generator x modulo the monic polynomial with lower
// coefficients `low`.
long times_x(long a, const std::vector<long>& low, long p, int k) {
  auto d = digits(a, p, k);
  long top = d[static_cast<std::size_t>(k - 1)];
  for (int i = k - 1; i > 0; --i) d[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i - 1)];
  d[0] = 0;
  for (int i = 0; i < k; ++i)
    d[static_cast<std::size_t>(i)] = ((d[static_cast<std::size_t>(i)] - top * low[static_cast<std::size_t>(i)]) % p + p) % p;
  return undigits(d, p);
}

}  // namespace

FiniteField::FiniteField(long p, int k) : p_(p), k_(k) {
  require_odd_prime(p);
  if (k < 1 || k > 8) throw Error(ErrorKind::InvalidInput, "extension degree out of range");
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
  if (q_ > 4000000) throw Error(ErrorKind::InvalidInput, "finite field too large to enumerate");
  log_.assign(static_cast<std::size_t>(q_), -1);
  if (k == 1) {
    for (long g = 2; g < p; ++g) {
      long x = 1, order = 0;
      do {
        x = x * g % p;
        ++order;
      } while (x != 1);
      if (order == p - 1) {
        exp_.clear();
        x = 1;
        for (long i = 0; i < p - 1; ++i) {
          exp_.push_back(x);
          x = x * g % p;
        }
        break;
      }
    }
  } else {
    // Search monic polynomials of degree k for one whose root has order q-1.
    for (long code = 0; code < q_; ++code) {
      auto low = digits(code, p, k);
      if (low[0] == 0) continue;
      std::vector<long> e;
      long x = 1;
      bool ok = true;
      for (long i = 0; i < q_ - 1; ++i) {
        if (i > 0 && x == 1) {
          ok = false;
          break;
        }
        e.push_back(x);
        x = times_x(x, low, p, k);
      }
      if (ok && x == 1) {
        exp_ = std::move(e);
        break;
      }
    }
  }
  if (static_cast<long>(exp_.size()) != q_ - 1) throw Error(ErrorKind::InvalidInput, "no primitive polynomial found");
  for (long i = 0; i < q_ - 1; ++i) log_[static_cast<std::size_t>(exp_[static_cast<std::size_t>(i)])] = i;
}

long FiniteField::add(long a, long b) const {
  long r = 0, m = 1;
  for (int i = 0; i < k_; ++i) {
    r += ((a % p_ + b % p_) % p_) * m;
    a /= p_;
    b /= p_;
    m *= p_;
  }
  return r;
}

long FiniteField::neg(long a) const {
  long r = 0, m = 1;
  for (int i = 0; i < k_; ++i) {
    r += ((p_ - a % p_) % p_) * m;
    a /= p_;
    m *= p_;
  }
  return r;
}

long FiniteField::sub(long a, long b) const { return add(a, neg(b)); }

long FiniteField::mul(long a, long b) const {
  if (a == 0 || b == 0) return 0;
  long e = (log_[static_cast<std::size_t>(a)] + log_[static_cast<std::size_t>(b)]) % (q_ - 1);
  return exp_[static_cast<std::size_t>(e)];
}

long FiniteField::inv(long a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in a finite field");
  long e = (q_ - 1 - log_[static_cast<std::size_t>(a)]) % (q_ - 1);
  return exp_[static_cast<std::size_t>(e)];
}

long FiniteField::pow(long a, long e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  long m = q_ - 1;
  long r = ((log_[static_cast<std::size_t>(a)] * (e % m)) % m + m) % m;
  return exp_[static_cast<std::size_t>(r)];
}

long FiniteField::from_integer(long n) const { return ((n % p_) + p_) % p_; }

bool FiniteField::is_square(long a) const { return a == 0 || log_[static_cast<std::size_t>(a)] % 2 == 0; }

long FiniteField::sqrt(long a) const {
  if (a == 0) return 0;
  if (!is_square(a)) throw Error(ErrorKind::NoSquareRoot, "non-square in a finite field");
  return exp_[static_cast<std::size_t>(log_[static_cast<std::size_t>(a)] / 2)];
}

std::string FiniteField::to_string(long a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a, p_, k_);
  std::string out;
  for (int i = k_ - 1; i >= 0; --i) {
    long c = d[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += (c != 1 ? "*" : std::string()) + "a";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace chabauty
