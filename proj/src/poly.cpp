#include "chabauty/poly.hpp"

#include <algorithm>
#include <set>

namespace chabauty {

void poly_trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long poly_degree(const RatPoly& f) {
  for (long k = static_cast<long>(f.size()) - 1; k >= 0; --k)
    if (f[static_cast<std::size_t>(k)] != 0) return k;
  return -1;
}

mpq_class poly_lead(const RatPoly& f) {
  long d = poly_degree(f);
  return d < 0 ? mpq_class(0) : f[static_cast<std::size_t>(d)];
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) { return poly_add(a, poly_scale(b, -1)); }

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

RatPoly poly_scale(const RatPoly& a, const mpq_class& c) {
  RatPoly r;
  for (const auto& x : a) r.push_back(x * c);
  poly_trim(r);
  return r;
}

RatPoly poly_derivative(const RatPoly& f) {
  RatPoly r;
  for (std::size_t k = 1; k < f.size(); ++k) r.push_back(f[k] * static_cast<long>(k));
  poly_trim(r);
  return r;
}

RatPoly poly_affine_substitute(const RatPoly& f, const mpq_class& c, const mpq_class& s) {
  RatPoly lin{s, c};
  poly_trim(lin);
  RatPoly r;
  for (long k = static_cast<long>(f.size()) - 1; k >= 0; --k)
    r = poly_add(poly_mul(r, lin), RatPoly{f[static_cast<std::size_t>(k)]});
  return r;
}

void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  long db = poly_degree(b);
  if (db < 0) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  r = a;
  poly_trim(r);
  long dr = poly_degree(r);
  q.assign(static_cast<std::size_t>(std::max(0L, dr - db + 1)), mpq_class(0));
  mpq_class lb = b[static_cast<std::size_t>(db)];
  while ((dr = poly_degree(r)) >= db) {
    mpq_class c = r[static_cast<std::size_t>(dr)] / lb;
    q[static_cast<std::size_t>(dr - db)] = c;
    for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(dr - db + i)] -= c * b[static_cast<std::size_t>(i)];
    poly_trim(r);
  }
  poly_trim(q);
}

RatPoly poly_mod(const RatPoly& a, const RatPoly& b) {
  RatPoly q, r;
  poly_divmod(a, b, q, r);
  return r;
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  poly_trim(x);
  poly_trim(y);
  while (!y.empty()) {
    RatPoly r = poly_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return x;
  return poly_scale(x, 1 / poly_lead(x));
}

RatPoly poly_inverse_mod(const RatPoly& a, const RatPoly& b) {
  // Extended Euclid tracking only the coefficient of a.
  RatPoly r0 = b, r1 = poly_mod(a, b), s0{}, s1{mpq_class(1)};
  while (poly_degree(r1) > 0) {
    RatPoly q, r;
    poly_divmod(r0, r1, q, r);
    RatPoly s = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) throw Error(ErrorKind::DivisionByZero, "polynomials are not coprime");
  return poly_mod(poly_scale(s1, 1 / r1[0]), b);
}

mpq_class poly_eval(const RatPoly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (long k = static_cast<long>(f.size()) - 1; k >= 0; --k) acc = acc * x + f[static_cast<std::size_t>(k)];
  return acc;
}

PadicNumber poly_eval(const RatPoly& f, const PadicNumber& x) {
  PadicNumber acc = PadicNumber::exact_zero(x.prime());
  for (long k = static_cast<long>(f.size()) - 1; k >= 0; --k) {
    acc = acc * x;
    const mpq_class& c = f[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    long n = acc.is_exact() ? (x.is_exact() ? 64 : x.precision()) : acc.precision();
    acc = acc + PadicNumber::from_rational(c, x.prime(), n + 1);
  }
  return acc;
}

mpq_class poly_resultant(const RatPoly& a, const RatPoly& b) {
  long m = poly_degree(a), n = poly_degree(b);
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  long size = m + n;
  std::vector<std::vector<mpq_class>> s(static_cast<std::size_t>(size), std::vector<mpq_class>(static_cast<std::size_t>(size)));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= m; ++j) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a[static_cast<std::size_t>(m - j)];
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b[static_cast<std::size_t>(n - j)];
  mpq_class det = 1;
  for (long c = 0; c < size; ++c) {
    long piv = -1;
    for (long r = c; r < size; ++r)
      if (s[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(s[static_cast<std::size_t>(piv)], s[static_cast<std::size_t>(c)]);
      det = -det;
    }
    const mpq_class pv = s[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    det *= pv;
    for (long r = c + 1; r < size; ++r) {
      mpq_class f = s[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / pv;
      if (f == 0) continue;
      for (long k = c; k < size; ++k)
        s[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * s[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
    }
  }
  return det;
}

mpq_class poly_discriminant(const RatPoly& f) {
  long n = poly_degree(f);
  if (n < 1) return 0;
  mpq_class r = poly_resultant(f, poly_derivative(f)) / poly_lead(f);
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  // Trial division; only used on small coefficients.
  std::vector<std::pair<mpz_class, int>> fac;
  mpz_class m = n;
  for (mpz_class d = 2; d * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e) fac.push_back({d, e});
    if (d > 1000000) break;
  }
  if (m > 1) fac.push_back({m, 1});
  out.push_back(1);
  for (auto& [q, e] : fac) {
    std::size_t cur = out.size();
    mpz_class pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= q;
      for (std::size_t i = 0; i < cur; ++i) out.push_back(out[i] * pw);
    }
  }
  return out;
}

}  // namespace

std::vector<mpq_class> poly_rational_roots(const RatPoly& f0) {
  RatPoly f = f0;
  poly_trim(f);
  std::set<mpq_class> roots;
  if (f.empty()) return {};
  // Clear denominators.
  mpz_class l = 1;
  for (auto& c : f) l = lcm(l, mpz_class(c.get_den()));
  std::vector<mpz_class> z;
  for (auto& c : f) z.push_back(mpz_class(c * l));
  std::size_t shift = 0;
  while (shift < z.size() && z[shift] == 0) ++shift;
  if (shift > 0) roots.insert(0);
  if (z.size() - shift <= 1) return {roots.begin(), roots.end()};
  for (const auto& a : divisors(z[shift]))
    for (const auto& b : divisors(z.back()))
      for (int sgn : {1, -1}) {
        mpq_class r(sgn * a, b);
        r.canonicalize();
        if (poly_eval(f, r) == 0) roots.insert(r);
      }
  return {roots.begin(), roots.end()};
}

std::string poly_to_string(const RatPoly& f, const std::string& var) {
  std::string out;
  for (long k = poly_degree(f); k >= 0; --k) {
    const mpq_class& c = f[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a != 1 || k == 0) out += a.get_str();
    if (k >= 1) out += (a != 1 ? "*" : "") + var;
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace chabauty
