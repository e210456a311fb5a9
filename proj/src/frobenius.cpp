#include "chabauty/frobenius.hpp"

#include <algorithm>
#include <cmath>

namespace chabauty {

namespace {

mpq_class qpow(const mpq_class& c, long e) {
  mpq_class r = 1;
  for (long i = 0; i < std::labs(e); ++i) r *= c;
  return e < 0 ? 1 / r : r;
}

}  // namespace

std::string OddModelChange::description() const {
  if (kind == Kind::Quartic)
    return "U = " + b1.get_str() + "/(x - " + r.get_str() + "), V = " + b1.get_str() + "*y/(x - " + r.get_str() + ")^2";
  std::string u = "U = " + a.get_str() + "*x" + (b != 0 ? " + " + b.get_str() : std::string());
  return u + ", V = " + c.get_str() + "*y";
}

RationalPoint OddModelChange::map(const RationalPoint& pt) const {
  if (kind == Kind::Affine) {
    if (pt.infinity) return RationalPoint::at_infinity();
    return {a * pt.x + b, c * pt.y};
  }
  if (pt.infinity) {
    mpq_class l;
    if (!rational_sqrt(source.lead(), l)) throw Error(ErrorKind::InvalidInput, "no rational point at infinity");
    return {0, pt.sign * b1 * l};
  }
  mpq_class z = pt.x - r;
  if (z == 0) return RationalPoint::at_infinity();
  return {b1 / z, b1 * pt.y / (z * z)};
}

LocalPoint OddModelChange::map(const LocalPoint& pt) const {
  const long p = pt.x.prime();
  if (kind == Kind::Affine) {
    if (pt.infinity) return LocalPoint::at_infinity(PadicNumber::zero(p, pt.y.precision()));
    long n = std::max(pt.x.precision(), pt.y.precision()) + 4;
    return {pt.x * a + PadicNumber::from_rational(b, p, n), pt.y * c, false};
  }
  if (pt.infinity) return {PadicNumber::exact_zero(p), pt.y * b1, false};
  PadicNumber z = pt.x - PadicNumber::from_rational(r, p, pt.x.precision() + 4);
  if (z.is_zero()) return LocalPoint::at_infinity(PadicNumber::zero(p, pt.y.precision()));
  PadicNumber zi = z.inverse();
  return {zi * b1, pt.y * zi * zi * b1, false};
}

OddModelChange to_odd_model(const HyperellipticModel& model) {
  const long d = model.degree();
  OddModelChange ch{model, model};
  if (d == 3 || d == 5) {
    const mpq_class c = model.lead();
    RatPoly t;
    for (long k = 0; k <= d; ++k) t.push_back(model.g()[static_cast<std::size_t>(k)] * qpow(c, d - 1 - k));
    ch.target = HyperellipticModel(t);
    ch.kind = OddModelChange::Kind::Affine;
    ch.a = c;
    ch.b = 0;
    ch.c = qpow(c, (d - 1) / 2);
    const long n = d - 1;
    ch.omega.assign(static_cast<std::size_t>(n), std::vector<mpq_class>(static_cast<std::size_t>(n), 0));
    for (long i = 0; i < n; ++i) ch.omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = qpow(c, (d - 3) / 2 - i);
    return ch;
  }
  if (d == 4) {
    auto roots = poly_rational_roots(model.g());
    if (roots.empty()) throw Error(ErrorKind::NormalizationUnavailable, "quartic has no rational root");
    // Prefer the root of smallest height.
    auto height = [](const mpq_class& q) { return std::max(mpz_class(abs(q.get_num())), mpz_class(q.get_den())); };
    mpq_class r = *std::min_element(roots.begin(), roots.end(),
                                    [&](const mpq_class& u, const mpq_class& v) { return height(u) < height(v); });
    RatPoly b = poly_affine_substitute(model.g(), 1, r);
    b.resize(5);
    const mpq_class b1 = b[1];
    ch.target = HyperellipticModel(RatPoly{b[4] * b1 * b1, b[3] * b1, b[2], 1});
    ch.kind = OddModelChange::Kind::Quartic;
    ch.r = r;
    ch.b1 = b1;
    ch.omega = {{-1, 0}};
    return ch;
  }
  throw Error(ErrorKind::NormalizationUnavailable, "no odd normalization for a genus 2 even model");
}

HyperellipticModel completed_square_model(const WeierstrassCoefficients& w) {
  mpq_class b2 = w.a1 * w.a1 + 4 * w.a2, b4 = 2 * w.a4 + w.a1 * w.a3, b6 = w.a3 * w.a3 + 4 * w.a6;
  return HyperellipticModel(RatPoly{b6, 2 * b4, b2, 4});
}

OddModelChange to_odd_model(const WeierstrassCoefficients& w) { return to_odd_model(completed_square_model(w)); }

mpq_class j_invariant(const WeierstrassCoefficients& w) {
  mpq_class b2 = w.a1 * w.a1 + 4 * w.a2, b4 = 2 * w.a4 + w.a1 * w.a3, b6 = w.a3 * w.a3 + 4 * w.a6;
  mpq_class b8 = w.a1 * w.a1 * w.a6 + 4 * w.a2 * w.a6 - w.a1 * w.a3 * w.a4 + w.a2 * w.a3 * w.a3 - w.a4 * w.a4;
  mpq_class c4 = b2 * b2 - 24 * b4;
  mpq_class disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (disc == 0) throw Error(ErrorKind::InvalidModel, "singular Weierstrass equation");
  return c4 * c4 * c4 / disc;
}

namespace {

void ptrim(PadicPoly& f) {
  while (!f.empty() && f.back().is_zero() && f.back().is_exact()) f.pop_back();
}

PadicPoly padd(const PadicPoly& a, const PadicPoly& b) {
  const long p = !a.empty() ? a[0].prime() : (!b.empty() ? b[0].prime() : 3);
  PadicPoly r(std::max(a.size(), b.size()), PadicNumber::exact_zero(p));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  ptrim(r);
  return r;
}

PadicPoly pscale(const PadicPoly& a, const mpq_class& c) {
  PadicPoly r;
  for (const auto& x : a) r.push_back(x * c);
  ptrim(r);
  return r;
}

PadicPoly pmul(const PadicPoly& a, const PadicPoly& b) {
  if (a.empty() || b.empty()) return {};
  PadicPoly r(a.size() + b.size() - 1, PadicNumber::exact_zero(a[0].prime()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() && a[i].is_exact()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ptrim(r);
  return r;
}

PadicPoly pshift(const PadicPoly& a, long k) {
  if (a.empty()) return a;
  PadicPoly r(static_cast<std::size_t>(k), PadicNumber::exact_zero(a[0].prime()));
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

PadicPoly pderiv(const PadicPoly& a) {
  PadicPoly r;
  for (std::size_t k = 1; k < a.size(); ++k) r.push_back(a[k] * mpq_class(static_cast<long>(k)));
  ptrim(r);
  return r;
}

// Division by a monic polynomial whose leading coefficient is 1.
void pdivmod_monic(const PadicPoly& a, const PadicPoly& q, PadicPoly& quo, PadicPoly& rem) {
  const long dq = static_cast<long>(q.size()) - 1;
  rem = a;
  const long p = q[0].prime();
  long da = static_cast<long>(rem.size()) - 1;
  quo.assign(static_cast<std::size_t>(std::max(0L, da - dq + 1)), PadicNumber::exact_zero(p));
  for (long m = da; m >= dq; --m) {
    PadicNumber c = rem[static_cast<std::size_t>(m)];
    quo[static_cast<std::size_t>(m - dq)] = c;
    if (c.is_zero() && c.is_exact()) continue;
    for (long i = 0; i < dq; ++i) rem[static_cast<std::size_t>(m - dq + i)] -= c * q[static_cast<std::size_t>(i)];
    rem[static_cast<std::size_t>(m)] = PadicNumber::exact_zero(p);
  }
  if (static_cast<long>(rem.size()) > dq) rem.resize(static_cast<std::size_t>(std::max(0L, dq)), PadicNumber::exact_zero(p));
  ptrim(rem);
  ptrim(quo);
}

PadicPoly pmod_monic(const PadicPoly& a, const PadicPoly& q) {
  PadicPoly quo, rem;
  pdivmod_monic(a, q, quo, rem);
  return rem;
}

PadicPoly to_padic(const RatPoly& f, long p, long W) {
  PadicPoly r;
  for (const auto& c : f) r.push_back(c == 0 ? PadicNumber::exact_zero(p) : PadicNumber::from_rational(c, p, W));
  ptrim(r);
  return r;
}

long ceil_log(long p, double x) {
  long e = 0;
  double v = 1;
  while (v < x) {
    v *= static_cast<double>(p);
    ++e;
  }
  return e;
}

long loss(long p, long k, long d) { return 2 * ceil_log(p, static_cast<double>(p * (2 * k + 1) * d)) + 1; }

mpq_class binom_minus_half(long k) {
  mpq_class r = 1;
  for (long j = 0; j < k; ++j) r *= mpq_class(-1 - 2 * j, 2 * (j + 1));
  return r;
}

FrobeniusData frobenius_attempt(const HyperellipticModel& model, long p, long N, long W) {
  const long d = model.degree();
  const int g = model.genus();
  const long n = 2 * g;

  long K = 1;
  auto ok_from = [&](long start) {
    for (long k = start; k < start + 400; ++k)
      if (k + 1 - loss(p, k, d) < N) return false;
    return true;
  };
  while (!ok_from(K)) ++K;
  long trunc = kExactPrecision;
  for (long k = K; k < K + 400; ++k) trunc = std::min(trunc, k + 1 - loss(p, k, d));

  PadicPoly Q = to_padic(model.g(), p, W);
  PadicPoly dQ = pderiv(Q);
  PadicPoly S = to_padic(poly_inverse_mod(poly_derivative(model.g()), model.g()), p, W);

  // E = Q(x^p) - Q(x)^p.
  PadicPoly Qxp(static_cast<std::size_t>(d * p + 1), PadicNumber::exact_zero(p));
  for (long k = 0; k <= d; ++k) Qxp[static_cast<std::size_t>(k * p)] = Q[static_cast<std::size_t>(k)];
  PadicPoly Qp = Q;
  for (long i = 1; i < p; ++i) Qp = pmul(Qp, Q);
  PadicPoly E = padd(Qxp, pscale(Qp, -1));

  FrobeniusData fd;
  fd.p = p;
  fd.genus = g;
  fd.working_precision = W;
  fd.terms = K;
  fd.matrix.assign(static_cast<std::size_t>(n), {});
  fd.exact.assign(static_cast<std::size_t>(n), {});

  std::vector<PadicPoly> Ek{to_padic(RatPoly{1}, p, W)};
  for (long k = 1; k < K; ++k) Ek.push_back(pmul(Ek.back(), E));

  for (long i = 0; i < n; ++i) {
    std::map<long, PadicPoly> A;  // power s of 1/y -> coefficient
    std::map<long, PadicPoly> F;  // power e of y -> coefficient
    for (long k = 0; k < K; ++k) {
      PadicPoly term = pshift(pscale(Ek[static_cast<std::size_t>(k)], binom_minus_half(k) * p), p * i + p - 1);
      long s = p * (2 * k + 1);
      A[s] = padd(A[s], term);
    }
    for (long s = A.empty() ? 0 : A.rbegin()->first; s >= 3; s -= 2) {
      auto it = A.find(s);
      if (it == A.end() || it->second.empty()) continue;
      const PadicPoly a = it->second;
      PadicPoly C = pmod_monic(pmul(pmod_monic(a, Q), S), Q);
      PadicPoly B, rem;
      pdivmod_monic(padd(a, pscale(pmul(C, dQ), -1)), Q, B, rem);
      A[s - 2] = padd(A[s - 2], padd(B, pscale(pderiv(C), mpq_class(2, s - 2))));
      F[2 - s] = padd(F[2 - s], pscale(C, mpq_class(2, 2 - s)));
      A.erase(it);
    }
    PadicPoly a1 = A[1];
    PadicPoly poly_y;
    for (long m = static_cast<long>(a1.size()) - 1; m >= d - 1; --m) {
      if (m >= static_cast<long>(a1.size())) continue;
      PadicNumber c = a1[static_cast<std::size_t>(m)];
      const long aa = m - d + 1;
      PadicNumber f = c * mpq_class(2, 2 * aa + d);
      // d(x^aa y) = (aa x^(aa-1) Q + x^aa Q'/2) dx/y.
      PadicPoly red = pshift(pscale(dQ, mpq_class(1, 2)), aa);
      if (aa >= 1) red = padd(red, pshift(pscale(Q, aa), aa - 1));
      PadicPoly fr;
      for (const auto& r : red) fr.push_back(r * f);
      a1 = padd(a1, pscale(fr, -1));
      if (static_cast<long>(a1.size()) > m) a1[static_cast<std::size_t>(m)] = PadicNumber::exact_zero(p);
      ptrim(a1);
      PadicPoly mono(static_cast<std::size_t>(aa + 1), PadicNumber::exact_zero(p));
      mono[static_cast<std::size_t>(aa)] = f;
      poly_y = padd(poly_y, mono);
    }
    if (!poly_y.empty()) F[1] = padd(F[1], poly_y);
    auto& row = fd.matrix[static_cast<std::size_t>(i)];
    for (long j = 0; j < n; ++j)
      row.push_back((j < static_cast<long>(a1.size()) ? a1[static_cast<std::size_t>(j)] : PadicNumber::exact_zero(p)).add_bigoh(trunc));
    for (auto& [e, poly] : F) {
      PadicPoly half;
      for (const auto& c : poly) half.push_back((c * mpq_class(1, 2)).add_bigoh(trunc));
      fd.exact[static_cast<std::size_t>(i)][e] = half;
    }
  }
  long prec = trunc;
  for (const auto& row : fd.matrix)
    for (const auto& x : row) prec = std::min(prec, x.precision());
  fd.precision = prec;
  return fd;
}

}  // namespace

PadicNumber FrobeniusData::exact_part(int i, const LocalPoint& pt) const {
  if (pt.infinity) throw Error(ErrorKind::UnsupportedDisk, "exact part at infinity");
  if (pt.y.is_zero() || pt.y.valuation() != 0) throw Error(ErrorKind::UnsupportedDisk, "exact part needs a unit y");
  PadicNumber total = PadicNumber::exact_zero(p);
  PadicNumber yinv = pt.y.inverse();
  for (const auto& [e, poly] : exact[static_cast<std::size_t>(i)]) {
    PadicNumber v = PadicNumber::exact_zero(p);
    for (long k = static_cast<long>(poly.size()) - 1; k >= 0; --k) v = v * pt.x + poly[static_cast<std::size_t>(k)];
    total += v * (e >= 0 ? pt.y.pow(e) : yinv.pow(-e));
  }
  return total;
}

FrobeniusData frobenius_matrix(const HyperellipticModel& model, long p, long N) {
  require_odd_prime(p);
  if (!model.odd_degree() || model.lead() != 1)
    throw Error(ErrorKind::UnsupportedModel, "Frobenius needs a monic odd-degree model");
  if (!check_good_reduction(model, p))
    throw Error(ErrorKind::InvalidModel, "model has bad reduction at " + std::to_string(p));
  long W = N + ceil_log(p, 2.0 * static_cast<double>(N)) + 2;
  long shortfall = 0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    FrobeniusData fd = frobenius_attempt(model, p, N, W);
    if (fd.precision >= N) return fd;
    shortfall = N - fd.precision;
    W += shortfall + 1;
  }
  throw PrecisionExhausted("Frobenius matrix precision short by " + std::to_string(shortfall) + " digits", shortfall);
}

namespace {

// det(T*I - M) as polynomial coefficients (constant first).
PadicPoly charpoly(const std::vector<std::vector<PadicNumber>>& M, long p, long W) {
  const std::size_t n = M.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  PadicPoly total;
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    PadicPoly prod{PadicNumber::from_integer(sign, p, W)};
    for (std::size_t i = 0; i < n; ++i) {
      PadicPoly entry{-M[i][perm[i]]};
      if (perm[i] == i) entry.push_back(PadicNumber::from_integer(1, p, W));
      prod = pmul(prod, entry);
    }
    total = padd(total, prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

std::vector<mpz_class> zeta_numerator(const FrobeniusData& fd) {
  const long p = fd.p;
  const long g = fd.genus;
  const long n = 2 * g;
  PadicPoly chi = charpoly(fd.matrix, p, fd.precision + 8);
  std::vector<mpz_class> c(static_cast<std::size_t>(n + 1));  // c[k] = coefficient of T^(n-k)
  c[0] = 1;
  for (long k = 1; k <= g; ++k) {
    PadicNumber v = chi[static_cast<std::size_t>(n - k)];
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    // |c_k| <= binom(2g,k) p^(k/2).
    mpz_class bound = binom * sqrt(prime_power(p, k)) + binom;
    if (v.precision() <= 0 || prime_power(p, v.precision()) <= 2 * bound)
      throw PrecisionExhausted("zeta numerator coefficient " + std::to_string(k) + " cannot be rounded", 1);
    if (!v.is_zero() && v.valuation() < 0)
      throw PrecisionExhausted("zeta numerator coefficient is not integral", 1);
    c[static_cast<std::size_t>(k)] = v.is_zero() ? mpz_class(0) : v.signed_lift();
  }
  for (long k = 0; k < g; ++k) c[static_cast<std::size_t>(n - k)] = prime_power(p, g - k) * c[static_cast<std::size_t>(k)];
  std::vector<mpz_class> low(static_cast<std::size_t>(n + 1));
  for (long j = 0; j <= n; ++j) low[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(n - j)];
  return low;
}

mpz_class lefschetz_count(const std::vector<mpz_class>& chi, long p, int k) {
  const long n = static_cast<long>(chi.size()) - 1;
  // Elementary symmetric functions e_j = (-1)^j chi[n-j].
  std::vector<mpz_class> e(static_cast<std::size_t>(n + 1));
  for (long j = 0; j <= n; ++j) e[static_cast<std::size_t>(j)] = (j % 2 ? -1 : 1) * chi[static_cast<std::size_t>(n - j)];
  std::vector<mpz_class> ps(static_cast<std::size_t>(k + 1));
  for (long m = 1; m <= k; ++m) {
    mpz_class s = 0;
    for (long j = 1; j < m && j <= n; ++j)
      s += (j % 2 ? 1 : -1) * e[static_cast<std::size_t>(j)] * ps[static_cast<std::size_t>(m - j)];
    if (m <= n) s += (m % 2 ? 1 : -1) * m * e[static_cast<std::size_t>(m)];
    ps[static_cast<std::size_t>(m)] = s;
  }
  return prime_power(p, k) + 1 - ps[static_cast<std::size_t>(k)];
}

}  // namespace chabauty
