#include "chabauty/hyperelliptic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "chabauty/ffield.hpp"

namespace chabauty {

HyperellipticModel::HyperellipticModel(RatPoly g) : g_(std::move(g)) {
  poly_trim(g_);
  if (degree() < 3 || degree() > 6)
    throw Error(ErrorKind::InvalidModel, "curve polynomial must have degree 3 to 6");
  if (poly_discriminant(g_) == 0) throw Error(ErrorKind::InvalidModel, "curve polynomial is not squarefree");
}

HyperellipticModel HyperellipticModel::from_descending(const std::vector<mpq_class>& c) {
  RatPoly g(c.rbegin(), c.rend());
  return HyperellipticModel(g);
}

bool HyperellipticModel::is_even() const {
  for (std::size_t k = 1; k < g_.size(); k += 2)
    if (g_[k] != 0) return false;
  return true;
}

QuadElement HyperellipticModel::eval(const QuadElement& x) const {
  QuadElement acc = QuadElement::rational(0, x.d());
  for (long k = degree(); k >= 0; --k) acc = acc * x + QuadElement::rational(g_[static_cast<std::size_t>(k)], x.d());
  return acc;
}

std::string HyperellipticModel::to_string() const { return "y^2 = " + poly_to_string(g_); }

bool RationalPoint::operator==(const RationalPoint& o) const {
  if (infinity || o.infinity) return infinity == o.infinity && sign == o.sign;
  return x == o.x && y == o.y;
}

bool RationalPoint::operator<(const RationalPoint& o) const {
  if (infinity != o.infinity) return infinity < o.infinity;
  if (infinity) return sign < o.sign;
  if (x != o.x) return x < o.x;
  return y < o.y;
}

std::string RationalPoint::to_string() const {
  if (infinity) return sign > 0 ? "inf" : "inf-";
  return "(" + x.get_str() + "," + y.get_str() + ")";
}

bool on_curve(const HyperellipticModel& model, const RationalPoint& pt) {
  if (pt.infinity) {
    if (model.odd_degree()) return pt.sign == 1;
    mpq_class r;
    return rational_sqrt(model.lead(), r);
  }
  return pt.y * pt.y == model.eval(pt.x);
}

LocalPoint to_local(const HyperellipticModel& model, const RationalPoint& pt, long p, long N) {
  if (!pt.infinity)
    return {PadicNumber::from_rational(pt.x, p, N), PadicNumber::from_rational(pt.y, p, N), false};
  if (model.odd_degree()) return LocalPoint::at_infinity(PadicNumber::zero(p, N));
  mpq_class r;
  if (!rational_sqrt(model.lead(), r)) throw Error(ErrorKind::InvalidInput, "no rational point at infinity");
  return LocalPoint::at_infinity(PadicNumber::from_rational(pt.sign * r, p, N));
}

bool FqPoint::operator<(const FqPoint& o) const {
  if (infinity != o.infinity) return infinity < o.infinity;
  if (x != o.x) return x < o.x;
  return y < o.y;
}

bool FqPoint::operator==(const FqPoint& o) const { return infinity == o.infinity && x == o.x && y == o.y; }

namespace {

long reduce_mod(const mpq_class& c, long p) {
  mpz_class m(p);
  mpz_class num = c.get_num() % m, den = c.get_den() % m, inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorKind::InvalidInput, "coefficient not p-integral");
  mpz_class r = (num * inv) % m;
  if (r < 0) r += m;
  return r.get_si();
}

bool p_integral(const mpq_class& c, long p) { return c == 0 || valuation(c, p) >= 0; }

// Constant to a precision that never binds against values known to N.
PadicNumber constant(const mpq_class& c, long p, long N) {
  if (c == 0) return PadicNumber::exact_zero(p);
  return PadicNumber::from_rational(c, p, N + std::max(0L, valuation(c, p)) + 2);
}

long working_precision(const LocalPoint& pt) {
  long n = 0;
  if (!pt.x.is_exact()) n = std::max(n, pt.x.precision());
  if (!pt.y.is_exact()) n = std::max(n, pt.y.precision());
  return n > 0 ? n : 64;
}

// t^k * f.
TruncatedSeries shift(const TruncatedSeries& f, long k) {
  std::vector<PadicNumber> c(static_cast<std::size_t>(k), PadicNumber::exact_zero(f.prime()));
  for (const auto& a : f.coefficients()) c.push_back(a);
  return TruncatedSeries(f.prime(), c, f.order() + k, f.tail_bound());
}

// Taylor coefficients of g at a p-adic point: g(x0 + z) = sum b_j z^j.
std::vector<PadicNumber> taylor(const RatPoly& g, const PadicNumber& x0, long N) {
  const long p = x0.prime();
  const long d = static_cast<long>(g.size()) - 1;
  std::vector<PadicNumber> b;
  for (long j = 0; j <= d; ++j) {
    PadicNumber acc = PadicNumber::exact_zero(p);
    for (long k = d; k >= j; --k) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
      acc = acc * x0 + constant(g[static_cast<std::size_t>(k)] * mpq_class(binom), p, N);
    }
    b.push_back(acc);
  }
  return b;
}

}  // namespace

bool check_good_reduction(const HyperellipticModel& model, long p) {
  if (!is_odd_prime(p)) return false;
  for (const auto& c : model.g())
    if (!p_integral(c, p)) return false;
  if (valuation(model.lead(), p) != 0) return false;
  return valuation(model.discriminant(), p) == 0;
}

std::vector<FqPoint> points_mod_p(const HyperellipticModel& model, long p, int k) {
  if (!check_good_reduction(model, p))
    throw Error(ErrorKind::InvalidInput, "model does not have good reduction at " + std::to_string(p));
  FiniteField F(p, k);
  std::vector<long> gb;
  for (const auto& c : model.g()) gb.push_back(reduce_mod(c, p));
  std::vector<FqPoint> out;
  for (long x = 0; x < F.size(); ++x) {
    long v = 0;
    for (long i = static_cast<long>(gb.size()) - 1; i >= 0; --i) v = F.add(F.mul(v, x), gb[static_cast<std::size_t>(i)]);
    if (v == 0) {
      out.push_back({false, x, 0});
    } else if (F.is_square(v)) {
      long r = F.sqrt(v);
      out.push_back({false, x, r});
      out.push_back({false, x, F.neg(r)});
    }
  }
  if (model.odd_degree()) {
    out.push_back({true, 0, 0});
  } else {
    long l = gb.back();
    if (F.is_square(l)) {
      long r = F.sqrt(l);
      out.push_back({true, 0, r});
      out.push_back({true, 0, F.neg(r)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long count_points_mod_p(const HyperellipticModel& model, long p, int k) {
  return static_cast<long>(points_mod_p(model, p, k).size());
}

std::string_view to_string(DiskKind kind) {
  switch (kind) {
    case DiskKind::Ordinary: return "ordinary";
    case DiskKind::Weierstrass: return "weierstrass";
    case DiskKind::Infinite: return "infinite";
  }
  return "?";
}

std::string ResidueDisk::label() const {
  if (kind == DiskKind::Infinite) return y0 == 0 ? "(inf)" : "(inf," + std::to_string(y0) + ")";
  return "(" + std::to_string(x0) + "," + std::to_string(y0) + ")";
}

bool ResidueDisk::operator<(const ResidueDisk& o) const {
  bool a = kind == DiskKind::Infinite, b = o.kind == DiskKind::Infinite;
  if (a != b) return a < b;
  if (x0 != o.x0) return x0 < o.x0;
  return y0 < o.y0;
}

bool ResidueDisk::operator==(const ResidueDisk& o) const {
  return kind == o.kind && x0 == o.x0 && y0 == o.y0;
}

std::vector<ResidueDisk> classify_disks(const HyperellipticModel& model, long p) {
  std::vector<ResidueDisk> out;
  for (const auto& pt : points_mod_p(model, p, 1)) {
    if (pt.infinity) out.push_back({DiskKind::Infinite, 0, pt.y});
    else if (pt.y == 0) out.push_back({DiskKind::Weierstrass, pt.x, 0});
    else out.push_back({DiskKind::Ordinary, pt.x, pt.y});
  }
  std::sort(out.begin(), out.end());
  return out;
}

ResidueDisk disk_of(const HyperellipticModel& model, const LocalPoint& pt) {
  const long p = pt.x.prime();
  if (pt.infinity || (!pt.x.is_zero() && pt.x.valuation() < 0)) {
    if (model.odd_degree()) return {DiskKind::Infinite, 0, 0};
    PadicNumber ratio = pt.infinity ? pt.y : pt.y / pt.x.pow(model.genus() + 1);
    return {DiskKind::Infinite, 0, ratio.residue()};
  }
  long x0 = pt.x.residue();
  long y0 = pt.y.residue();
  (void)p;
  return {y0 == 0 ? DiskKind::Weierstrass : DiskKind::Ordinary, x0, y0};
}

LocalPoint lift_disk_center(const ResidueDisk& disk, const HyperellipticModel& model, long p, long N) {
  require_odd_prime(p);
  switch (disk.kind) {
    case DiskKind::Ordinary: {
      PadicNumber x = PadicNumber::from_integer(disk.x0, p, N);
      PadicNumber gx = PadicNumber::from_rational(model.eval(mpq_class(disk.x0)), p, N);
      return {x, hensel_sqrt(gx, disk.y0), false};
    }
    case DiskKind::Weierstrass: {
      RatPoly dg = poly_derivative(model.g());
      PadicNumber e = PadicNumber::from_integer(disk.x0, p, N);
      for (long it = 0; it < 2 * N + 4; ++it) {
        PadicNumber v = model.eval(e);
        if (v.is_zero()) break;
        e = e - v / poly_eval(dg, e);
        e = PadicNumber::from_integer(e.lift(), p, N);
      }
      return {e, PadicNumber::zero(p, N), false};
    }
    case DiskKind::Infinite: {
      if (model.odd_degree()) return LocalPoint::at_infinity(PadicNumber::zero(p, N));
      return LocalPoint::at_infinity(hensel_sqrt(PadicNumber::from_rational(model.lead(), p, N), disk.y0));
    }
  }
  throw Error(ErrorKind::UnsupportedDisk, "unknown disk kind");
}

LocalExpansion local_parametrization(const ResidueDisk& disk, const HyperellipticModel& model,
                                     const LocalPoint& center, long M) {
  const long p = center.x.prime();
  const long N = working_precision(center);
  const long d = model.degree();
  const int g = model.genus();
  LocalExpansion e;
  e.disk = disk;
  e.center = center;
  if (disk_of(model, center) != disk) throw Error(ErrorKind::DiskMismatch, "center is not in the disk");
  auto one = constant(1, p, N);
  TruncatedSeries t = TruncatedSeries::polynomial(p, {PadicNumber::exact_zero(p), one});

  if (disk.kind == DiskKind::Ordinary) {
    auto b = taylor(model.g(), center.x, N);
    TruncatedSeries G = TruncatedSeries::polynomial(p, b).truncate(M);
    TruncatedSeries y = G.sqrt(center.y);
    TruncatedSeries X = TruncatedSeries::polynomial(p, {center.x, one});
    TruncatedSeries w = y.inverse() * mpq_class(1, 2);
    e.x = X;
    e.y = y.with_tail_bound(0);
    TruncatedSeries xi = TruncatedSeries::polynomial(p, {one});
    for (int i = 0; i < 2 * g; ++i) {
      e.omega.push_back((xi * w).truncate(M).with_tail_bound(0));
      xi = xi * X;
    }
    return e;
  }

  if (disk.kind == DiskKind::Weierstrass) {
    // t^2 = g(e + z); z = h(t^2).
    auto b = taylor(model.g(), center.x, N);
    b[0] = PadicNumber::exact_zero(p);
    const long Mz = M / 2 + 2;
    TruncatedSeries G = TruncatedSeries::polynomial(p, b).truncate(Mz);
    TruncatedSeries h = G.revert();
    TruncatedSeries t2 = TruncatedSeries::polynomial(p, {PadicNumber::exact_zero(p), PadicNumber::exact_zero(p), one});
    TruncatedSeries z = h.compose(t2).truncate(M);
    TruncatedSeries hp = h.derivative().compose(t2).truncate(M);
    TruncatedSeries X = TruncatedSeries(p, {center.x}, M, kExactPrecision) + z;
    // h reverts an integral series with unit linear term, so x(t) is integral.
    e.x = X.with_tail_bound(0);
    e.y = t.truncate(M);
    TruncatedSeries xi = TruncatedSeries::constant(one, M);
    for (int i = 0; i < 2 * g; ++i) {
      e.omega.push_back((xi * hp).truncate(M).with_tail_bound(0));
      xi = (xi * X).truncate(M);
    }
    return e;
  }

  if (model.odd_degree()) {
    // x = c t^-2, y = c^((d+1)/2) t^-d s(t), s^2 = sum g_k c^(k-d-1) t^(2(d-k)).
    const mpq_class c = model.lead();
    std::vector<PadicNumber> sc(static_cast<std::size_t>(2 * d + 1), PadicNumber::exact_zero(p));
    for (long k = 0; k <= d; ++k) {
      mpq_class ck = 1;
      for (long j = 0; j < d + 1 - k; ++j) ck /= c;
      sc[static_cast<std::size_t>(2 * (d - k))] = constant(model.g()[static_cast<std::size_t>(k)] * ck, p, N);
    }
    TruncatedSeries S = TruncatedSeries::polynomial(p, sc).truncate(M);
    TruncatedSeries s = S.sqrt(one);
    TruncatedSeries sinv = s.inverse();
    e.s = s;
    e.c = c;
    for (int i = 0; i < g; ++i) {
      mpq_class scale = -1;
      long ex = i + 1 - (d + 1) / 2;
      for (long j = 0; j < -ex; ++j) scale /= c;
      for (long j = 0; j < ex; ++j) scale *= c;
      e.omega.push_back(shift(sinv * scale, d - 3 - 2 * i).truncate(M).with_tail_bound(0));
    }
    return e;
  }

  // Even degree: x = 1/t, y = t^-(g+1) r(t), r^2 = sum g_k t^(d-k).
  std::vector<PadicNumber> rc;
  for (long k = d; k >= 0; --k) rc.push_back(constant(model.g()[static_cast<std::size_t>(k)], p, N));
  TruncatedSeries R = TruncatedSeries::polynomial(p, rc).truncate(M);
  TruncatedSeries r = R.sqrt(center.y);
  TruncatedSeries w = r.inverse() * mpq_class(-1, 2);
  e.s = r;
  for (int i = 0; i < g; ++i) e.omega.push_back(shift(w, g - 1 - i).truncate(M).with_tail_bound(0));
  return e;
}

LocalExpansion local_parametrization(const ResidueDisk& disk, const HyperellipticModel& model, long p, long N,
                                     long M) {
  return local_parametrization(disk, model, lift_disk_center(disk, model, p, N), M);
}

PadicNumber parameter_of(const LocalExpansion& e, const HyperellipticModel& model, const LocalPoint& pt) {
  if (disk_of(model, pt) != e.disk) throw Error(ErrorKind::DiskMismatch, "point is not in the disk");
  const long p = pt.x.prime();
  switch (e.disk.kind) {
    case DiskKind::Ordinary: return pt.x - e.center.x;
    case DiskKind::Weierstrass: return pt.y - e.center.y;
    case DiskKind::Infinite: break;
  }
  if (pt.infinity) return PadicNumber::zero(p, working_precision(pt));
  if (model.odd_degree()) {
    const long d = model.degree();
    PadicNumber u = (pt.x.inverse()) * e.c;
    mpz_class ur = u.unit() % p;
    PadicNumber t = hensel_sqrt(u, sqrt_mod_p(ur.get_si(), p));
    // Fix the sign so that y t^d / c^((d+1)/2) = s(t) = 1 mod p.
    mpq_class cpow = 1;
    for (long j = 0; j < (d + 1) / 2; ++j) cpow *= e.c;
    PadicNumber q = pt.y * t.pow(d) / cpow;
    if (q.residue() != 1) t = -t;
    return t;
  }
  return pt.x.inverse();
}

LocalPoint point_at(const LocalExpansion& e, const PadicNumber& t) {
  if (!e.x || !e.y) throw Error(ErrorKind::UnsupportedDisk, "point_at is only available on finite disks");
  return {e.x->evaluate(t), e.y->evaluate(t), false};
}

std::optional<Involution> parse_involution(const std::string& name) {
  if (name == "sigma") return Involution::Sigma;
  if (name == "w") return Involution::W;
  if (name == "wsigma") return Involution::WSigma;
  return std::nullopt;
}

RationalPoint apply_involution(const HyperellipticModel& model, Involution which, const RationalPoint& pt) {
  if (which != Involution::Sigma && !model.is_even())
    throw Error(ErrorKind::NoSuchInvolution, "x -> -x is not an automorphism of this model");
  bool flip_x = which != Involution::Sigma;
  bool flip_y = which != Involution::W;
  RationalPoint q = pt;
  if (pt.infinity) {
    if (model.odd_degree()) return q;
    // y/x^(g+1) changes sign under x -> -x when g+1 is odd.
    int s = pt.sign;
    if (flip_y) s = -s;
    if (flip_x && (model.genus() + 1) % 2 == 1) s = -s;
    q.sign = s;
    return q;
  }
  if (flip_x) q.x = -q.x;
  if (flip_y) q.y = -q.y;
  return q;
}

LocalPoint apply_involution(const HyperellipticModel& model, Involution which, const LocalPoint& pt) {
  if (which != Involution::Sigma && !model.is_even())
    throw Error(ErrorKind::NoSuchInvolution, "x -> -x is not an automorphism of this model");
  bool flip_x = which != Involution::Sigma;
  bool flip_y = which != Involution::W;
  LocalPoint q = pt;
  if (pt.infinity) {
    if (model.odd_degree()) return q;
    bool neg = flip_y != (flip_x && (model.genus() + 1) % 2 == 1);
    if (neg) q.y = -q.y, q.x = q.y;
    return q;
  }
  if (flip_x) q.x = -q.x;
  if (flip_y) q.y = -q.y;
  return q;
}

std::vector<RationalPoint> small_height_points(const HyperellipticModel& model, long bound) {
  std::set<RationalPoint> out;
  for (long b = 1; b <= bound; ++b) {
    for (long a = -bound; a <= bound; ++a) {
      if (std::gcd(a, b) != 1) continue;
      mpq_class x(a, b), r;
      if (!rational_sqrt(model.eval(x), r)) continue;
      out.insert({x, r});
      out.insert({x, -r});
    }
  }
  if (model.odd_degree()) {
    out.insert(RationalPoint::at_infinity(1));
  } else {
    mpq_class r;
    if (rational_sqrt(model.lead(), r)) {
      out.insert(RationalPoint::at_infinity(1));
      out.insert(RationalPoint::at_infinity(-1));
    }
  }
  return {out.begin(), out.end()};
}

std::optional<mpq_class> recognize_rational(const PadicNumber& a) {
  const long p = a.prime();
  if (a.is_zero()) return mpq_class(0);
  long shift = a.valuation() < 0 ? -a.valuation() : 0;
  const long N = a.precision() + shift;
  if (N < 2) return std::nullopt;
  mpz_class m = prime_power(p, N);
  mpz_class bound = sqrt(prime_power(p, N - 2));
  PadicNumber b = shift ? a * mpq_class(prime_power(p, shift)) : a;
  mpz_class r0 = m, r1 = b.lift(), s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpq_class cand(r1, s1);
  cand.canonicalize();
  if (shift) cand /= mpq_class(prime_power(p, shift));
  if (cand != 0 && valuation(mpq_class(cand.get_den()), p) > shift) return std::nullopt;
  if (!PadicNumber::from_rational(cand, p, a.precision()).equals(a)) return std::nullopt;
  return cand;
}

}  // namespace chabauty
