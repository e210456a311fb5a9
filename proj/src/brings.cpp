#include "chabauty/brings.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace chabauty {

namespace {

QuadElement Q(long n, long d) { return QuadElement::rational(n, d); }

long field_d(const std::array<QuadElement, 5>& c) {
  for (const auto& z : c)
    if (!z.is_rational()) return z.d();
  return c[0].d();
}

}  // namespace

ProjPoint5::ProjPoint5(std::array<QuadElement, 5> coords) : c_(std::move(coords)) {
  const long d = field_d(c_);
  auto it = std::find_if(c_.begin(), c_.end(), [](const QuadElement& z) { return !z.is_zero(); });
  if (it == c_.end()) throw Error(ErrorKind::InvalidInput, "all coordinates are zero");
  QuadElement inv = it->inverse();
  for (auto& z : c_) z = QuadElement(z.a(), z.b(), d) * inv;
  for (auto& z : c_) z = QuadElement(z.a(), z.b(), d);
}

ProjPoint5 ProjPoint5::parse(const std::string& text, long d) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw Error(ErrorKind::InvalidInput, "point must look like (a:b:c:d:e)");
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s.substr(1, s.size() - 2)) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5) throw Error(ErrorKind::InvalidInput, "a point of P^4 needs five coordinates");
  std::array<QuadElement, 5> c;
  for (int k = 0; k < 5; ++k) c[static_cast<std::size_t>(k)] = QuadElement::parse(parts[static_cast<std::size_t>(k)], d);
  return ProjPoint5(c);
}

ProjPoint5 ProjPoint5::conj() const {
  std::array<QuadElement, 5> c = c_;
  for (auto& z : c) z = z.conj();
  return ProjPoint5(c);
}

ProjPoint5 ProjPoint5::permuted(const std::array<int, 5>& perm) const {
  std::array<QuadElement, 5> c;
  for (int k = 0; k < 5; ++k) c[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
  return ProjPoint5(c);
}

bool ProjPoint5::operator<(const ProjPoint5& o) const {
  return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string ProjPoint5::to_string() const {
  std::string s = "(";
  for (int k = 0; k < 5; ++k) s += (k ? ":" : "") + c_[static_cast<std::size_t>(k)].to_string();
  return s + ")";
}

bool verify_brings(const ProjPoint5& pt) {
  const long d = pt.d();
  QuadElement s1 = Q(0, d), s2 = Q(0, d), s3 = Q(0, d);
  for (const auto& z : pt.coords()) {
    QuadElement z2 = z * z;
    s1 = s1 + z;
    s2 = s2 + z2;
    s3 = s3 + z2 * z;
  }
  return s1.is_zero() && s2.is_zero() && s3.is_zero();
}

QuadElement eprime_equation(const QuadElement& x, const QuadElement& y) {
  const long d = x.is_rational() ? y.d() : x.d();
  QuadElement one = Q(1, d);
  return x * x * x + y * y * y + one + x * x * y + y * y * x + x * x + y * y + x * y + x + y;
}

QuadElement e_equation(const QuadElement& x, const QuadElement& y) {
  const long d = x.is_rational() ? y.d() : x.d();
  return y * y + Q(5, d) * x * x * x + Q(5, d) * x * x + Q(4, d);
}

namespace {

void check_pair(std::pair<int, int> s) {
  if (s.first < 0 || s.first > 4 || s.second < 0 || s.second > 4 || s.first == s.second)
    throw Error(ErrorKind::InvalidInput, "swapped pair must be two distinct indices in 0..4");
}

std::array<QuadElement, 3> remaining(const ProjPoint5& pt, std::pair<int, int> s) {
  check_pair(s);
  std::array<QuadElement, 3> r;
  std::size_t n = 0;
  for (int k = 0; k < 5; ++k)
    if (k != s.first && k != s.second) r[n++] = pt.coords()[static_cast<std::size_t>(k)];
  return r;
}

}  // namespace

std::pair<QuadElement, QuadElement> quotient_to_eprime(const ProjPoint5& pt, std::pair<int, int> swapped) {
  auto [a, b, c] = remaining(pt, swapped);
  if (c.is_zero()) throw Error(ErrorKind::AtInfinity, "third coordinate vanishes");
  return {a / c, b / c};
}

std::pair<QuadElement, QuadElement> eprime_to_e(const QuadElement& x, const QuadElement& y) {
  const long d = x.is_rational() ? y.d() : x.d();
  QuadElement den = Q(1, d) + Q(2, d) * x + Q(2, d) * y;
  if (den.is_zero()) throw Error(ErrorKind::MapsToInfinity, "1 + 2x + 2y vanishes");
  return {Q(2, d) / den, Q(4, d) * (y - x) / den};
}

bool EPoint::operator==(const EPoint& o) const {
  if (infinity || o.infinity) return infinity == o.infinity;
  return x == o.x && y == o.y;
}

std::string EPoint::to_string() const { return infinity ? "inf" : "(" + x.to_string() + "," + y.to_string() + ")"; }

EPoint e_add(const EPoint& P, const EPoint& R) {
  if (P.infinity) return R;
  if (R.infinity) return P;
  const long d = P.x.is_rational() ? (P.y.is_rational() ? R.x.d() : P.y.d()) : P.x.d();
  // y^2 = a x^3 + b x^2 + c with a = b = -5, c = -4.
  QuadElement a = Q(-5, d), b = Q(-5, d);
  QuadElement lambda;
  if (P.x == R.x) {
    if ((P.y + R.y).is_zero()) return EPoint{Q(0, d), Q(0, d), true};
    lambda = (Q(3, d) * a * P.x * P.x + Q(2, d) * b * P.x) / (Q(2, d) * P.y);
  } else {
    lambda = (R.y - P.y) / (R.x - P.x);
  }
  QuadElement x3 = (lambda * lambda - b) / a - P.x - R.x;
  QuadElement y3 = -(P.y + lambda * (x3 - P.x));
  return EPoint{x3, y3, false};
}

EPoint bring_to_e(const ProjPoint5& pt, std::pair<int, int> swapped) {
  auto [a, b, c] = remaining(pt, swapped);
  const long d = pt.d();
  QuadElement den = c + Q(2, d) * a + Q(2, d) * b;
  if (den.is_zero()) return EPoint{Q(0, d), Q(0, d), true};
  return EPoint{Q(2, d) * c / den, Q(4, d) * (b - a) / den, false};
}

EPoint trace_to_e(const ProjPoint5& pt, std::pair<int, int> swapped) {
  return e_add(bring_to_e(pt, swapped), bring_to_e(pt.conj(), swapped));
}

namespace {

mpq_class tn(const QuadElement& r) { return r.trace() + 4 * r.norm(); }

}  // namespace

bool trace_norm_constraint(const QuadElement& x, const QuadElement& y) {
  if (!x.is_rational() && !y.is_rational() && x.d() != y.d())
    throw Error(ErrorKind::FieldMismatch, "elements of different quadratic fields");
  return tn(x) == tn(y);
}

QuadElement s3_product(const QuadElement& x1, const QuadElement& x2, const QuadElement& x3) {
  const std::array<const QuadElement*, 3> x{&x1, &x2, &x3};
  for (const auto* z : x)
    if (z->is_zero()) throw Error(ErrorKind::InvalidRatio, "zero coordinate in a ratio");
  std::array<int, 3> s{0, 1, 2};
  mpq_class prod = 1;
  do {
    const QuadElement& den = *x[static_cast<std::size_t>(s[2])];
    prod *= tn(*x[static_cast<std::size_t>(s[0])] / den) - tn(*x[static_cast<std::size_t>(s[1])] / den);
  } while (std::next_permutation(s.begin(), s.end()));
  return QuadElement::rational(prod, x1.is_rational() ? (x2.is_rational() ? x3.d() : x2.d()) : x1.d());
}

bool s3_product_constraint(const QuadElement& x1, const QuadElement& x2, const QuadElement& x3) {
  return s3_product(x1, x2, x3).is_zero();
}

std::vector<ProjPoint5> orbit(const ProjPoint5& pt) {
  std::set<ProjPoint5> out;
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  for (const ProjPoint5& base : {pt, pt.conj()}) {
    std::sort(perm.begin(), perm.end());
    do out.insert(base.permuted(perm));
    while (std::next_permutation(perm.begin(), perm.end()));
  }
  return {out.begin(), out.end()};
}

namespace {

// Sign of a + b sqrt(d) for real d > 0.
int real_sign(const QuadElement& z) {
  int sa = sgn(z.a()), sb = sgn(z.b());
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  mpq_class lhs = z.a() * z.a(), rhs = z.b() * z.b() * z.d();
  return lhs > rhs ? sa : sb;
}

// Total order: zeros last, then argument, then modulus, then (a, b).
bool arg_less(const QuadElement& u, const QuadElement& v) {
  if (u.is_zero() || v.is_zero()) return !u.is_zero() && v.is_zero();
  const long d = u.is_rational() ? v.d() : u.d();
  int hu, hv;
  if (d < 0) {
    hu = (sgn(u.b()) > 0 || (sgn(u.b()) == 0 && sgn(u.a()) > 0)) ? 0 : 1;
    hv = (sgn(v.b()) > 0 || (sgn(v.b()) == 0 && sgn(v.a()) > 0)) ? 0 : 1;
    if (hu != hv) return hu < hv;
    mpq_class cross = u.a() * v.b() - v.a() * u.b();
    if (cross != 0) return cross > 0;
    if (u.norm() != v.norm()) return u.norm() < v.norm();
  } else {
    QuadElement uu(u.a(), u.b(), d), vv(v.a(), v.b(), d);
    hu = real_sign(uu) > 0 ? 0 : 1;
    hv = real_sign(vv) > 0 ? 0 : 1;
    if (hu != hv) return hu < hv;
    int m = real_sign(uu * uu - vv * vv);
    if (m != 0) return m < 0;
  }
  return u < v;
}

bool tuple_less(const std::array<QuadElement, 5>& a, const std::array<QuadElement, 5>& b) {
  for (std::size_t k = 0; k < 5; ++k) {
    if (arg_less(a[k], b[k])) return true;
    if (arg_less(b[k], a[k])) return false;
  }
  return false;
}

}  // namespace

ProjPoint5 canonical_representative(const ProjPoint5& pt) {
  std::optional<std::array<QuadElement, 5>> best;
  for (const ProjPoint5& base : {pt, pt.conj()}) {
    for (const auto& c : base.coords()) {
      if (c.is_zero()) continue;
      std::array<QuadElement, 5> s;
      for (std::size_t k = 0; k < 5; ++k) s[k] = base.coords()[k] / c;
      std::sort(s.begin(), s.end(), arg_less);
      s = ProjPoint5(s).coords();
      if (!best || tuple_less(s, *best)) best = s;
    }
  }
  return ProjPoint5(*best);
}

std::vector<long> fields_with_discriminant_bound(long D) {
  std::vector<long> out;
  for (long d = -D; d <= D; ++d) {
    if (d == 0 || d == 1 || !is_squarefree(d)) continue;
    long m = ((d % 4) + 4) % 4;
    long disc = m == 1 ? d : 4 * d;
    if (std::labs(disc) <= D) out.push_back(d);
  }
  return out;
}

namespace {

std::vector<mpq_class> small_rationals(long H) {
  std::set<mpq_class> s;
  for (long den = 1; den <= H; ++den)
    for (long num = -H; num <= H; ++num) {
      mpq_class q(num, den);
      q.canonicalize();
      s.insert(q);
    }
  return {s.begin(), s.end()};
}

bool in_box(const mpq_class& q, long H) {
  return abs(q.get_num()) <= H && q.get_den() <= H;
}

bool triple_ok(const QuadElement& a, const QuadElement& b, const QuadElement& c) {
  if (a.is_zero() || b.is_zero() || c.is_zero()) return true;
  return s3_product_constraint(a, b, c);
}

struct FieldScan {
  std::vector<ProjPoint5> found;
  long candidates = 0, filtered = 0;
};

FieldScan scan_field(long d, bool rational_only, long H) {
  FieldScan out;
  std::vector<mpq_class> R = small_rationals(H);
  std::vector<QuadElement> V;
  for (const auto& a : R) {
    if (rational_only) {
      V.push_back(QuadElement::rational(a, d));
      continue;
    }
    for (const auto& b : R) V.push_back(QuadElement(a, b, d));
  }
  const QuadElement one = QuadElement::rational(1, d);
  const std::size_t n = V.size();
  // ok[i][j]: the triple (V[i], V[j], 1) passes the S3-product filter.
  std::vector<std::vector<char>> ok(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) ok[i][j] = ok[j][i] = triple_ok(V[i], V[j], one);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      out.candidates += static_cast<long>(n);
      if (!ok[i1][i2]) continue;
      const QuadElement& x1 = V[i1];
      const QuadElement& x2 = V[i2];
      for (std::size_t i3 = 0; i3 < n; ++i3) {
        if (!ok[i1][i3] || !ok[i2][i3]) continue;
        const QuadElement& x3 = V[i3];
        QuadElement x4 = -(one + x1 + x2 + x3);
        if (!in_box(x4.a(), H) || !in_box(x4.b(), H)) continue;
        if (!triple_ok(x1, x2, x3) || !triple_ok(x1, x2, x4) || !triple_ok(x1, x3, x4) || !triple_ok(x2, x3, x4) ||
            !triple_ok(x1, x4, one) || !triple_ok(x2, x4, one) || !triple_ok(x3, x4, one))
          continue;
        ++out.filtered;
        ProjPoint5 pt({x1, x2, x3, x4, one});
        if (verify_brings(pt)) out.found.push_back(pt);
      }
    }
  return out;
}

}  // namespace

SearchResult bounded_quadratic_search(long D, long H) {
  if (D < 1 || H < 1) throw Error(ErrorKind::InvalidInput, "search bounds must be positive");
  SearchResult res;
  res.disc_bound = D;
  res.height_bound = H;
  res.fields = fields_with_discriminant_bound(D);

  struct Task {
    long d;
    bool rational_only;
  };
  std::vector<Task> tasks;
  if (res.fields.empty()) tasks.push_back({-1, true});
  for (long d : res.fields) tasks.push_back({d, false});
  std::vector<FieldScan> scans(tasks.size());

  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHABAUTY_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  n = static_cast<unsigned>(std::min<std::size_t>(n, tasks.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();)
        scans[k] = scan_field(tasks[k].d, tasks[k].rational_only, H);
    });
  for (auto& th : pool) th.join();

  std::map<ProjPoint5, std::set<ProjPoint5>> by_orbit;
  for (const auto& s : scans) {
    res.candidates += s.candidates;
    res.filtered += s.filtered;
    for (const auto& pt : s.found) by_orbit[canonical_representative(pt)].insert(pt);
  }
  for (const auto& [rep, members] : by_orbit) {
    SearchOrbit o{rep, {rep}, orbit(rep).size()};
    ProjPoint5 c = rep.conj();
    if (!(c == rep)) o.representatives.push_back(c);
    res.orbits.push_back(o);
  }
  return res;
}

}  // namespace chabauty
