#include "chabauty/chabauty.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <set>
#include <thread>

namespace chabauty {

long coleman_bound(const HyperellipticModel& model, long p) {
  require_odd_prime(p);
  if (!check_good_reduction(model, p)) throw Error(ErrorKind::InvalidModel, "model has bad reduction at " + std::to_string(p));
  const int g = model.genus();
  if (p <= 2 * g)
    throw Error(ErrorKind::BoundInapplicable, "the bound needs p > 2g = " + std::to_string(2 * g));
  return count_points_mod_p(model, p) + 2 * g - 2;
}

namespace {

long floor_log(long p, long n) {
  long k = 0;
  for (long q = p; q <= n; q *= p) ++k;
  return k;
}

bool certified_zero(const PadicNumber& a) { return a.is_zero(); }

}  // namespace

Annihilator annihilating_differentials(const ColemanIntegrator& ci, const MordellWeilInput& mw) {
  const int g = ci.genus();
  const long p = ci.prime();
  if (mw.rank < 0) throw Error(ErrorKind::InvalidInput, "negative rank");
  if (mw.rank >= g) throw Error(ErrorKind::NotChabautyApplicable, "rank must be smaller than the genus");
  if (static_cast<int>(mw.generators.size()) != mw.rank)
    throw Error(ErrorKind::InvalidInput, "number of generators differs from the rank");
  Annihilator out;
  for (const auto& gen : mw.generators) {
    Divisor D;
    for (const auto& [n, pt] : gen) D.terms.push_back({n, ci.lift(pt)});
    if (D.degree() != 0) throw Error(ErrorKind::InvalidInput, "generator divisor must have degree zero");
    std::vector<PadicNumber> row;
    for (int i = 0; i < g; ++i) row.push_back(ci.pairing(D, Differential::basis(p, g, i)));
    out.pairings.push_back(row);
  }
  out.full_space = mw.rank == 0;

  // Row reduction with pivots nonzero at their precision.
  auto A = out.pairings;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int col = 0; col < g && r < A.size(); ++col) {
    std::size_t piv = A.size();
    for (std::size_t k = r; k < A.size(); ++k) {
      if (certified_zero(A[k][col])) continue;
      if (piv == A.size() || A[k][col].valuation() < A[piv][col].valuation()) piv = k;
    }
    if (piv == A.size()) continue;
    std::swap(A[piv], A[r]);
    PadicNumber inv = A[r][col].inverse();
    for (auto& a : A[r]) a = a * inv;
    for (std::size_t k = 0; k < A.size(); ++k) {
      if (k == r || certified_zero(A[k][col])) continue;
      PadicNumber f = A[k][col];
      for (int j = 0; j < g; ++j) A[k][j] -= f * A[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  if (static_cast<int>(pivot_col.size()) != mw.rank)
    throw PrecisionExhausted("pairing matrix has rank " + std::to_string(pivot_col.size()) +
                             " at working precision, expected " + std::to_string(mw.rank));
  for (int free = 0; free < g; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    Differential w;
    w.coefficients.assign(static_cast<std::size_t>(2 * g), PadicNumber::exact_zero(p));
    w.coefficients[static_cast<std::size_t>(free)] = PadicNumber::from_integer(1, p, kCoefficientPrecision);
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
      w.coefficients[static_cast<std::size_t>(pivot_col[k])] = -A[k][static_cast<std::size_t>(free)];
    // First nonzero coefficient becomes 1.
    for (int i = 0; i < g; ++i) {
      const PadicNumber& c = w.coefficients[static_cast<std::size_t>(i)];
      if (certified_zero(c)) continue;
      PadicNumber inv = c.inverse();
      for (auto& a : w.coefficients)
        if (!(a.is_zero() && a.is_exact())) a = a * inv;
      w.coefficients[static_cast<std::size_t>(i)] = PadicNumber::from_integer(1, p, kCoefficientPrecision);
      break;
    }
    out.differentials.push_back(w);
  }
  return out;
}

Differential annihilating_differential(const HyperellipticModel& model, long p, long N, const MordellWeilInput& mw) {
  ColemanIntegrator ci(model, p, N);
  return annihilating_differentials(ci, mw).differentials.front();
}

namespace {

// Point of an infinite disk with parameter t.
LocalPoint infinite_point(const LocalExpansion& e, const HyperellipticModel& model, const PadicNumber& t) {
  const long p = t.prime();
  if (t.is_zero()) return e.center;
  if (model.odd_degree()) {
    const long d = model.degree();
    PadicNumber x = t.pow(2).inverse() * e.c;
    mpq_class cpow = 1;
    for (long j = 0; j < (d + 1) / 2; ++j) cpow *= e.c;
    PadicNumber y = e.s->evaluate(t) * t.pow(d).inverse() * cpow;
    return {x, y, false};
  }
  const long n = model.degree();
  // g(x)/x^n as a polynomial in t = 1/x.
  PadicNumber acc = PadicNumber::exact_zero(p);
  for (long k = 0; k <= n; ++k) acc = acc * t + PadicNumber::from_rational(model.g()[static_cast<std::size_t>(k)], p, t.precision() + 2);
  PadicNumber ratio = hensel_sqrt(acc, e.center.y.residue());
  PadicNumber x = t.inverse();
  return {x, ratio * x.pow(n / 2), false};
}

}  // namespace

DiskLocus disk_locus(const ColemanIntegrator& ci, const ResidueDisk& disk, const Differential& omega,
                     const LocalPoint& basepoint, long M) {
  const HyperellipticModel& model = ci.model();
  const long p = ci.prime(), W = ci.working_precision();
  DiskLocus out;
  out.disk = disk;
  out.center = lift_disk_center(disk, model, p, W);
  std::vector<PadicNumber> consts = ci.integrals(basepoint, out.center);
  if (M <= 0) {
    M = 1;
    while (M - floor_log(p, M) < W + 2) ++M;
  }
  LocalExpansion e = local_parametrization(disk, model, out.center, M);

  PadicNumber c0 = PadicNumber::exact_zero(p);
  long cmin = 0;
  std::optional<TruncatedSeries> S;
  for (std::size_t i = 0; i < omega.coefficients.size(); ++i) {
    const PadicNumber& c = omega.coefficients[i];
    if (c.is_zero() && c.is_exact()) continue;
    if (i >= consts.size() || i >= e.omega.size())
      throw Error(ErrorKind::UnsupportedDisk, "differential is not integrable on disk " + disk.label());
    c0 += consts[i] * c;
    if (!c.is_zero()) cmin = std::min(cmin, c.valuation());
    TruncatedSeries term = e.omega[i].formal_integrate() * c;
    S = S ? *S + term : term;
  }
  if (!S) throw Error(ErrorKind::InvalidInput, "zero differential");
  const long order = S->order();
  TruncatedSeries F = TruncatedSeries::constant(c0, order) + *S;
  out.series = F.substitute_pT().with_tail_bound(order - floor_log(p, order) + cmin);

  ZeroIsolation iso = isolate_zeros(out.series);
  out.strassman = strassman_count(out.series);
  out.zeros = iso.zeros;
  out.clusters = iso.clusters;
  for (const auto& T : out.zeros) {
    PadicNumber t = T * mpq_class(p);
    if (disk.kind == DiskKind::Infinite) out.points.push_back(infinite_point(e, model, t));
    else out.points.push_back(point_at(e, t));
  }
  return out;
}

std::string_view to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Rational: return "rational";
    case PointKind::Algebraic: return "algebraic";
    case PointKind::Unrecognized: return "unrecognized";
  }
  return "?";
}

std::string RecognizedPoint::to_string() const {
  if (kind == PointKind::Rational) return rational->to_string();
  if (kind == PointKind::Algebraic) {
    if (x) return "(" + x->get_str() + ", y) with " + minimal_polynomial + " = 0, y = " + local.y.to_string();
    return "(infinity, root of " + minimal_polynomial + ")";
  }
  return "(" + local.x.to_string() + ", " + local.y.to_string() + ")";
}

namespace {

bool small_height(const mpq_class& q) {
  return abs(q.get_num()) <= kAlgebraicHeightBound && q.get_den() <= kAlgebraicHeightBound;
}

std::string quadratic_poly(const std::string& var, const mpq_class& a) {
  if (a == 0) return var + "^2";
  return var + "^2 " + (a > 0 ? "- " : "+ ") + mpq_class(abs(a)).get_str();
}

bool agrees(const PadicNumber& a, const mpq_class& q) {
  PadicNumber d = a - PadicNumber::from_rational(q, a.prime(), a.precision() + 1);
  return d.is_zero();
}

}  // namespace

RecognizedPoint recognize_point(const HyperellipticModel& model, const ResidueDisk& disk, const LocalPoint& pt) {
  RecognizedPoint r;
  r.disk = disk;
  r.local = pt;
  if (pt.infinity) {
    if (model.odd_degree()) {
      r.kind = PointKind::Rational;
      r.rational = RationalPoint::at_infinity();
      return r;
    }
    mpq_class l;
    if (rational_sqrt(model.lead(), l)) {
      r.kind = PointKind::Rational;
      r.rational = RationalPoint::at_infinity(agrees(pt.y, l) ? 1 : -1);
    } else {
      r.kind = PointKind::Algebraic;
      r.y_squared = model.lead();
      r.minimal_polynomial = quadratic_poly("(y/x^" + std::to_string(model.genus() + 1) + ")", model.lead());
    }
    return r;
  }
  std::optional<mpq_class> x = recognize_rational(pt.x);
  if (!x || !small_height(*x)) return r;
  mpq_class gx = model.eval(*x), y;
  if (rational_sqrt(gx, y)) {
    if (!agrees(pt.y, y)) y = -y;
    if (!agrees(pt.y, y)) return r;
    r.kind = PointKind::Rational;
    r.rational = RationalPoint{*x, y};
    return r;
  }
  if (!small_height(gx)) return r;
  r.kind = PointKind::Algebraic;
  r.x = x;
  r.y_squared = gx;
  r.minimal_polynomial = quadratic_poly("y", gx);
  return r;
}

std::vector<RationalPoint> ChabautyReport::rational_points() const {
  std::set<RationalPoint> s;
  for (const auto& pt : points)
    if (pt.kind == PointKind::Rational) s.insert(*pt.rational);
  return {s.begin(), s.end()};
}

std::vector<RecognizedPoint> ChabautyReport::algebraic_points() const {
  std::vector<RecognizedPoint> out;
  for (const auto& pt : points)
    if (pt.kind == PointKind::Algebraic) out.push_back(pt);
  return out;
}

namespace {

unsigned thread_count(std::size_t tasks) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHABAUTY_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

}  // namespace

ChabautyReport run(const HyperellipticModel& model, long p, const MordellWeilInput& mw, const RationalPoint& basepoint,
                   long N, long M) {
  auto start = std::chrono::steady_clock::now();
  ColemanIntegrator ci(model, p, N);
  ChabautyReport rep{model};
  rep.prime = p;
  rep.precision = N;
  rep.mw = mw;
  rep.basepoint = basepoint;
  rep.annihilator = annihilating_differentials(ci, mw);
  try {
    rep.bound = coleman_bound(model, p);
    rep.bound_note = "#X(F_p) + 2g - 2";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BoundInapplicable) throw;
    rep.bound_note = "p <= 2g: the per-disk Strassman counts certify the zero counts";
  }
  LocalPoint b = ci.lift(basepoint);
  std::vector<ResidueDisk> disks = classify_disks(model, p);
  std::sort(disks.begin(), disks.end());
  rep.disks.resize(disks.size());
  const auto& diffs = rep.annihilator.differentials;

  auto work = [&](std::size_t k) {
    DiskReport& out = rep.disks[k];
    out.locus.disk = disks[k];
    try {
      out.locus = disk_locus(ci, disks[k], diffs.front(), b, M);
      // Further annihilating differentials must vanish at the same points.
      for (std::size_t j = 1; j < diffs.size(); ++j) {
        DiskLocus other = disk_locus(ci, disks[k], diffs[j], b, M);
        std::vector<PadicNumber> zs;
        std::vector<LocalPoint> pts;
        for (std::size_t z = 0; z < out.locus.zeros.size(); ++z)
          if (other.series.evaluate(out.locus.zeros[z]).is_zero()) {
            zs.push_back(out.locus.zeros[z]);
            pts.push_back(out.locus.points[z]);
          }
        out.locus.zeros = zs;
        out.locus.points = pts;
      }
    } catch (const Error& e) {
      out.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
  };
  unsigned nthreads = thread_count(disks.size());
  if (nthreads <= 1) {
    for (std::size_t k = 0; k < disks.size(); ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < disks.size();) work(k);
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& d : rep.disks) {
    if (d.error) {
      rep.partial = true;
      continue;
    }
    rep.total_zeros += static_cast<long>(d.locus.zeros.size());
    for (const auto& c : d.locus.clusters) rep.total_zeros += c.multiplicity;
    for (const auto& pt : d.locus.points) rep.points.push_back(recognize_point(model, d.locus.disk, pt));
  }

  std::vector<RationalPoint> rat = rep.rational_points();
  std::set<RationalPoint> rs(rat.begin(), rat.end());
  std::vector<Involution> invs{Involution::Sigma};
  if (model.is_even()) {
    invs.push_back(Involution::W);
    invs.push_back(Involution::WSigma);
  }
  for (const auto& pt : rat)
    for (Involution w : invs)
      if (!rs.count(apply_involution(model, w, pt))) rep.involution_closed = false;

  rep.terms = M;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace chabauty
