#include "chabauty/coleman.hpp"

#include <algorithm>

#include "chabauty/bielliptic.hpp"

namespace chabauty {

Differential Differential::basis(long p, int genus, int index) {
  if (index < 0 || index >= 2 * genus) throw Error(ErrorKind::InvalidInput, "basis index out of range");
  Differential w;
  for (int i = 0; i < 2 * genus; ++i)
    w.coefficients.push_back(i == index ? PadicNumber::from_integer(1, p, kCoefficientPrecision) : PadicNumber::exact_zero(p));
  return w;
}

bool Differential::holomorphic(int genus) const {
  for (std::size_t i = static_cast<std::size_t>(genus); i < coefficients.size(); ++i)
    if (!coefficients[i].is_zero()) return false;
  return true;
}

std::string Differential::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i].is_zero() && coefficients[i].is_exact()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coefficients[i].to_string() + ")*x^" + std::to_string(i) + " dx/(2y)";
  }
  return s.empty() ? "0" : s;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Tiny: return "tiny";
    case Provenance::Frobenius: return "frobenius";
    case Provenance::Pushforward: return "pushforward";
  }
  return "?";
}

long Divisor::degree() const {
  long d = 0;
  for (const auto& [n, pt] : terms) d += n;
  return d;
}

std::vector<PadicNumber> padic_solve(std::vector<std::vector<PadicNumber>> A, std::vector<PadicNumber> b) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r) {
      if (A[r][col].is_zero()) continue;
      if (piv == n || A[r][col].valuation() < A[piv][col].valuation()) piv = r;
    }
    if (piv == n) throw PrecisionExhausted("singular linear system at working precision");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    PadicNumber inv = A[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (A[r][col].is_zero() && A[r][col].is_exact()) continue;
      PadicNumber f = A[r][col] * inv;
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<PadicNumber> x(n);
  for (std::size_t i = n; i-- > 0;) {
    PadicNumber s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= A[i][k] * x[k];
    x[i] = s / A[i][i];
  }
  return x;
}

namespace {

long floor_log(long p, long n) {
  long k = 0;
  for (long q = p; q <= n; q *= p) ++k;
  return k;
}

long min_val(const PadicNumber& t) { return t.is_zero() ? t.precision() : t.valuation(); }

LocalPoint sigma(const LocalPoint& P) { return {P.x, -P.y, P.infinity}; }

// Integrals of every available omega_i between two points of one disk.
std::vector<PadicNumber> tiny_values(const HyperellipticModel& m, const LocalPoint& P, const LocalPoint& Q, long W,
                                     long M = 0) {
  const long p = P.x.prime();
  ResidueDisk disk = disk_of(m, P);
  if (!(disk_of(m, Q) == disk)) throw Error(ErrorKind::DiskMismatch, "endpoints lie in different residue disks");
  const bool at_P = disk.kind == DiskKind::Ordinary;
  LocalPoint center = at_P ? P : lift_disk_center(disk, m, p, W);
  if (M <= 0) {
    M = 1;
    while (M + 1 - floor_log(p, M + 1) < W + 1) ++M;
  }
  LocalExpansion e = local_parametrization(disk, m, center, M);
  PadicNumber tP = at_P ? PadicNumber::zero(p, W) : parameter_of(e, m, P);
  PadicNumber tQ = parameter_of(e, m, Q);
  std::vector<PadicNumber> out;
  for (const auto& w : e.omega) {
    TruncatedSeries F = w.formal_integrate();
    auto bound = [&](const PadicNumber& t) {
      long v = std::max(1L, min_val(t));
      return F.order() * v - floor_log(p, F.order());
    };
    PadicNumber a = F.evaluate(tQ, bound(tQ));
    PadicNumber b = at_P ? PadicNumber::zero(p, bound(tP)) : F.evaluate(tP, bound(tP));
    out.push_back(a - b);
  }
  return out;
}

// Route A on a monic odd model.
struct OddEngine {
  HyperellipticModel odd;
  long p, W;
  int g;
  FrobeniusData fd;
  std::vector<std::vector<PadicNumber>> A;

  OddEngine(const HyperellipticModel& model, long p_, long W_)
      : odd(model), p(p_), W(W_), g(model.genus()), fd(frobenius_matrix(model, p_, W_)) {
    const std::size_t n = static_cast<std::size_t>(2 * g);
    A.assign(n, std::vector<PadicNumber>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        A[i][j] = (i == j ? PadicNumber::from_integer(1, p, W + 10) : PadicNumber::exact_zero(p)) - fd.matrix[i][j];
  }

  LocalPoint teichmuller_point(const LocalPoint& P) const {
    long xr = P.x.residue();
    PadicNumber x = xr == 0 ? PadicNumber::zero(p, W) : teichmuller(PadicNumber::from_integer(xr, p, W), W);
    return {x, hensel_sqrt(odd.eval(x), P.y.residue()), false};
  }

  bool ordinary(const LocalPoint& P) const { return disk_of(odd, P).kind == DiskKind::Ordinary; }

  std::vector<PadicNumber> between(const LocalPoint& P, const LocalPoint& Q) const {
    if (disk_of(odd, P) == disk_of(odd, Q)) return tiny_values(odd, P, Q, W);
    LocalPoint TP = teichmuller_point(P), TQ = teichmuller_point(Q);
    std::vector<PadicNumber> rhs;
    for (int i = 0; i < 2 * g; ++i) rhs.push_back(fd.exact_part(i, TQ) - fd.exact_part(i, TP));
    std::vector<PadicNumber> mid = padic_solve(A, rhs);
    std::vector<PadicNumber> a = tiny_values(odd, P, TP, W), b = tiny_values(odd, TQ, Q, W);
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = a[i] + mid[i] + b[i];
    return mid;
  }

  static void add_into(std::vector<PadicNumber>& acc, const std::vector<PadicNumber>& v, const mpq_class& c) {
    if (acc.size() > v.size()) acc.resize(v.size());
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i] * c;
  }

  // Any endpoints; for a special disk D with distinguished point X,
  // int_R^X = (1/2) int_R^{sigma R} since sigma acts by -1 on the basis.
  std::vector<PadicNumber> general(const LocalPoint& P, const LocalPoint& Q) const {
    ResidueDisk dP = disk_of(odd, P), dQ = disk_of(odd, Q);
    if (dP == dQ) return tiny_values(odd, P, Q, W);
    const bool sP = dP.kind != DiskKind::Ordinary, sQ = dQ.kind != DiskKind::Ordinary;
    if (!sP && !sQ) return between(P, Q);
    std::vector<PadicNumber> acc(static_cast<std::size_t>(2 * g), PadicNumber::exact_zero(p));
    if (sP) add_into(acc, tiny_values(odd, P, lift_disk_center(dP, odd, p, W), W), 1);
    if (sQ) add_into(acc, tiny_values(odd, lift_disk_center(dQ, odd, p, W), Q, W), 1);
    if (sP && !sQ) add_into(acc, between(Q, sigma(Q)), mpq_class(-1, 2));
    if (!sP && sQ) add_into(acc, between(P, sigma(P)), mpq_class(1, 2));
    return acc;
  }

  PadicNumber log(const LocalPoint& Q) const {
    LocalPoint inf = LocalPoint::at_infinity(PadicNumber::zero(p, W));
    return general(inf, Q)[0];
  }
};

// A genus 1 cubic or quartic with its odd model engine.
struct EllipticLog {
  OddModelChange change;
  OddEngine engine;
  EllipticLog(const HyperellipticModel& E, long p, long W)
      : change(to_odd_model(E)), engine(change.target, p, W) {}
  PadicNumber operator()(const LocalPoint& Q) const { return engine.log(change.map(Q)) * change.omega[0][0]; }
};

}  // namespace

struct ColemanIntegrator::Impl {
  HyperellipticModel model;
  long p, N, W;
  Provenance route;
  std::optional<OddModelChange> change;
  std::optional<OddEngine> engine;
  std::optional<BiellipticModel> bi;
  std::optional<EllipticLog> log1, log2;

  Impl(const HyperellipticModel& m, long p_, long N_) : model(m), p(p_), N(N_), W(N_ + 3) {
    if (!check_good_reduction(m, p)) throw Error(ErrorKind::InvalidModel, "model has bad reduction at " + std::to_string(p));
    if (m.degree() == 6) {
      if (!m.is_even() || m.g()[0] == 0)
        throw Error(ErrorKind::UnsupportedModel, "even sextic is not of the bielliptic form handled here");
      route = Provenance::Pushforward;
      bi = BiellipticModel::from(m);
      auto [c1, c2] = quotient_curves(*bi);
      build([&](long w) {
        log1.emplace(c1.curve, p, w);
        log2.emplace(c2.curve, p, w);
        return std::min(guard(log1->engine), guard(log2->engine));
      });
      return;
    }
    route = Provenance::Frobenius;
    change = to_odd_model(m);
    build([&](long w) {
      engine.emplace(change->target, p, w);
      return guard(*engine);
    });
  }

  // Digits lost by inverting I - M, from its determinant.
  static long guard(const OddEngine& e) {
    std::vector<mpz_class> chi = zeta_numerator(e.fd);
    mpz_class one(0);
    for (const auto& c : chi) one += c;
    return -valuation(one, e.p);
  }

  template <class F>
  void build(F make) {
    long loss = -make(W);
    if (loss > 0) {
      W += loss;
      make(W);
    }
  }

  std::vector<PadicNumber> integrals(const LocalPoint& P, const LocalPoint& Q) const {
    if (route == Provenance::Frobenius) {
      std::vector<PadicNumber> t = engine->general(change->map(P), change->map(Q));
      const auto& T = change->omega;
      std::size_t n = std::min(T.size(), t.size());
      if (change->kind == OddModelChange::Kind::Quartic) n = 1;
      std::vector<PadicNumber> out;
      for (std::size_t i = 0; i < n; ++i) {
        PadicNumber s = PadicNumber::exact_zero(p);
        for (std::size_t j = 0; j < t.size() && j < T[i].size(); ++j)
          if (T[i][j] != 0) s += t[j] * T[i][j];
        out.push_back(s);
      }
      return out;
    }
    PadicNumber w0 = ((*log2)(push_point(*bi, 2, Q)) - (*log2)(push_point(*bi, 2, P))) * mpq_class(-1, 2);
    PadicNumber w1 = ((*log1)(push_point(*bi, 1, Q)) - (*log1)(push_point(*bi, 1, P))) * mpq_class(1, 2);
    return {w0, w1};
  }
};

ColemanIntegrator::ColemanIntegrator(const HyperellipticModel& model, long p, long N)
    : impl_(std::make_unique<Impl>(model, p, N)) {}
ColemanIntegrator::~ColemanIntegrator() = default;
ColemanIntegrator::ColemanIntegrator(ColemanIntegrator&&) noexcept = default;
ColemanIntegrator& ColemanIntegrator::operator=(ColemanIntegrator&&) noexcept = default;

const HyperellipticModel& ColemanIntegrator::model() const { return impl_->model; }
long ColemanIntegrator::prime() const { return impl_->p; }
long ColemanIntegrator::precision() const { return impl_->N; }
long ColemanIntegrator::working_precision() const { return impl_->W; }
Provenance ColemanIntegrator::route() const { return impl_->route; }

int ColemanIntegrator::supported_differentials() const {
  if (impl_->route == Provenance::Pushforward) return 2;
  if (impl_->change->kind == OddModelChange::Kind::Quartic) return 1;
  return 2 * genus();
}

LocalPoint ColemanIntegrator::lift(const RationalPoint& pt) const {
  if (!on_curve(impl_->model, pt)) throw Error(ErrorKind::InvalidInput, "point " + pt.to_string() + " is not on the curve");
  return to_local(impl_->model, pt, impl_->p, impl_->W);
}

std::vector<IntegralValue> ColemanIntegrator::tiny(const LocalPoint& P, const LocalPoint& Q) const {
  std::vector<PadicNumber> v = tiny_values(impl_->model, P, Q, impl_->W);
  std::vector<IntegralValue> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back({v[i], P, Q, static_cast<int>(i), Provenance::Tiny});
  return out;
}

std::vector<PadicNumber> ColemanIntegrator::integrals(const LocalPoint& P, const LocalPoint& Q) const {
  return impl_->integrals(P, Q);
}

std::vector<IntegralValue> ColemanIntegrator::basis_integrals(const LocalPoint& P, const LocalPoint& Q) const {
  for (const LocalPoint* pt : {&P, &Q})
    if (pt->infinity || disk_of(impl_->model, *pt).kind != DiskKind::Ordinary)
      throw Error(ErrorKind::UnsupportedDisk, "endpoint is not in an ordinary residue disk");
  std::vector<PadicNumber> v = impl_->integrals(P, Q);
  std::vector<IntegralValue> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back({v[i], P, Q, static_cast<int>(i), impl_->route});
  return out;
}

PadicNumber ColemanIntegrator::pairing(const Divisor& D, const Differential& omega,
                                       const std::optional<LocalPoint>& auxiliary) const {
  if (D.degree() != 0) throw Error(ErrorKind::InvalidInput, "divisor must have degree zero");
  PadicNumber total = PadicNumber::exact_zero(impl_->p);
  if (D.terms.empty()) return total;
  LocalPoint b = auxiliary ? *auxiliary : D.terms.front().second;
  for (const auto& [n, pt] : D.terms) {
    if (n == 0) continue;
    std::vector<PadicNumber> v = impl_->integrals(b, pt);
    for (std::size_t i = 0; i < omega.coefficients.size(); ++i) {
      const PadicNumber& c = omega.coefficients[i];
      if (c.is_zero() && c.is_exact()) continue;
      if (i >= v.size()) throw Error(ErrorKind::UnsupportedModel, "differential outside the supported basis");
      total += v[i] * c * mpq_class(n);
    }
  }
  return total;
}

PadicNumber ColemanIntegrator::elliptic_log(const LocalPoint& Q) const {
  if (genus() != 1) throw Error(ErrorKind::UnsupportedModel, "elliptic logarithm needs a genus 1 model");
  return impl_->engine->log(impl_->change->map(Q)) * impl_->change->omega[0][0];
}

namespace {

PadicNumber checked(const PadicNumber& v, long N) {
  if (v.precision() < N)
    throw PrecisionExhausted("integral known only to O(p^" + std::to_string(v.precision()) + ")", N - v.precision());
  return v.add_bigoh(N);
}

}  // namespace

IntegralValue tiny_integral(const Differential& omega, const LocalPoint& P, const LocalPoint& Q,
                            const HyperellipticModel& model, long p, long N, long M) {
  require_odd_prime(p);
  std::vector<PadicNumber> v = tiny_values(model, P, Q, N, M);
  PadicNumber s = PadicNumber::exact_zero(p);
  for (std::size_t i = 0; i < omega.coefficients.size(); ++i) {
    const PadicNumber& c = omega.coefficients[i];
    if (c.is_zero() && c.is_exact()) continue;
    if (i >= v.size()) throw Error(ErrorKind::UnsupportedDisk, "differential has a pole in this disk");
    s += v[i] * c;
  }
  return {s.add_bigoh(N), P, Q, -1, Provenance::Tiny};
}

std::vector<IntegralValue> basis_integrals(const RationalPoint& P, const RationalPoint& Q,
                                           const HyperellipticModel& model, long p, long N) {
  ColemanIntegrator ci(model, p, N);
  std::vector<IntegralValue> out = ci.basis_integrals(ci.lift(P), ci.lift(Q));
  for (auto& iv : out) iv.value = checked(iv.value, N);
  return out;
}

PadicNumber divisor_pairing(const std::vector<std::pair<long, RationalPoint>>& D, const Differential& omega,
                            const HyperellipticModel& model, long p, long N) {
  ColemanIntegrator ci(model, p, N);
  Divisor div;
  for (const auto& [n, pt] : D) div.terms.push_back({n, ci.lift(pt)});
  return checked(ci.pairing(div, omega), N);
}

PadicNumber elliptic_log(const HyperellipticModel& E, const RationalPoint& Q, long p, long N) {
  ColemanIntegrator ci(E, p, N);
  return checked(ci.elliptic_log(ci.lift(Q)), N);
}

}  // namespace chabauty
