#include "properties.hpp"

#include <functional>
#include <random>

#include "chabauty/coleman.hpp"
#include "chabauty/series.hpp"

namespace chabauty::testing {

namespace {

constexpr long kMinPrecision = 8;

struct Recorder {
  PropertyOutcome out;
  void check(bool ok, const std::string& what) {
    ++out.cases;
    if (!ok) {
      ++out.failures;
      if (out.first_failure.empty()) out.first_failure = what;
    }
  }
};

bool same(const PadicNumber& a, const PadicNumber& b) {
  return std::min(a.precision(), b.precision()) >= kMinPrecision && a.equals(b);
}

mpq_class random_rational(std::mt19937_64& rng, long numer, long denom) {
  std::uniform_int_distribution<long> n(-numer, numer), d(1, denom);
  mpq_class q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

// A curve with a ready integrator and local expansions on its ordinary disks.
struct Bench {
  HyperellipticModel model;
  long p;
  ColemanIntegrator ci;
  std::vector<LocalExpansion> disks;

  Bench(HyperellipticModel m, long prime, long N) : model(m), p(prime), ci(m, prime, N) {
    for (const auto& d : classify_disks(model, p))
      if (d.kind == DiskKind::Ordinary) disks.push_back(local_parametrization(d, model, p, ci.working_precision() + 4, 24));
  }

  LocalPoint random_point(std::mt19937_64& rng, std::size_t disk) const {
    std::uniform_int_distribution<long> k(0, 80);
    PadicNumber t = PadicNumber::from_integer(p * k(rng), p, ci.working_precision() + 4);
    return point_at(disks[disk], t);
  }
  LocalPoint random_point(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> which(0, disks.size() - 1);
    return random_point(rng, which(rng));
  }
};

std::string describe(const LocalPoint& P) { return "(" + P.x.to_string() + ", " + P.y.to_string() + ")"; }

void coleman_properties(long cases, std::mt19937_64& rng, Recorder& additivity, Recorder& linearity,
                        Recorder& antisymmetry) {
  // An even sextic (bielliptic route) and an odd quintic (Frobenius route).
  Bench benches[] = {
      Bench(HyperellipticModel::from_descending({-1, 0, -9, 0, -11, 0, 37}), 3, 10),
      Bench(HyperellipticModel::from_descending({1, 0, 0, 2, -1, 3}), 7, 9),
  };
  std::uniform_int_distribution<long> small(-9, 9);
  for (long i = 0; i < cases; ++i) {
    const Bench& b = benches[i % 2];
    const int g = b.ci.supported_differentials();
    LocalPoint P = b.random_point(rng), Q = b.random_point(rng), R = b.random_point(rng);

    auto pq = b.ci.integrals(P, Q), qr = b.ci.integrals(Q, R), pr = b.ci.integrals(P, R);
    bool ok = true;
    for (int j = 0; j < g; ++j) ok = ok && same(pq[j] + qr[j], pr[j]);
    additivity.check(ok, b.model.to_string() + " P=" + describe(P) + " Q=" + describe(Q) + " R=" + describe(R));

    auto sigma = [&](const LocalPoint& X) { return apply_involution(b.model, Involution::Sigma, X); };
    auto flipped = b.ci.integrals(sigma(P), sigma(Q));
    ok = true;
    for (int j = 0; j < g; ++j) ok = ok && same(flipped[j], -pq[j]);
    antisymmetry.check(ok, b.model.to_string() + " P=" + describe(P) + " Q=" + describe(Q));

    std::vector<long> c(g);
    for (auto& x : c) x = small(rng);
    Differential omega;
    for (int j = 0; j < g; ++j) omega.coefficients.push_back(PadicNumber::from_integer(c[j], b.p, kCoefficientPrecision));
    Divisor D{{{1, Q}, {-1, P}}};
    PadicNumber whole = b.ci.pairing(D, omega);
    PadicNumber parts = PadicNumber::exact_zero(b.p);
    for (int j = 0; j < g; ++j) parts += pq[j] * mpq_class(c[j]);
    ok = same(whole, parts);
    // Tiny integrals of the combination agree with the combination of tiny integrals.
    std::uniform_int_distribution<std::size_t> which(0, b.disks.size() - 1);
    std::size_t disk = which(rng);
    LocalPoint S = b.random_point(rng, disk), T = b.random_point(rng, disk);
    const long N = b.ci.precision();
    PadicNumber tiny_whole = tiny_integral(omega, S, T, b.model, b.p, N, 24).value;
    PadicNumber tiny_parts = PadicNumber::exact_zero(b.p);
    for (int j = 0; j < g; ++j)
      tiny_parts += tiny_integral(Differential::basis(b.p, b.model.genus(), j), S, T, b.model, b.p, N, 24).value *
                    mpq_class(c[j]);
    ok = ok && same(tiny_whole, tiny_parts);
    linearity.check(ok, b.model.to_string() + " P=" + describe(P) + " Q=" + describe(Q));
  }
}

void padic_properties(long cases, std::mt19937_64& rng, Recorder& coherence, Recorder& sqrt_ok) {
  const long primes[] = {3, 5, 7, 11, 13};
  std::uniform_int_distribution<long> prec(8, 24), bump(1, 10), exps(0, 3);
  for (long i = 0; i < cases; ++i) {
    const long p = primes[i % 5];
    mpq_class x = random_rational(rng, 1000000, 5000), y = random_rational(rng, 1000000, 5000);
    if (x == 0 || y == 0) x += 1, y += 2;
    const long Na = prec(rng), Nb = prec(rng), extra = bump(rng);
    PadicNumber a = PadicNumber::from_rational(x, p, Na), b = PadicNumber::from_rational(y, p, Nb);
    PadicNumber A = PadicNumber::from_rational(x, p, Na + extra), B = PadicNumber::from_rational(y, p, Nb + extra);
    if (a.is_zero() || b.is_zero()) {
      coherence.check(true, "");
      continue;
    }
    const long va = a.valuation(), vb = b.valuation();
    struct Op {
      std::function<PadicNumber(const PadicNumber&, const PadicNumber&)> f;
      mpq_class exact;
      long bound;
      const char* name;
    };
    Op ops[] = {
        {[](auto& u, auto& v) { return u + v; }, x + y, std::min(Na, Nb), "+"},
        {[](auto& u, auto& v) { return u - v; }, x - y, std::min(Na, Nb), "-"},
        {[](auto& u, auto& v) { return u * v; }, x * y, std::min(Na + vb, Nb + va), "*"},
        {[](auto& u, auto& v) { return u / v; }, x / y, std::min(Na - vb, Nb + va - 2 * vb), "/"},
    };
    bool ok = true;
    std::string why;
    for (const auto& op : ops) {
      PadicNumber c = op.f(a, b), C = op.f(A, B);
      bool good = c.precision() <= op.bound && c.precision() >= op.bound - 1 &&
                  c.equals(PadicNumber::from_rational(op.exact, p, c.precision())) && C.equals(c) &&
                  C.precision() >= c.precision();
      if (!good && why.empty())
        why = std::string(op.name) + " p=" + std::to_string(p) + " x=" + x.get_str() + " y=" + y.get_str() +
              " Na=" + std::to_string(Na) + " Nb=" + std::to_string(Nb);
      ok = ok && good;
    }
    coherence.check(ok, why);

    // Square roots of random squares, both branches, and a non-residue.
    mpq_class u = random_rational(rng, 100000, 1000);
    while (u.get_num() % p == 0) u += 1;
    while (u.get_den() % p == 0) u *= p;
    u.canonicalize();
    const long k = exps(rng);
    mpq_class sq = u * u;
    for (long e = 0; e < k; ++e) sq *= p * p;
    PadicNumber s = PadicNumber::from_rational(sq, p, prec(rng) + 2 * k + 2);
    PadicNumber uu = PadicNumber::from_rational(u, p, 40);
    long r = uu.residue() % p;
    bool good = true;
    for (long branch : {r, p - r}) {
      PadicNumber root = hensel_sqrt(s, branch);
      good = good && (root * root).equals(s) && (root * root).precision() >= s.precision() && mpz_class(root.unit() % p) == branch;
    }
    long nonres = 2;
    while (sqrt_mod_p(nonres, p) >= 0) ++nonres;
    bool threw = false;
    try {
      hensel_sqrt(PadicNumber::from_rational(s.unit() * nonres, p, 12), 1);
    } catch (const Error& e) {
      threw = e.kind() == ErrorKind::NoSquareRoot;
    }
    sqrt_ok.check(good && threw, "p=" + std::to_string(p) + " a=" + sq.get_str());
  }
}

void strassman_properties(long cases, std::mt19937_64& rng, Recorder& rec) {
  const long primes[] = {3, 5, 7};
  std::uniform_int_distribution<long> deg(0, 6), coef(-60, 60), shift(0, 2);
  for (long i = 0; i < cases; ++i) {
    const long p = primes[i % 3];
    auto poly = [&] {
      std::vector<PadicNumber> c;
      long d = deg(rng);
      for (long k = 0; k <= d; ++k) {
        mpz_class v = coef(rng);
        for (long s = shift(rng); s > 0; --s) v *= p;
        c.push_back(PadicNumber::from_integer(v, p, 60));
      }
      while (c.size() > 1 && c.back().is_zero()) c.pop_back();
      if (c.back().is_zero()) c.back() = PadicNumber::from_integer(1, p, 60);
      return TruncatedSeries::polynomial(p, c);
    };
    TruncatedSeries f = poly(), g = poly();
    long nf = strassman_count(f), ng = strassman_count(g), nfg = strassman_count(f * g);
    rec.check(nfg == nf + ng, "p=" + std::to_string(p) + " counts " + std::to_string(nf) + "+" + std::to_string(ng) +
                                  " vs " + std::to_string(nfg));
  }
}

}  // namespace

std::vector<PropertyOutcome> run_property_suite(long cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Recorder add{{"integral additivity in endpoints"}}, lin{{"linearity in the differential"}},
      anti{{"antisymmetry under the hyperelliptic involution"}}, coh{{"p-adic precision coherence"}},
      sq{{"hensel_sqrt correctness"}}, str{{"Strassman count multiplicative on products"}};
  coleman_properties(cases, rng, add, lin, anti);
  padic_properties(cases, rng, coh, sq);
  strassman_properties(cases, rng, str);
  return {add.out, lin.out, anti.out, coh.out, sq.out, str.out};
}

}  // namespace chabauty::testing
