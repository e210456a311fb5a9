#include "chabauty/series.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace chabauty {

namespace {

long sat_add(long a, long b) {
  long s = a + b;
  return std::min(s, kExactPrecision);
}

long coefficient_bound(const PadicNumber& c) {
  return c.is_zero() ? c.precision() : c.valuation();
}

// First index whose coefficient is not exactly zero (or the order).
long t_order(const TruncatedSeries& f) {
  const auto& c = f.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!(c[k].is_zero() && c[k].is_exact())) return static_cast<long>(k);
  return f.order();
}

// Lower bound for the valuation of every coefficient, known or not.
std::optional<long> global_bound(const TruncatedSeries& f) {
  if (!f.tail_bound()) return std::nullopt;
  long b = *f.tail_bound();
  for (const auto& c : f.coefficients()) b = std::min(b, coefficient_bound(c));
  return b;
}

}  // namespace

TruncatedSeries::TruncatedSeries(long p, std::vector<PadicNumber> coefficients,
                                 long order, std::optional<long> tail_bound)
    : p_(p), coeffs_(std::move(coefficients)), order_(order), tail_(tail_bound) {
  if (order_ < 0) order_ = 0;
  if (static_cast<long>(coeffs_.size()) > order_) coeffs_.erase(coeffs_.begin() + order_, coeffs_.end());
  for (const auto& c : coeffs_)
    if (c.prime() != p_) throw Error(ErrorKind::PrimeMismatch, "series coefficient prime mismatch");
  if (tail_) tail_ = std::min(*tail_, kExactPrecision);
}

TruncatedSeries TruncatedSeries::polynomial(long p, std::vector<PadicNumber> coefficients) {
  long n = static_cast<long>(coefficients.size());
  return TruncatedSeries(p, std::move(coefficients), n, kExactPrecision);
}

TruncatedSeries TruncatedSeries::variable(long p, long order, long precision) {
  std::vector<PadicNumber> c{PadicNumber::exact_zero(p), PadicNumber::from_integer(1, p, precision)};
  return TruncatedSeries(p, std::move(c), order, kExactPrecision);
}

TruncatedSeries TruncatedSeries::constant(const PadicNumber& c, long order) {
  return TruncatedSeries(c.prime(), {c}, order, kExactPrecision);
}

PadicNumber TruncatedSeries::coefficient(long k) const {
  if (k < 0) return PadicNumber::exact_zero(p_);
  if (k >= order_) {
    if (is_polynomial()) return PadicNumber::exact_zero(p_);
    throw PrecisionExhausted("coefficient " + std::to_string(k) + " beyond series order " +
                             std::to_string(order_));
  }
  if (k < static_cast<long>(coeffs_.size())) return coeffs_[static_cast<std::size_t>(k)];
  return PadicNumber::exact_zero(p_);
}

std::optional<long> TruncatedSeries::valuation_bound(long k) const {
  if (k >= order_) return tail_;
  if (k < static_cast<long>(coeffs_.size())) return coefficient_bound(coeffs_[static_cast<std::size_t>(k)]);
  return kExactPrecision;
}

TruncatedSeries TruncatedSeries::with_tail_bound(long bound) const {
  return TruncatedSeries(p_, coeffs_, order_, bound);
}

TruncatedSeries TruncatedSeries::truncate(long order) const {
  if (order > order_ && !is_polynomial()) order = order_;
  auto c = coeffs_;
  if (static_cast<long>(c.size()) > order) c.erase(c.begin() + order, c.end());
  std::optional<long> tail = tail_;
  if (order < order_) {
    // Dropped known coefficients join the tail.
    if (tail) {
      for (long k = order; k < static_cast<long>(coeffs_.size()); ++k)
        *tail = std::min(*tail, coefficient_bound(coeffs_[static_cast<std::size_t>(k)]));
    }
  }
  return TruncatedSeries(p_, std::move(c), order, tail);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& rhs) const {
  if (p_ != rhs.p_) throw Error(ErrorKind::PrimeMismatch, "series prime mismatch");
  long order = std::min(order_, rhs.order_);
  if (is_polynomial() && rhs.is_polynomial()) order = std::max(order_, rhs.order_);
  std::vector<PadicNumber> c;
  c.reserve(static_cast<std::size_t>(order));
  for (long k = 0; k < order; ++k) c.push_back(coefficient(k) + rhs.coefficient(k));
  std::optional<long> tail;
  if (tail_ && rhs.tail_) {
    tail = std::min(*tail_, *rhs.tail_);
    // Known coefficients of the longer operand that fall beyond the new order.
    for (long k = order; k < order_; ++k) tail = std::min(*tail, *valuation_bound(k));
    for (long k = order; k < rhs.order_; ++k) tail = std::min(*tail, *rhs.valuation_bound(k));
  }
  return TruncatedSeries(p_, std::move(c), order, tail);
}

TruncatedSeries TruncatedSeries::operator-() const {
  std::vector<PadicNumber> c;
  for (const auto& a : coeffs_) c.push_back(-a);
  return TruncatedSeries(p_, std::move(c), order_, tail_);
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& rhs) const { return *this + (-rhs); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& rhs) const {
  if (p_ != rhs.p_) throw Error(ErrorKind::PrimeMismatch, "series prime mismatch");
  long order;
  if (is_polynomial() && rhs.is_polynomial()) {
    order = std::max(0L, static_cast<long>(coeffs_.size() + rhs.coeffs_.size()) - 1);
  } else {
    long of = t_order(*this);
    long og = t_order(rhs);
    order = std::min(sat_add(order_, og), sat_add(rhs.order_, of));
    if (is_polynomial()) order = sat_add(rhs.order_, of);
    if (rhs.is_polynomial()) order = sat_add(order_, og);
  }
  const long nf = static_cast<long>(coeffs_.size());
  const long ng = static_cast<long>(rhs.coeffs_.size());
  order = std::min(order, std::max(order_, rhs.order_) + nf + ng + 1);
  std::vector<PadicNumber> c(static_cast<std::size_t>(std::min(order, nf + ng)), PadicNumber::exact_zero(p_));
  for (long i = 0; i < nf; ++i) {
    for (long j = 0; j < ng && i + j < static_cast<long>(c.size()); ++j) {
      c[static_cast<std::size_t>(i + j)] += coeffs_[static_cast<std::size_t>(i)] * rhs.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  std::optional<long> tail;
  if (is_polynomial() && rhs.is_polynomial()) {
    tail = kExactPrecision;
  } else {
    auto bf = global_bound(*this);
    auto bg = global_bound(rhs);
    if (bf && bg) tail = sat_add(*bf, *bg);
  }
  return TruncatedSeries(p_, std::move(c), order, tail);
}

TruncatedSeries TruncatedSeries::operator*(const PadicNumber& s) const {
  std::vector<PadicNumber> c;
  for (const auto& a : coeffs_) c.push_back(a * s);
  std::optional<long> tail;
  if (tail_) tail = sat_add(*tail_, coefficient_bound(s));
  if (is_polynomial()) tail = kExactPrecision;
  return TruncatedSeries(p_, std::move(c), order_, tail);
}

TruncatedSeries TruncatedSeries::operator*(const mpq_class& s) const {
  std::vector<PadicNumber> c;
  for (const auto& a : coeffs_) c.push_back(a * s);
  std::optional<long> tail;
  if (tail_) tail = (s == 0) ? kExactPrecision : sat_add(*tail_, valuation(s, p_));
  if (is_polynomial()) tail = kExactPrecision;
  return TruncatedSeries(p_, std::move(c), order_, tail);
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& g) const {
  PadicNumber g0 = g.coefficient(0);
  if (!(g0.is_zero() && g0.is_exact()))
    throw Error(ErrorKind::CompositionDomain, "compose: inner series has nonzero constant term");
  long og = t_order(g);
  long order;
  bool poly = is_polynomial() && g.is_polynomial();
  if (poly) {
    long df = std::max(0L, static_cast<long>(coeffs_.size()) - 1);
    long dg = std::max(0L, static_cast<long>(g.coeffs_.size()) - 1);
    order = df * dg + 1;
  } else {
    order = std::min(is_polynomial() ? std::numeric_limits<long>::max() / 4 : order_ * og, g.order_);
    if (g.is_polynomial()) order = order_ * og;
  }
  TruncatedSeries inner = g.truncate(order);
  if (poly) inner = TruncatedSeries(p_, g.coeffs_, order, kExactPrecision);
  TruncatedSeries result = TruncatedSeries(p_, {}, order, poly ? std::optional<long>(kExactPrecision) : std::nullopt);
  for (long k = static_cast<long>(coeffs_.size()) - 1; k >= 0; --k) {
    result = (result * inner).truncate(order);
    result = result + TruncatedSeries(p_, {coeffs_[static_cast<std::size_t>(k)]}, order,
                                      poly ? std::optional<long>(kExactPrecision) : std::nullopt);
    result = result.truncate(order);
  }
  return TruncatedSeries(p_, result.coeffs_, order, poly ? std::optional<long>(kExactPrecision) : std::nullopt);
}

TruncatedSeries TruncatedSeries::inverse() const {
  PadicNumber a0 = coefficient(0);
  if (a0.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of a series with zero constant term");
  PadicNumber inv0 = a0.inverse();
  std::vector<PadicNumber> b{inv0};
  for (long k = 1; k < order_; ++k) {
    PadicNumber s = PadicNumber::exact_zero(p_);
    for (long i = 1; i <= k && i < static_cast<long>(coeffs_.size()); ++i)
      s += coeffs_[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
    b.push_back(-(s * inv0));
  }
  std::optional<long> tail;
  auto gb = global_bound(*this);
  if (gb && *gb >= a0.valuation()) tail = -a0.valuation();
  return TruncatedSeries(p_, std::move(b), order_, tail);
}

TruncatedSeries TruncatedSeries::sqrt(const PadicNumber& y0) const {
  if (y0.is_zero()) throw Error(ErrorKind::DivisionByZero, "series sqrt with zero constant term");
  PadicNumber a0 = coefficient(0);
  if (!(y0 * y0 - a0).is_zero())
    throw Error(ErrorKind::InvalidInput, "series sqrt: " + y0.to_string() + " is not a root of " + a0.to_string());
  PadicNumber inv2y0 = (y0 * mpq_class(2)).inverse();
  std::vector<PadicNumber> y{y0};
  for (long k = 1; k < order_; ++k) {
    PadicNumber s = coefficient(k);
    for (long i = 1; i < k; ++i) s -= y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(k - i)];
    y.push_back(s * inv2y0);
  }
  std::optional<long> tail;
  auto gb = global_bound(*this);
  if (gb && !a0.is_zero() && *gb >= a0.valuation()) tail = y0.valuation();
  return TruncatedSeries(p_, std::move(y), order_, tail);
}

TruncatedSeries TruncatedSeries::derivative() const {
  std::vector<PadicNumber> c;
  for (long k = 1; k < static_cast<long>(coeffs_.size()); ++k)
    c.push_back(coeffs_[static_cast<std::size_t>(k)] * mpq_class(k));
  long order = std::max(0L, order_ - 1);
  if (is_polynomial()) return polynomial(p_, std::move(c));
  return TruncatedSeries(p_, std::move(c), order, tail_);
}

TruncatedSeries TruncatedSeries::formal_integrate() const {
  std::vector<PadicNumber> c{PadicNumber::exact_zero(p_)};
  for (long k = 0; k < static_cast<long>(coeffs_.size()); ++k)
    c.push_back(coeffs_[static_cast<std::size_t>(k)] / mpq_class(k + 1));
  if (is_polynomial()) return polynomial(p_, std::move(c));
  return TruncatedSeries(p_, std::move(c), order_ + 1, std::nullopt);
}

TruncatedSeries TruncatedSeries::substitute_pT() const {
  std::vector<PadicNumber> c;
  for (long k = 0; k < static_cast<long>(coeffs_.size()); ++k)
    c.push_back(coeffs_[static_cast<std::size_t>(k)] * mpq_class(prime_power(p_, k)));
  std::optional<long> tail;
  if (tail_) tail = sat_add(*tail_, order_);
  return TruncatedSeries(p_, std::move(c), order_, tail);
}

TruncatedSeries TruncatedSeries::recenter(const PadicNumber& r) const {
  if (!tail_) throw PrecisionExhausted("recenter needs a tail bound");
  if (!r.is_zero() && r.valuation() < 0)
    throw Error(ErrorKind::InvalidInput, "recenter at a non-integral point");
  const long n = static_cast<long>(coeffs_.size());
  // Taylor shift by repeated synthetic division.
  std::vector<PadicNumber> a = coeffs_;
  std::vector<PadicNumber> b;
  for (long j = 0; j < n; ++j) {
    PadicNumber acc = PadicNumber::exact_zero(p_);
    for (long k = n - 1; k >= j; --k) {
      acc = acc * r + a[static_cast<std::size_t>(k)];
      a[static_cast<std::size_t>(k)] = acc;
    }
    b.push_back(a[static_cast<std::size_t>(j)]);
  }
  if (!is_polynomial())
    for (auto& c : b) c = c.add_bigoh(*tail_);
  if (is_polynomial()) return polynomial(p_, std::move(b));
  return TruncatedSeries(p_, std::move(b), order_, tail_);
}

TruncatedSeries TruncatedSeries::revert() const {
  PadicNumber a0 = coefficient(0);
  if (!a0.is_zero()) throw Error(ErrorKind::CompositionDomain, "revert needs f(0) = 0");
  PadicNumber a1 = coefficient(1);
  if (a1.is_zero()) throw Error(ErrorKind::DivisionByZero, "revert needs f'(0) != 0");
  PadicNumber inv1 = a1.inverse();
  const long order = order_;
  // g = (t - sum_{k>=2} a_k g^k) / a_1, iterated to a fixed point.
  auto c = coeffs_;
  c[0] = PadicNumber::exact_zero(p_);
  c[1] = PadicNumber::exact_zero(p_);
  TruncatedSeries higher(p_, c, order, std::nullopt);
  std::vector<PadicNumber> g0{PadicNumber::exact_zero(p_), inv1};
  TruncatedSeries g(p_, g0, order, std::nullopt);
  for (long it = 1; it < order; ++it) {
    TruncatedSeries hg = higher.compose(g);
    std::vector<PadicNumber> next;
    for (long k = 0; k < order; ++k) next.push_back(-(hg.coefficient(k) * inv1));
    next[0] = PadicNumber::exact_zero(p_);
    next[1] = inv1;
    g = TruncatedSeries(p_, std::move(next), order, std::nullopt);
  }
  return g;
}

PadicNumber TruncatedSeries::evaluate(const PadicNumber& t, std::optional<long> tail_term_bound) const {
  if (!t.is_zero() && t.valuation() < 0)
    throw Error(ErrorKind::InvalidInput, "series evaluation outside the closed unit disk");
  PadicNumber acc = PadicNumber::exact_zero(p_);
  for (long k = static_cast<long>(coeffs_.size()) - 1; k >= 0; --k)
    acc = acc * t + coeffs_[static_cast<std::size_t>(k)];
  if (is_polynomial()) return acc;
  long bound;
  if (tail_term_bound) {
    bound = *tail_term_bound;
  } else if (tail_) {
    long vt = t.is_zero() ? t.precision() : t.valuation();
    bound = sat_add(*tail_, std::min(kExactPrecision, order_ * vt));
  } else {
    throw PrecisionExhausted("evaluation of a series without a tail bound");
  }
  return acc.add_bigoh(bound);
}

long strassman_count(const TruncatedSeries& f) {
  const long order = f.order();
  long best = std::numeric_limits<long>::max();
  long index = -1;
  for (long k = 0; k < order; ++k) {
    PadicNumber c = f.coefficient(k);
    if (c.is_zero()) continue;
    if (c.valuation() <= best) {
      best = c.valuation();
      index = k;
    }
  }
  if (index < 0) throw PrecisionExhausted("Strassman: every known coefficient is a certified zero", 1);
  for (long k = 0; k < order; ++k) {
    PadicNumber c = f.coefficient(k);
    if (!c.is_zero()) continue;
    long need = k > index ? best + 1 : best;
    if (c.precision() < need)
      throw PrecisionExhausted("Strassman: coefficient " + std::to_string(k) + " is only O(p^" +
                                   std::to_string(c.precision()) + ")",
                               need - c.precision());
  }
  auto tail = f.tail_bound();
  if (!tail) throw PrecisionExhausted("Strassman: series has no tail bound");
  if (*tail <= best)
    throw PrecisionExhausted("Strassman: truncation order too small to certify the dominant index",
                             best + 1 - *tail);
  return index;
}

namespace {

long max_precision(const TruncatedSeries& f) {
  long w = 1;
  for (const auto& c : f.coefficients())
    if (!c.is_exact()) w = std::max(w, c.precision());
  if (f.tail_bound() && *f.tail_bound() < kExactPrecision / 2) w = std::max(w, *f.tail_bound());
  return w + 2;
}

// Newton iteration for the unique zero of g on the closed unit disk.
PadicNumber newton_simple_zero(const TruncatedSeries& g) {
  const long p = g.prime();
  const long w = max_precision(g);
  TruncatedSeries dg = g.derivative();
  PadicNumber t = PadicNumber::zero(p, w);
  for (long it = 0; it < 4 * w + 8; ++it) {
    PadicNumber val = g.evaluate(t);
    if (val.is_zero()) break;
    PadicNumber der = dg.evaluate(t);
    if (der.is_zero()) throw PrecisionExhausted("Newton: derivative is a certified zero");
    PadicNumber next = t - val / der;
    mpz_class rep = next.is_zero() ? mpz_class(0) : next.lift();
    t = PadicNumber::from_integer(rep, p, w);
  }
  PadicNumber val = g.evaluate(t);
  PadicNumber der = dg.evaluate(t);
  if (der.is_zero()) throw PrecisionExhausted("Newton: derivative is a certified zero");
  if (!val.is_zero()) throw PrecisionExhausted("Newton iteration did not converge");
  return t.add_bigoh(val.precision() - der.valuation());
}

void descend(const TruncatedSeries& f, const PadicNumber& center, long level, long count,
             ZeroIsolation& out, int depth) {
  const long p = f.prime();
  // f is the original series in the variable center + p^level * T.
  long found = 0;
  for (long r = 0; r < p; ++r) {
    TruncatedSeries g = f.recenter(PadicNumber::from_integer(r, p, max_precision(f))).substitute_pT();
    long c = 0;
    try {
      c = strassman_count(g);
    } catch (const PrecisionExhausted&) {
      out.clusters.push_back({center, level, count});
      return;
    }
    found += c;
    if (c == 0) continue;
    PadicNumber sub_center =
        center + PadicNumber::from_integer(r, p, max_precision(f) + 2) * mpq_class(prime_power(p, level));
    if (c == 1) {
      PadicNumber t = newton_simple_zero(g);
      out.zeros.push_back(sub_center + t * mpq_class(prime_power(p, level + 1)));
    } else if (depth > 64) {
      out.clusters.push_back({sub_center, level + 1, c});
    } else {
      descend(g, sub_center, level + 1, c, out, depth + 1);
    }
  }
  if (found != count) {
    out.clusters.push_back({center, level, count});
  }
}

}  // namespace

ZeroIsolation isolate_zeros(const TruncatedSeries& f) {
  ZeroIsolation out;
  long n = strassman_count(f);
  if (n == 0) return out;
  descend(f, PadicNumber::exact_zero(f.prime()), 0, n, out, 0);
  return out;
}

}  // namespace chabauty
