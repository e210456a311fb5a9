#pragma once

#include <optional>
#include <vector>

#include "chabauty/padic.hpp"

namespace chabauty {

/// Power series sum a_k t^k over Q_p, known up to O(t^M).
///
/// Besides the coefficient list, a series may carry a certified lower bound
/// on the valuation of every unknown coefficient a_k with k >= M (the
/// "tail bound"). Zero counting and evaluation on the closed unit disk need
/// it; operations propagate it where a bound follows and drop it otherwise.
/// Exact polynomials have an exact-zero tail.
class TruncatedSeries {
 public:
  TruncatedSeries(long p, std::vector<PadicNumber> coefficients, long order,
                  std::optional<long> tail_bound = std::nullopt);

  /// A polynomial: all coefficients beyond the list are exactly zero.
  static TruncatedSeries polynomial(long p, std::vector<PadicNumber> coefficients);
  /// The series t + O(t^M); the unit coefficient is known to `precision`.
  static TruncatedSeries variable(long p, long order, long precision);
  static TruncatedSeries constant(const PadicNumber& c, long order);

  long prime() const { return p_; }
  long order() const { return order_; }
  std::optional<long> tail_bound() const { return tail_; }
  bool is_polynomial() const { return tail_ && *tail_ >= kExactPrecision / 2; }

  /// Coefficient of t^k; exact zero for k < M beyond the stored list.
  /// Throws PrecisionExhausted for k >= M.
  PadicNumber coefficient(long k) const;
  const std::vector<PadicNumber>& coefficients() const { return coeffs_; }

  /// Certified lower bound for v(a_k): the valuation if nonzero, the
  /// precision for a certified zero, the tail bound beyond M.
  std::optional<long> valuation_bound(long k) const;

  TruncatedSeries with_tail_bound(long bound) const;
  TruncatedSeries truncate(long order) const;

  TruncatedSeries operator+(const TruncatedSeries& rhs) const;
  TruncatedSeries operator-(const TruncatedSeries& rhs) const;
  TruncatedSeries operator-() const;
  TruncatedSeries operator*(const TruncatedSeries& rhs) const;
  TruncatedSeries operator*(const PadicNumber& c) const;
  TruncatedSeries operator*(const mpq_class& c) const;

  /// f(g) for g with exactly zero constant term (CompositionDomain otherwise).
  TruncatedSeries compose(const TruncatedSeries& g) const;

  /// Multiplicative inverse; the constant term must be a unit-or-nonzero.
  TruncatedSeries inverse() const;

  /// Square root with the given constant term (whose square must agree with
  /// a_0 at its precision).
  TruncatedSeries sqrt(const PadicNumber& constant_term) const;

  TruncatedSeries derivative() const;

  /// sum a_k t^(k+1)/(k+1). Coefficient precision drops by v_p(k+1).
  TruncatedSeries formal_integrate() const;

  /// f(p T): coefficient k multiplied by p^k.
  TruncatedSeries substitute_pT() const;

  /// f(r + T) for integral r; needs a tail bound.
  TruncatedSeries recenter(const PadicNumber& r) const;

  /// g with g(f(t)) = t, for f(0) = 0 and f'(0) nonzero.
  TruncatedSeries revert() const;

  /// Value at t with v(t) >= 0. The truncation error is bounded by
  /// `tail_term_bound`, a lower bound on v(a_k t^k) for k >= M; if absent,
  /// the series tail bound plus M*v(t) is used.
  PadicNumber evaluate(const PadicNumber& t,
                       std::optional<long> tail_term_bound = std::nullopt) const;

 private:
  long p_;
  std::vector<PadicNumber> coeffs_;
  long order_;
  std::optional<long> tail_;
};

/// Number of zeros, with multiplicity, of f on the closed unit disk: the
/// largest index attaining the minimal coefficient valuation. Throws
/// PrecisionExhausted when the coefficient or tail precision cannot certify
/// that index.
long strassman_count(const TruncatedSeries& f);

/// A residue class p^-radius-neighbourhood holding several zeros that could
/// not be separated.
struct ZeroCluster {
  PadicNumber center;
  long radius_exponent;  // the cluster is center + p^radius_exponent * Z_p
  long multiplicity;
};

struct ZeroIsolation {
  std::vector<PadicNumber> zeros;  // certified simple zeros
  std::vector<ZeroCluster> clusters;
};

/// Zeros of f on the closed unit disk by residue-class descent and Newton
/// iteration. Multiple zeros are reported as clusters, never refined.
ZeroIsolation isolate_zeros(const TruncatedSeries& f);

}  // namespace chabauty
