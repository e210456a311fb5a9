#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chabauty/exactfield.hpp"
#include "chabauty/padic.hpp"
#include "chabauty/poly.hpp"
#include "chabauty/series.hpp"

namespace chabauty {

/// y^2 = g(x) over Q with squarefree g of degree 3..6 (genus 1 or 2).
class HyperellipticModel {
 public:
  /// Coefficients constant term first.
  explicit HyperellipticModel(RatPoly g);
  /// Coefficients highest degree first (the CLI convention).
  static HyperellipticModel from_descending(const std::vector<mpq_class>& coefficients);

  const RatPoly& g() const { return g_; }
  long degree() const { return static_cast<long>(g_.size()) - 1; }
  int genus() const { return static_cast<int>((degree() + 1) / 2 - 1); }
  bool odd_degree() const { return degree() % 2 == 1; }
  const mpq_class& lead() const { return g_.back(); }
  /// g(-x) = g(x).
  bool is_even() const;
  mpq_class discriminant() const { return poly_discriminant(g_); }

  mpq_class eval(const mpq_class& x) const { return poly_eval(g_, x); }
  PadicNumber eval(const PadicNumber& x) const { return poly_eval(g_, x); }
  QuadElement eval(const QuadElement& x) const;

  std::string to_string() const;

 private:
  RatPoly g_;
};

/// A point with rational coordinates. Points at infinity: one for odd
/// degree; for even degree two when the leading coefficient is a square l^2,
/// told apart by the sign of y/x^(g+1) -> sign*l.
struct RationalPoint {
  mpq_class x, y;
  bool infinity = false;
  int sign = 1;

  static RationalPoint at_infinity(int sign = 1) {
    RationalPoint p;
    p.infinity = true;
    p.sign = sign;
    return p;
  }
  bool operator==(const RationalPoint& o) const;
  bool operator<(const RationalPoint& o) const;
  std::string to_string() const;
};

bool on_curve(const HyperellipticModel& model, const RationalPoint& pt);

/// A Q_p-point. At infinity (even degree) `y` holds the value of y/x^(g+1).
struct LocalPoint {
  PadicNumber x, y;
  bool infinity = false;

  static LocalPoint at_infinity(const PadicNumber& y_ratio) { return {y_ratio, y_ratio, true}; }
};

LocalPoint to_local(const HyperellipticModel& model, const RationalPoint& pt, long p, long N);

/// Points over F_{p^k}; `x` and `y` are FiniteField elements. For points at
/// infinity of even-degree models `y` is the reduction of y/x^(g+1).
struct FqPoint {
  bool infinity = false;
  long x = 0, y = 0;
  bool operator<(const FqPoint& o) const;
  bool operator==(const FqPoint& o) const;
};

bool check_good_reduction(const HyperellipticModel& model, long p);
std::vector<FqPoint> points_mod_p(const HyperellipticModel& model, long p, int k = 1);
long count_points_mod_p(const HyperellipticModel& model, long p, int k = 1);

enum class DiskKind { Ordinary, Weierstrass, Infinite };
std::string_view to_string(DiskKind kind);

/// The residue disk of an F_p-point. Uniformizers: x - x0 (ordinary), y
/// (Weierstrass), and at infinity t with x = c t^-2 (odd degree, c the
/// leading coefficient) or t = 1/x (even degree).
struct ResidueDisk {
  DiskKind kind = DiskKind::Ordinary;
  long x0 = 0, y0 = 0;
  std::string label() const;
  bool operator<(const ResidueDisk& o) const;
  bool operator==(const ResidueDisk& o) const;
};

std::vector<ResidueDisk> classify_disks(const HyperellipticModel& model, long p);
ResidueDisk disk_of(const HyperellipticModel& model, const LocalPoint& pt);

/// Canonical lift: (x0, sqrt(g(x0))) for ordinary disks, the Hensel root of g
/// for Weierstrass disks, the point at infinity for infinite disks.
LocalPoint lift_disk_center(const ResidueDisk& disk, const HyperellipticModel& model, long p, long N);

/// Expansion of a disk around a point in it, in its uniformizer t. `x` and
/// `y` are set for finite disks (Laurent series at infinity are not stored).
/// `omega[i]` is the pullback of x^i dx/(2y) as a series in t (times dt);
/// at infinity only the holomorphic ones are present. Every omega series has
/// integral coefficients, which is recorded as tail bound 0.
struct LocalExpansion {
  ResidueDisk disk;
  LocalPoint center;
  std::optional<TruncatedSeries> x, y;
  std::vector<TruncatedSeries> omega;
  // Odd-degree infinity: x = c t^-2 and y = c^((d+1)/2) t^-d s(t).
  std::optional<TruncatedSeries> s;
  mpq_class c;
};

LocalExpansion local_parametrization(const ResidueDisk& disk, const HyperellipticModel& model,
                                     const LocalPoint& center, long M);
LocalExpansion local_parametrization(const ResidueDisk& disk, const HyperellipticModel& model,
                                     long p, long N, long M);

/// Parameter of a point of the disk, relative to the expansion's center.
PadicNumber parameter_of(const LocalExpansion& e, const HyperellipticModel& model, const LocalPoint& pt);

/// Point with parameter t (finite disks only).
LocalPoint point_at(const LocalExpansion& e, const PadicNumber& t);

enum class Involution { Sigma, W, WSigma };
std::optional<Involution> parse_involution(const std::string& name);

RationalPoint apply_involution(const HyperellipticModel& model, Involution which, const RationalPoint& pt);
LocalPoint apply_involution(const HyperellipticModel& model, Involution which, const LocalPoint& pt);

/// Rational points with x = a/b, |a|, b <= bound, plus rational points at infinity.
std::vector<RationalPoint> small_height_points(const HyperellipticModel& model, long bound);

/// Rational reconstruction of a p-adic number with |num|, den <= p^((N - 2)/2).
std::optional<mpq_class> recognize_rational(const PadicNumber& a);

}  // namespace chabauty
