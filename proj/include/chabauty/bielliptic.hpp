#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "chabauty/exactfield.hpp"
#include "chabauty/hyperelliptic.hpp"
#include "chabauty/sympoly.hpp"

namespace chabauty {

/// y^2 = c3 x^6 + c2 x^4 + c1 x^2 + c0 with c0 != 0.
struct BiellipticModel {
  mpq_class c3, c2, c1, c0;

  static BiellipticModel from(const HyperellipticModel& model);
  HyperellipticModel model() const;
};

/// Constant-first coefficients of the two quotient cubics
///   C1: v^2 = c3 u^3 + c2 u^2 + c1 u + c0,   f1(x, y) = (x^2, y)
///   C2: v^2 = u^3 + c1 u^2 + c2 c0 u + c3 c0^2,   f2(x, y) = (c0/x^2, c0 y/x^3)
/// over any coefficient ring.
template <class R>
std::pair<std::array<R, 4>, std::array<R, 4>> quotient_coefficients(const R& c3, const R& c2, const R& c1, const R& c0,
                                                                   const R& one) {
  return {{c0, c1, c2, c3}, {c3 * c0 * c0, c2 * c0, c1, one}};
}

struct EllipticQuotient {
  int index = 1;
  HyperellipticModel curve;
  std::string map;
};

std::pair<EllipticQuotient, EllipticQuotient> quotient_curves(const BiellipticModel& model);

/// A point with coordinates in Q(sqrt(d)); at infinity `sign` picks the
/// branch y/x^3 -> sign*l where c3 = l^2.
struct QuadPoint {
  QuadElement x, y;
  bool infinity = false;
  int sign = 1;

  /// "(x,y)" with exactfield syntax for coordinates, or "inf", "inf-".
  static QuadPoint parse(const std::string& text, long d);
  std::string to_string() const;
  bool operator==(const QuadPoint& o) const;
};

/// Image under f1 (which = 1) or f2 (which = 2). f2 sends x = 0 to the point
/// at infinity of C2, reported through `infinity`.
RationalPoint push_point(const BiellipticModel& model, int which, const RationalPoint& pt);
QuadPoint push_point(const BiellipticModel& model, int which, const QuadPoint& pt);
LocalPoint push_point(const BiellipticModel& model, int which, const LocalPoint& pt);

bool on_curve(const HyperellipticModel& model, const QuadPoint& pt);

/// Symbolic identities, over the generic coefficients c3, c2, c1, c0:
///   v(f_i)^2 = C_i(u(f_i)) after y^2 -> g(x), and
///   f1^*(du/2v) = x dx/(2y) * 2,  f2^*(du/2v) = -2 dx/(2y).
struct PullbackIdentities {
  bool f1_on_curve = false, f2_on_curve = false;
  bool f1_differential = false, f2_differential = false;
  std::string c1_generic, c2_generic;
};
PullbackIdentities check_pullback_identities();

/// alpha = h / (degree * logval^2).
PadicNumber alpha_coefficient(const PadicNumber& h, const PadicNumber& logval, int degree);

struct PointCheck {
  QuadPoint point;
  bool on_curve = false;
};
std::vector<PointCheck> verify_points_over_field(const HyperellipticModel& model, long d,
                                                 const std::vector<std::string>& points);

}  // namespace chabauty
