#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chabauty/hyperelliptic.hpp"

namespace chabauty {

/// A polynomial with p-adic coefficients, constant term first.
using PadicPoly = std::vector<PadicNumber>;

/// A genus 1 model rewritten as V^2 = U^3 + ... (monic cubic) by an explicit
/// change of coordinates, or an odd model of genus 2 made monic.
///
///   Affine:  U = a x + b,   V = c y
///   Quartic: U = b1/(x - r), V = b1 y/(x - r)^2   (r a rational root of g)
///
/// The differentials transform as omega_i(source) = sum_j T[i][j]
/// omega_j(target); for quartic sources only omega_0 is tracked.
struct OddModelChange {
  enum class Kind { Affine, Quartic };
  HyperellipticModel source;
  HyperellipticModel target;
  Kind kind = Kind::Affine;
  mpq_class a = 1, b = 0, c = 1;  // affine
  mpq_class r = 0, b1 = 1;        // quartic
  std::vector<std::vector<mpq_class>> omega;

  std::string description() const;

  /// Image of a point; quartic sources send x = r to infinity.
  RationalPoint map(const RationalPoint& pt) const;
  LocalPoint map(const LocalPoint& pt) const;
};

/// Throws NormalizationUnavailable when no rational normalization exists
/// (quartic without rational root) or the input is not genus 1 or an odd
/// quintic.
OddModelChange to_odd_model(const HyperellipticModel& model);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, completed to
/// (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 and made monic.
struct WeierstrassCoefficients {
  mpq_class a1, a2, a3, a4, a6;
};
OddModelChange to_odd_model(const WeierstrassCoefficients& w);
HyperellipticModel completed_square_model(const WeierstrassCoefficients& w);
mpq_class j_invariant(const WeierstrassCoefficients& w);

/// Matrix of Frobenius on the basis omega_i = x^i dx/(2y), i < 2g, of a monic
/// odd model with good reduction:
///   phi^* omega_i = sum_j matrix[i][j] omega_j + d f_i
/// where phi lifts x -> x^p. `exact[i]` is f_i as a map from a power e of y
/// to a polynomial in x: f_i = sum_e exact[i][e](x) y^e.
struct FrobeniusData {
  long p = 0;
  int genus = 0;
  std::vector<std::vector<PadicNumber>> matrix;
  std::vector<std::map<long, PadicPoly>> exact;
  long precision = 0;        // certified absolute precision of the entries
  long working_precision = 0;
  long terms = 0;            // number of terms of the expansion of 1/phi(y)
  std::string basis = "x^i dx/(2y)";

  /// f_i at an affine point with unit y.
  PadicNumber exact_part(int i, const LocalPoint& pt) const;
};

FrobeniusData frobenius_matrix(const HyperellipticModel& odd_model, long p, long N);

/// Characteristic polynomial of Frobenius rounded to integers, constant
/// term first, degree 2g, monic.
std::vector<mpz_class> zeta_numerator(const FrobeniusData& fdata);

/// p^k + 1 - (sum of k-th powers of the roots of the zeta numerator).
mpz_class lefschetz_count(const std::vector<mpz_class>& charpoly, long p, int k);

}  // namespace chabauty
