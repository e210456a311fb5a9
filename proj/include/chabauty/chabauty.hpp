#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chabauty/coleman.hpp"

namespace chabauty {

/// Rank and free generators of the Jacobian's Mordell-Weil group, supplied
/// from outside. Generators are degree-zero divisors of rational points.
struct MordellWeilInput {
  int rank = 0;
  std::vector<std::vector<std::pair<long, RationalPoint>>> generators;
  std::optional<long> torsion_order;
};

/// #X(F_p) + 2g - 2; BoundInapplicable unless p > 2g.
long coleman_bound(const HyperellipticModel& model, long p);

struct Annihilator {
  /// Basis of the holomorphic differentials killing every generator, each
  /// normalized so that its first nonzero coefficient is 1.
  std::vector<Differential> differentials;
  /// Rank zero: every holomorphic differential annihilates.
  bool full_space = false;
  /// pairings[j][i] = <D_j, x^i dx/(2y)>.
  std::vector<std::vector<PadicNumber>> pairings;
};

Annihilator annihilating_differentials(const ColemanIntegrator& ci, const MordellWeilInput& mw);
Differential annihilating_differential(const HyperellipticModel& model, long p, long N, const MordellWeilInput& mw);

struct DiskLocus {
  ResidueDisk disk;
  LocalPoint center;
  /// I(p T) = int_b^{center} omega + int_{center}^{P(pT)} omega, P(t) the
  /// disk's local parametrization.
  TruncatedSeries series{3, {}, 0};
  long strassman = 0;
  std::vector<PadicNumber> zeros;  // values of T
  std::vector<ZeroCluster> clusters;
  std::vector<LocalPoint> points;
};

/// M = 0 picks the number of series terms from the working precision.
DiskLocus disk_locus(const ColemanIntegrator& ci, const ResidueDisk& disk, const Differential& omega,
                     const LocalPoint& basepoint, long M = 0);

enum class PointKind { Rational, Algebraic, Unrecognized };
std::string_view to_string(PointKind kind);

struct RecognizedPoint {
  PointKind kind = PointKind::Unrecognized;
  ResidueDisk disk;
  LocalPoint local;
  std::optional<RationalPoint> rational;
  /// Algebraic points found here have rational x and y^2 = y_squared.
  std::optional<mpq_class> x, y_squared;
  std::string minimal_polynomial;
  std::string to_string() const;
};

/// Largest |numerator| or denominator allowed in a minimal polynomial.
inline const mpz_class kAlgebraicHeightBound = 1000000;

RecognizedPoint recognize_point(const HyperellipticModel& model, const ResidueDisk& disk, const LocalPoint& pt);

struct DiskReport {
  DiskLocus locus;
  std::optional<std::string> error;
};

struct ChabautyReport {
  HyperellipticModel model;
  long prime = 0, precision = 0, terms = 0;
  MordellWeilInput mw;
  RationalPoint basepoint;
  Annihilator annihilator;
  std::optional<long> bound;
  std::string bound_note;
  std::vector<DiskReport> disks;
  std::vector<RecognizedPoint> points;
  bool partial = false;
  long total_zeros = 0;
  /// Closure of the rational set under the involutions defined over Q.
  bool involution_closed = true;
  double seconds = 0;

  std::vector<RationalPoint> rational_points() const;
  std::vector<RecognizedPoint> algebraic_points() const;
};

/// Disks are processed in parallel (CHABAUTY_THREADS, default the hardware
/// concurrency); the report is sorted by disk.
ChabautyReport run(const HyperellipticModel& model, long p, const MordellWeilInput& mw, const RationalPoint& basepoint,
                   long N, long M = 0);

}  // namespace chabauty
