#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chabauty/frobenius.hpp"
#include "chabauty/hyperelliptic.hpp"

namespace chabauty {

/// Precision given to the unit coefficients of basis differentials.
inline constexpr long kCoefficientPrecision = 256;

/// sum c_i x^i dx/(2y), i < 2g. Holomorphic when only i < g is used.
struct Differential {
  std::vector<PadicNumber> coefficients;

  static Differential basis(long p, int genus, int index);
  bool holomorphic(int genus) const;
  std::string to_string() const;
};

enum class Provenance { Tiny, Frobenius, Pushforward };
std::string_view to_string(Provenance p);

struct IntegralValue {
  PadicNumber value;
  LocalPoint from, to;
  int basis_index = 0;
  Provenance provenance = Provenance::Tiny;
};

/// Degree-zero divisor sum n_k P_k.
struct Divisor {
  std::vector<std::pair<long, LocalPoint>> terms;
  long degree() const;
};

/// Coleman integration of the basis x^i dx/(2y) on a fixed model at a fixed
/// prime. Construction computes the Frobenius data once; afterwards the
/// object is read-only and may be shared between threads.
///
/// Routes: odd models (and genus 1 quartics with a rational root) go through
/// the Frobenius system on their monic odd model; bielliptic even sextics
/// through logarithms on the two elliptic quotients. Genus 1 quartics and
/// bielliptic sextics only support the holomorphic differentials.
class ColemanIntegrator {
 public:
  ColemanIntegrator(const HyperellipticModel& model, long p, long N);
  ~ColemanIntegrator();
  ColemanIntegrator(ColemanIntegrator&&) noexcept;
  ColemanIntegrator& operator=(ColemanIntegrator&&) noexcept;

  const HyperellipticModel& model() const;
  long prime() const;
  long precision() const;
  /// Precision used internally (N plus guard digits).
  long working_precision() const;
  int genus() const { return model().genus(); }
  /// Number of basis differentials whose integrals are available.
  int supported_differentials() const;
  Provenance route() const;

  /// Integrals within one residue disk, any disk kind. At infinity only
  /// the holomorphic differentials are returned.
  std::vector<IntegralValue> tiny(const LocalPoint& P, const LocalPoint& Q) const;

  /// Integrals between ordinary points (UnsupportedDisk otherwise).
  std::vector<IntegralValue> basis_integrals(const LocalPoint& P, const LocalPoint& Q) const;

  /// Like basis_integrals but accepting endpoints in Weierstrass and
  /// infinite disks; when such an endpoint is infinite only holomorphic
  /// differentials are returned.
  std::vector<PadicNumber> integrals(const LocalPoint& P, const LocalPoint& Q) const;

  /// sum_k n_k sum_i c_i int_b^{P_k} omega_i, b the first support point
  /// unless given.
  PadicNumber pairing(const Divisor& D, const Differential& omega,
                      const std::optional<LocalPoint>& auxiliary = std::nullopt) const;

  /// Genus 1 only: integral of dx/(2y) from the point sent to infinity of
  /// the odd model (infinity itself for cubics) to Q.
  PadicNumber elliptic_log(const LocalPoint& Q) const;

  /// Lift of a rational point at the working precision.
  LocalPoint lift(const RationalPoint& pt) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

IntegralValue tiny_integral(const Differential& omega, const LocalPoint& P, const LocalPoint& Q,
                            const HyperellipticModel& model, long p, long N, long M);
std::vector<IntegralValue> basis_integrals(const RationalPoint& P, const RationalPoint& Q,
                                           const HyperellipticModel& model, long p, long N);
PadicNumber divisor_pairing(const std::vector<std::pair<long, RationalPoint>>& D, const Differential& omega,
                            const HyperellipticModel& model, long p, long N);
PadicNumber elliptic_log(const HyperellipticModel& E, const RationalPoint& Q, long p, long N);

/// Solves A v = b over Q_p by elimination with minimal-valuation pivots.
std::vector<PadicNumber> padic_solve(std::vector<std::vector<PadicNumber>> A, std::vector<PadicNumber> b);

}  // namespace chabauty
