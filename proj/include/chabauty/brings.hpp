#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chabauty/exactfield.hpp"

namespace chabauty {

/// A point of P^4 over Q(sqrt(d)), stored normalized so that the first
/// nonzero coordinate is 1.
class ProjPoint5 {
 public:
  explicit ProjPoint5(std::array<QuadElement, 5> coords);
  /// "(1:i:-1:-i:0)" with exactfield coordinate syntax.
  static ProjPoint5 parse(const std::string& text, long d);

  const std::array<QuadElement, 5>& coords() const { return c_; }
  long d() const { return c_[0].d(); }
  ProjPoint5 conj() const;
  ProjPoint5 permuted(const std::array<int, 5>& perm) const;  // new[k] = old[perm[k]]
  bool operator==(const ProjPoint5& o) const { return c_ == o.c_; }
  bool operator<(const ProjPoint5& o) const;
  std::string to_string() const;

 private:
  std::array<QuadElement, 5> c_;
};

/// x1 + ... + x5 = x1^2 + ... + x5^2 = x1^3 + ... + x5^3 = 0.
bool verify_brings(const ProjPoint5& pt);

/// E': x^3 + y^3 + 1 + x^2 y + y^2 x + x^2 + y^2 + xy + x + y = 0.
QuadElement eprime_equation(const QuadElement& x, const QuadElement& y);
/// E: y^2 + 5x^3 + 5x^2 + 4 = 0.
QuadElement e_equation(const QuadElement& x, const QuadElement& y);

/// Quotient by the involution swapping coordinates i and j (0-based): the
/// remaining three coordinates (a:b:c), in index order, dehomogenized to
/// (a/c, b/c). AtInfinity when c = 0.
std::pair<QuadElement, QuadElement> quotient_to_eprime(const ProjPoint5& pt, std::pair<int, int> swapped);

/// (x, y) -> (2/(1+2x+2y), 4(y-x)/(1+2x+2y)); MapsToInfinity when the
/// denominator vanishes.
std::pair<QuadElement, QuadElement> eprime_to_e(const QuadElement& x, const QuadElement& y);

/// Affine point of E or its identity.
struct EPoint {
  QuadElement x, y;
  bool infinity = false;
  bool operator==(const EPoint& o) const;
  std::string to_string() const;
};

EPoint e_add(const EPoint& P, const EPoint& Q);

/// Image of pt on E through the quotient by (i, j), computed projectively so
/// that points with c = 0 are handled.
EPoint bring_to_e(const ProjPoint5& pt, std::pair<int, int> swapped);

/// Image of the Galois-stable divisor pt + conj(pt): a point of E(Q).
EPoint trace_to_e(const ProjPoint5& pt, std::pair<int, int> swapped);

/// Tr y + 4 Nm y = Tr x + 4 Nm x.
bool trace_norm_constraint(const QuadElement& x, const QuadElement& y);

/// prod over sigma in S3 of f(x_s1/x_s3) - f(x_s2/x_s3), f(r) = Tr r + 4 Nm r.
QuadElement s3_product(const QuadElement& x1, const QuadElement& x2, const QuadElement& x3);
bool s3_product_constraint(const QuadElement& x1, const QuadElement& x2, const QuadElement& x3);

/// Distinct points in the orbit under coordinate permutations and conjugation.
std::vector<ProjPoint5> orbit(const ProjPoint5& pt);

/// Canonical orbit representative: scaled so a coordinate is 1 and
/// coordinates sorted by argument (zeros last), minimal over the orbit.
ProjPoint5 canonical_representative(const ProjPoint5& pt);

struct SearchOrbit {
  ProjPoint5 representative;
  std::vector<ProjPoint5> representatives;  // representative and its conjugate
  std::size_t orbit_size = 0;
};

struct SearchResult {
  long disc_bound = 0, height_bound = 0;
  std::vector<long> fields;  // the d searched; rationals are always included
  std::vector<SearchOrbit> orbits;
  long candidates = 0, filtered = 0;
};

/// Squarefree d != 1 whose field Q(sqrt(d)) has |discriminant| <= D.
std::vector<long> fields_with_discriminant_bound(long D);

/// Points (x1:x2:x3:x4:1) with x1, x2, x3, x4 = a + b sqrt(d), a and b
/// rationals of numerator and denominator at most H in absolute value.
/// Candidates are pruned by the S3-product constraints and verified exactly;
/// results are merged up to permutation and conjugation.
SearchResult bounded_quadratic_search(long D, long H);

}  // namespace chabauty
