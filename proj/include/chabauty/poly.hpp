#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "chabauty/padic.hpp"

namespace chabauty {

/// Polynomial with rational coefficients, constant term first. Kept trimmed
/// (no trailing zeros) by every function returning one; the zero polynomial
/// is the empty vector.
using RatPoly = std::vector<mpq_class>;

void poly_trim(RatPoly& f);
long poly_degree(const RatPoly& f);  // -1 for zero
mpq_class poly_lead(const RatPoly& f);

RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_scale(const RatPoly& a, const mpq_class& c);
RatPoly poly_derivative(const RatPoly& f);
/// f(c*x + s).
RatPoly poly_affine_substitute(const RatPoly& f, const mpq_class& c, const mpq_class& s);

void poly_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly poly_mod(const RatPoly& a, const RatPoly& b);
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);  // monic
/// s with s*a = 1 modulo b, for coprime a, b.
RatPoly poly_inverse_mod(const RatPoly& a, const RatPoly& b);

mpq_class poly_eval(const RatPoly& f, const mpq_class& x);
PadicNumber poly_eval(const RatPoly& f, const PadicNumber& x);

mpq_class poly_resultant(const RatPoly& a, const RatPoly& b);
mpq_class poly_discriminant(const RatPoly& f);

/// Rational roots by the rational root test (f with rational coefficients).
std::vector<mpq_class> poly_rational_roots(const RatPoly& f);

/// Human-readable rendering in the variable `var`, highest degree first.
std::string poly_to_string(const RatPoly& f, const std::string& var = "x");

}  // namespace chabauty
