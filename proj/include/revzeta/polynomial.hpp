#pragma once

#include <string>
#include <vector>

#include "revzeta/matrix.hpp"
#include "revzeta/numeric.hpp"

namespace revzeta::exact {

/// Integer polynomial, coefficients lowest degree first.
/// Normal form: no trailing zero; the zero polynomial is the empty vector.
using IntPoly = std::vector<Int>;

IntPoly poly_trim(IntPoly p);
IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_neg(IntPoly a);
IntPoly poly_scale(const Int& c, const IntPoly& a);
/// p(t^k)
IntPoly poly_substitute_power(const IntPoly& a, int k);
int poly_degree(const IntPoly& a);  // -1 for the zero polynomial
Int poly_coeff(const IntPoly& a, int k);
Int poly_content(const IntPoly& a);  // gcd of coefficients, 0 for zero poly
bool poly_is_zero(const IntPoly& a);
std::string poly_string(const IntPoly& a, const std::string& var = "t");

/// Characteristic polynomial det(lambda I - A) by the division-free Berkowitz
/// algorithm. Coefficients lowest degree first; leading coefficient 1.
IntPoly char_poly(const IntMatrix& A);

/// det(I - tA), i.e. the reversed characteristic polynomial. Constant term 1.
IntPoly reciprocal_char_poly(const IntMatrix& A);

/// Matrices B_0..B_{n-1} with adj(I - tA) = sum_j B_j t^j.
/// Built from the char poly by the Horner chain B_0 = I,
/// B_j = A B_{j-1} + c_{n-j} I; division-free.
std::vector<IntMatrix> resolvent_adjugate(const IntMatrix& A);

/// Ratio of integer polynomials with den(0) != 0, so a power-series expansion
/// at t = 0 exists. Canonical form: joint content 1, den(0) > 0.
struct RationalFunction {
  IntPoly num;  // zero polynomial allowed
  IntPoly den;  // never zero; den(0) != 0

  RationalFunction() : num{}, den{Int(1)} {}
  RationalFunction(IntPoly n, IntPoly d);

  static RationalFunction zero() { return RationalFunction(); }
  static RationalFunction one() { return RationalFunction({Int(1)}, {Int(1)}); }

  std::string to_string(const std::string& var = "t") const;
};

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b);
RationalFunction rf_scale(const Rat& c, const RationalFunction& a);
/// f(t^k)
RationalFunction rf_substitute_power(const RationalFunction& a, int k);
/// Equality as functions: cross-multiplication, no polynomial gcd needed.
bool rf_equivalent(const RationalFunction& a, const RationalFunction& b);

}  // namespace revzeta::exact
