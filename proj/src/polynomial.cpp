#include "revzeta/polynomial.hpp"

#include <algorithm>

namespace revzeta::exact {

IntPoly poly_trim(IntPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(std::move(r));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(std::move(r));
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

IntPoly poly_neg(IntPoly a) {
  for (Int& c : a) c = -c;
  return a;
}

IntPoly poly_scale(const Int& c, const IntPoly& a) {
  if (c == 0) return {};
  IntPoly r = a;
  for (Int& x : r) x *= c;
  return r;
}

IntPoly poly_substitute_power(const IntPoly& a, int k) {
  if (a.empty()) return {};
  IntPoly r(1 + (a.size() - 1) * k, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i * k] = a[i];
  return poly_trim(std::move(r));
}

int poly_degree(const IntPoly& a) { return static_cast<int>(a.size()) - 1; }

Int poly_coeff(const IntPoly& a, int k) {
  if (k < 0 || k >= static_cast<int>(a.size())) return Int(0);
  return a[k];
}

Int poly_content(const IntPoly& a) {
  Int g = 0;
  for (const Int& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

bool poly_is_zero(const IntPoly& a) { return a.empty(); }

std::string poly_string(const IntPoly& a, const std::string& var) {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Int c = a[i];
    if (!s.empty()) {
      s += (c < 0) ? " - " : " + ";
      if (c < 0) c = -c;
    } else if (c < 0) {
      s += "-";
      c = -c;
    }
    if (i == 0) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

// Berkowitz: extends the characteristic polynomial of each leading principal
// submatrix via a Toeplitz product. No division; exact over the integers.
IntPoly char_poly(const IntMatrix& A) {
  if (!A.is_square())
    throw DimensionError("char_poly of non-square " + A.shape_string());
  int n = A.rows();
  if (n == 0) return {Int(1)};
  // Coefficients highest degree first during the iteration.
  std::vector<Int> c = {Int(1), -A.at(0, 0)};
  for (int i = 1; i < n; ++i) {
    // col = [1, -A(i,i), -R C, -R M C, ..., -R M^{i-1} C]
    // with R = A(i, 0..i-1), C = A(0..i-1, i), M the leading i x i block.
    std::vector<Int> col(i + 2, Int(0));
    col[0] = 1;
    col[1] = -A.at(i, i);
    std::vector<Int> w(i);
    for (int j = 0; j < i; ++j) w[j] = A.at(j, i);
    for (int k = 1; k <= i; ++k) {
      Int q = 0;
      for (int j = 0; j < i; ++j) q += A.at(i, j) * w[j];
      col[k + 1] = -q;
      if (k < i) {
        std::vector<Int> w2(i, Int(0));
        for (int a = 0; a < i; ++a) {
          for (int b = 0; b < i; ++b) {
            if (A.at(a, b) != 0) w2[a] += A.at(a, b) * w[b];
          }
        }
        w = std::move(w2);
      }
    }
    std::vector<Int> next(i + 2, Int(0));
    for (int j = 0; j <= i + 1; ++j)
      for (int k = 0; k <= j && k <= i + 1; ++k)
        if (j - k <= i) next[j] += col[k] * c[j - k];
    c = std::move(next);
  }
  // Reverse into lowest-degree-first order.
  std::reverse(c.begin(), c.end());
  return c;
}

IntPoly reciprocal_char_poly(const IntMatrix& A) {
  IntPoly p = char_poly(A);
  // char poly lowest-first [a_0 .. a_{n-1}, 1]; det(I - tA) = 1 + a_{n-1} t
  // + ... + a_0 t^n, i.e. the same list read highest-to-lowest.
  std::reverse(p.begin(), p.end());
  return poly_trim(std::move(p));
}

std::vector<IntMatrix> resolvent_adjugate(const IntMatrix& A) {
  if (!A.is_square())
    throw DimensionError("adjugate chain of non-square " + A.shape_string());
  int n = A.rows();
  if (n == 0) return {};
  IntPoly p = char_poly(A);  // p[k] = coefficient of lambda^k
  std::vector<IntMatrix> B(n);
  B[0] = IntMatrix::identity(n);
  for (int j = 1; j < n; ++j) {
    B[j] = A * B[j - 1];
    const Int& c = p[n - j];
    for (int i = 0; i < n; ++i) B[j].at(i, i) += c;
  }
  return B;
}

RationalFunction::RationalFunction(IntPoly n, IntPoly d)
    : num(poly_trim(std::move(n))), den(poly_trim(std::move(d))) {
  if (den.empty() || den[0] == 0)
    throw ValidationError(
        "rational function denominator has zero constant term");
  if (num.empty()) {
    den = {Int(1)};
    return;
  }
  Int g;
  Int cn = poly_content(num), cd = poly_content(den);
  mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (den[0] < 0) g = -g;
  if (g != 1) {
    for (Int& c : num) c /= g;
    for (Int& c : den) c /= g;
  }
}

std::string RationalFunction::to_string(const std::string& var) const {
  std::string n = poly_string(num, var);
  if (den.size() == 1 && den[0] == 1) return n;
  return "(" + n + ")/(" + poly_string(den, var) + ")";
}

RationalFunction rf_add(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(
      poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
      poly_mul(a.den, b.den));
}

RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

RationalFunction rf_scale(const Rat& c, const RationalFunction& a) {
  return RationalFunction(poly_scale(c.get_num(), a.num),
                          poly_scale(c.get_den(), a.den));
}

RationalFunction rf_substitute_power(const RationalFunction& a, int k) {
  return RationalFunction(poly_substitute_power(a.num, k),
                          poly_substitute_power(a.den, k));
}

bool rf_equivalent(const RationalFunction& a, const RationalFunction& b) {
  return poly_mul(a.num, b.den) == poly_mul(b.num, a.den);
}

}  // namespace revzeta::exact
