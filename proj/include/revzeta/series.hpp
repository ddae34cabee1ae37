#pragma once

#include <string>
#include <vector>

#include "revzeta/numeric.hpp"
#include "revzeta/polynomial.hpp"

namespace revzeta::exact {

/// Exact rational power series truncated at an explicit order N.
/// Exactly N + 1 coefficients c_0..c_N, each reduced with positive
/// denominator (mpq_class maintains that). The order is always chosen by the
/// caller: truncation is the one approximation in this project and it stays
/// visible.
struct TruncatedSeries {
  int order = 0;
  std::vector<Rat> c;  // size order + 1

  TruncatedSeries() : c(1, Rat(0)) {}
  explicit TruncatedSeries(int n) : order(n), c(n + 1, Rat(0)) {}

  static TruncatedSeries zero(int n) { return TruncatedSeries(n); }
  static TruncatedSeries one(int n) {
    TruncatedSeries s(n);
    s.c[0] = 1;
    return s;
  }

  bool operator==(const TruncatedSeries& o) const = default;
  std::string to_string(const std::string& var = "t") const;
};

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_scale(const Rat& q, const TruncatedSeries& a);
/// s(t^k), truncated at the original order.
TruncatedSeries ts_substitute_power(const TruncatedSeries& a, int k);
/// Truncate (or zero-pad) to order n.
TruncatedSeries ts_with_order(const TruncatedSeries& a, int n);

/// exp of a series with zero constant term.
TruncatedSeries series_exp(const TruncatedSeries& s);
/// log of a series with constant term 1.
TruncatedSeries series_log(const TruncatedSeries& s);
/// square root with constant term 1; sqrt(s)^2 = s to order N.
TruncatedSeries series_sqrt(const TruncatedSeries& s);
/// s^e for rational e, constant term of s must be 1.
TruncatedSeries series_pow(const TruncatedSeries& s, const Rat& e);

/// Power-series expansion of a rational function at t = 0, to order N.
TruncatedSeries expand_rational(const RationalFunction& f, int order);

}  // namespace revzeta::exact
