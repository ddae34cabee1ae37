#include "revzeta/series.hpp"

#include <algorithm>

#include "revzeta/errors.hpp"

namespace revzeta::exact {

std::string TruncatedSeries::to_string(const std::string& var) const {
  std::string s;
  for (int i = 0; i <= order; ++i) {
    if (c[i] == 0) continue;
    Rat q = c[i];
    if (!s.empty()) {
      s += (q < 0) ? " - " : " + ";
      if (q < 0) q = -q;
    } else if (q < 0) {
      s += "-";
      q = -q;
    }
    if (i == 0) {
      s += rat_pretty(q);
    } else {
      if (q != 1) s += rat_pretty(q) + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  if (s.empty()) s = "0";
  return s + " + O(" + var + "^" + std::to_string(order + 1) + ")";
}

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order, b.order);
  TruncatedSeries r(n);
  for (int i = 0; i <= n; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

TruncatedSeries ts_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order, b.order);
  TruncatedSeries r(n);
  for (int i = 0; i <= n; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  int n = std::min(a.order, b.order);
  TruncatedSeries r(n);
  for (int i = 0; i <= n; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

TruncatedSeries ts_scale(const Rat& q, const TruncatedSeries& a) {
  TruncatedSeries r = a;
  for (Rat& x : r.c) x *= q;
  return r;
}

TruncatedSeries ts_substitute_power(const TruncatedSeries& a, int k) {
  if (k < 1) throw Error("substitution power must be >= 1");
  TruncatedSeries r(a.order);
  for (int i = 0; i <= a.order && i * k <= a.order; ++i) r.c[i * k] = a.c[i];
  return r;
}

TruncatedSeries ts_with_order(const TruncatedSeries& a, int n) {
  TruncatedSeries r(n);
  for (int i = 0; i <= std::min(n, a.order); ++i) r.c[i] = a.c[i];
  return r;
}

TruncatedSeries series_exp(const TruncatedSeries& s) {
  if (s.c[0] != 0)
    throw ValidationError("series_exp needs zero constant term, got c_0 = " +
                          rat_string(s.c[0]));
  int n = s.order;
  TruncatedSeries f(n);
  f.c[0] = 1;
  // f' = s' f, so k f_k = sum_{j=1..k} j s_j f_{k-j}.
  for (int k = 1; k <= n; ++k) {
    Rat acc(0);
    for (int j = 1; j <= k; ++j) {
      if (s.c[j] == 0) continue;
      acc += Rat(j) * s.c[j] * f.c[k - j];
    }
    f.c[k] = acc / Rat(k);
  }
  return f;
}

TruncatedSeries series_log(const TruncatedSeries& s) {
  if (s.c[0] != 1)
    throw ValidationError("series_log needs constant term 1, got c_0 = " +
                          rat_string(s.c[0]));
  int n = s.order;
  TruncatedSeries g(n);
  // s g' = s', so k g_k = k s_k - sum_{j=1..k-1} j g_j s_{k-j}.
  for (int k = 1; k <= n; ++k) {
    Rat acc = Rat(k) * s.c[k];
    for (int j = 1; j < k; ++j) {
      if (g.c[j] == 0 || s.c[k - j] == 0) continue;
      acc -= Rat(j) * g.c[j] * s.c[k - j];
    }
    g.c[k] = acc / Rat(k);
  }
  return g;
}

TruncatedSeries series_sqrt(const TruncatedSeries& s) {
  if (s.c[0] != 1)
    throw ValidationError("series_sqrt needs constant term 1, got c_0 = " +
                          rat_string(s.c[0]));
  int n = s.order;
  TruncatedSeries f(n);
  f.c[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rat acc = s.c[k];
    for (int j = 1; j < k; ++j) acc -= f.c[j] * f.c[k - j];
    f.c[k] = acc / Rat(2);
  }
  return f;
}

TruncatedSeries series_pow(const TruncatedSeries& s, const Rat& e) {
  return series_exp(ts_scale(e, series_log(s)));
}

TruncatedSeries expand_rational(const RationalFunction& f, int order) {
  if (f.den.empty() || f.den[0] == 0)
    throw ValidationError("expand_rational: denominator constant term is zero");
  TruncatedSeries r(order);
  Rat q0(f.den[0]);
  for (int m = 0; m <= order; ++m) {
    Rat acc(poly_coeff(f.num, m));
    for (int k = 1; k <= m && k < static_cast<int>(f.den.size()); ++k)
      acc -= Rat(f.den[k]) * r.c[m - k];
    r.c[m] = acc / q0;
  }
  return r;
}

}  // namespace revzeta::exact
