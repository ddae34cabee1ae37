#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace revzeta {

// All arithmetic in this project is exact. Int and Rat are the only numeric
// scalar types; no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;

/// Canonical "p/q" form, q > 0, gcd(p, q) = 1. Integers render as "p/1".
inline std::string rat_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// "p" for integers, "p/q" otherwise. For human-readable tables.
inline std::string rat_pretty(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return rat_string(q);
}

/// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0 || s.empty())
    throw std::invalid_argument("not a rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace revzeta
