#pragma once

#include <numeric>
#include <vector>

#include "revzeta/errors.hpp"

namespace revzeta {

inline std::vector<int> perm_identity(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(const std::vector<int>& p) {
  std::vector<bool> hit(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

inline std::vector<int> perm_compose(const std::vector<int>& f,
                                     const std::vector<int>& g) {
  // (f then g): x -> g[f[x]]
  std::vector<int> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
  return r;
}

inline std::vector<int> perm_inverse(const std::vector<int>& p) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

inline std::vector<int> perm_pow(const std::vector<int>& p, long k) {
  int n = static_cast<int>(p.size());
  std::vector<int> base = k < 0 ? perm_inverse(p) : p;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-k)
                          : static_cast<unsigned long>(k);
  std::vector<int> acc = perm_identity(n);
  while (e > 0) {
    if (e & 1) acc = perm_compose(acc, base);
    base = perm_compose(base, base);
    e >>= 1;
  }
  return acc;
}

inline long perm_order(const std::vector<int>& p) {
  long ord = 1;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

}  // namespace revzeta
