#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "revzeta/errors.hpp"
#include "revzeta/numeric.hpp"

namespace revzeta::grp {

/// Element of G_{2r} = <a, b : ab = b a^{-1}, b^{2r} = 1> in the normal form
/// a^n b^k with n in Z and 0 <= k < 2r.
struct GroupElement {
  Int exp_a;
  int exp_b;
  int order_r;

  bool operator==(const GroupElement& o) const = default;
  std::string to_string() const;
};

GroupElement g_identity(int r);
GroupElement g_make(Int exp_a, long exp_b, int r);  // reduces exp_b mod 2r
/// (a^n b^k)(a^m b^j) = a^{n + (-1)^k m} b^{(k+j) mod 2r}
GroupElement g_mul(const GroupElement& x, const GroupElement& y);
GroupElement g_inv(const GroupElement& x);
GroupElement g_pow(const GroupElement& x, long e);

/// Order of b^i in G_{2r}: 2r / gcd(i, 2r) for 1 <= i < 2r, and 1 for i = 0
/// (the identity has order 1).
int order_of_b_power(int i, int r);

enum class Family { F1, F2 };

/// Canonical parameters of a finite-index subgroup of G_{2r}.
///   F1: <a^m b^{2l}, b^{2k}>   with m > 0, 0 <= l < k <= r, k | r; index 2km
///   F2: <a^m, a^j b^{2k-1}>    with m > 0, 0 <= j < m, (2k-1) | r; index (2k-1)m
/// The parameter ranges make descriptors unique, so the descriptor itself is
/// the subgroup's identity; generating sets are never compared.
struct SubgroupDescriptor {
  Family family;
  long m;
  long second;  // l for F1, j for F2
  long k;
  int r;

  long index() const;
  std::array<GroupElement, 2> generators() const;
  std::string text() const;  // e.g. "F1(m=3,l=0,k=1)@r=3"

  bool operator==(const SubgroupDescriptor& o) const = default;
};

/// Every finite-index subgroup with index <= index_max, exactly once.
/// Deterministic order: by index, then family, then parameters.
std::vector<SubgroupDescriptor> enumerate_subgroups(int r, long index_max);

/// Independent oracle: index of the subgroup generated by the given elements,
/// by breadth-first closure of right cosets. Returns nullopt ("exceeded") if
/// more than coset_bound cosets are generated.
std::optional<long> coset_enumeration_index(
    const std::vector<GroupElement>& generators, int r, std::size_t coset_bound);

/// Fixed-point conditions carried by a subgroup: a point is fixed by all of H
/// iff it is fixed by both generators.
struct FixedPointSpec {
  struct Condition {
    long t_power;        // T^{t_power} ...
    long reversal_power; // ... composed with R^{reversal_power}
  };
  std::vector<Condition> conditions;  // trivial conditions dropped
  /// For F2 subgroups the conditions force x in X_{2d} with d = 2k-1; 0 if no
  /// such hint applies.
  long flip_membership_hint = 0;
};

FixedPointSpec subgroup_fixed_spec(const SubgroupDescriptor& d);

/// Coset table of the right action of {a, a^-1, b, b^-1} on H\G, cosets
/// numbered in BFS discovery order from H itself. Equal tables <=> equal
/// subgroups, so this is the distinctness check for descriptors.
/// Throws BudgetError if the index exceeds the bound.
std::vector<std::array<int, 4>> canonical_coset_table(
    const std::vector<GroupElement>& generators, int r, std::size_t bound);

}  // namespace revzeta::grp
