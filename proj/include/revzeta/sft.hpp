#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "revzeta/errors.hpp"
#include "revzeta/matrix.hpp"
#include "revzeta/perm.hpp"

namespace revzeta::sft {

using exact::IntMatrix;

/// Shift-reversal system of finite type in matrix form: zero-one matrices
/// (A, J) with A J = J A^T and J^{2r} = I. Immutable after validation.
struct ReversalSFT {
  std::vector<std::string> alphabet;
  IntMatrix A;
  IntMatrix J;
  int r = 1;             // reversal order 2r
  std::vector<int> tau;  // symbol permutation: J(a, tau[a]) = 1

  int size() const { return static_cast<int>(alphabet.size()); }
  bool empty() const { return alphabet.empty(); }
};

/// Checks all invariants (zero-one entries, J a permutation, J^{2r} = I,
/// A J = J A^T), extracts the symbol map, and returns the validated system.
/// Each violation raises a distinct error naming the first offending cell.
ReversalSFT validate(std::vector<std::string> alphabet, IntMatrix A,
                     IntMatrix J, int r);

/// Smallest k >= 1 with tau^{2k} = id; the true reversal half-order carried
/// by a symbol permutation.
int half_order_of(const std::vector<int>& tau);

/// tr(A^m J^{2l}) = number of points fixed by sigma^m phi^{2l}.
Int fixed_count_trace(const ReversalSFT& sys, long m, int l);

/// Window-enumeration count of the same quantity, independent of all matrix
/// identities: extends each window of length m by x_{m+i} = tau^{-2l}(x_i) to
/// a full period and checks every adjacency of the extension.
Int fixed_count_bruteforce(const ReversalSFT& sys, long m, int l,
                           WorkBudget& budget);

/// Brute-force count with an arbitrary even-power twist permutation
/// (twist = tau^{2l} precomputed by the caller). Used by the direct zeta
/// evaluation on restricted subsystems.
Int fixed_count_bruteforce_twist(const IntMatrix& A,
                                 const std::vector<int>& twist, long m,
                                 WorkBudget& budget);

/// Restriction to the alphabet fixed by tau^{2l} (the subsystem of points
/// fixed by phi^{2l}); 1 <= l <= r. The restricted order is recomputed from
/// the restricted symbol map, never inherited. An empty restriction is a
/// legitimate 0x0 system.
ReversalSFT restrict_fixed_subsystem(const ReversalSFT& sys, int l);

/// Sub-flip system (X_{2d}, sigma, phi^d) for odd d: the base is the
/// restriction to symbols fixed by tau^{2d} and the flip symbol map is tau^d,
/// an involution there.
struct FlipView {
  ReversalSFT base;
  std::vector<int> flip;
};

FlipView make_flip_view(const ReversalSFT& sys, int d);

/// The three flip fixed-point counts (p(2m-1,0), p(2m,0), p(2m,1)) through
/// the S[.] / diagonal-part trace formulas.
std::array<Int, 3> flip_counts_trace(const FlipView& fv, long m);

/// p(n, e) = #{x : sigma^n x = x, sigma^e phi x = x} by cyclic window
/// enumeration with the mirror condition x_i = flip(x_{-i-e mod n}).
Int flip_count_bruteforce(const FlipView& fv, long n, long e,
                          WorkBudget& budget);

/// #{x : sigma^m x = x and sigma^j phi^d x = x} for odd d, by window
/// enumeration with both constraints. Evaluates the two-generator subgroup
/// conditions on the direct side of the zeta computation.
Int mixed_fixed_count_bruteforce(const ReversalSFT& sys, long m, long j, int d,
                                 WorkBudget& budget);

/// A plain vertex SFT, input to the recoding pipeline.
struct SftPresentation {
  std::vector<std::string> alphabet;
  IntMatrix adj;
};

/// Sliding-block reversal prior to one-block recoding:
/// phi(x)_i = map(x_{-i-c} .. x_{-i+c}) with c = (window-1)/2, of claimed
/// order 2r. window must be odd.
struct LocalReversalRule {
  int window = 1;
  int order_r = 1;
  std::function<int(const std::vector<int>&)> map;
};

struct RecodedSystem {
  ReversalSFT sys;
  int block_length;  // n, odd
  int shift_power;   // (n-1)/2; the recoding composes with sigma^{shift_power}
  std::vector<std::vector<int>> tuples;       // tuple alphabet over input symbols
  std::vector<std::vector<int>> state_words;  // per state: n tuple indices
};

/// Prop-4.1-style recoding to a one-block matrix pair: builds the tuple
/// alphabet (phi^k(x)_0)_k, passes to the higher-block length
/// n = (2r-1)(window-1)+1, and assembles (A, J) from overlaps and the
/// reversed-tuple rule. All fixed-point counts are preserved.
RecodedSystem one_block_recode(const SftPresentation& X,
                               const LocalReversalRule& rule,
                               WorkBudget& budget);

/// Oracle for recoding invariance: #{x : sigma^m phi^{2l} x = x} evaluated
/// directly on the input presentation by cyclic-word enumeration and cyclic
/// application of the rule.
Int rule_fixed_count_bruteforce(const SftPresentation& X,
                                const LocalReversalRule& rule, long m, int l,
                                WorkBudget& budget);

}  // namespace revzeta::sft
