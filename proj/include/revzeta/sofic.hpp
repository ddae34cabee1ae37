#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "revzeta/errors.hpp"
#include "revzeta/matrix.hpp"
#include "revzeta/perm.hpp"

namespace revzeta::sofic {

using exact::IntMatrix;

struct LabeledEdge {
  int from, to, label;
  bool operator==(const LabeledEdge&) const = default;
  auto operator<=>(const LabeledEdge&) const = default;
};

/// Labeled graph presentation of a sofic shift with a one-block reversal
/// given by the symbol involution-of-order-2r tau on the label alphabet.
struct LabeledPresentation {
  std::vector<std::string> states;
  std::vector<std::string> label_alphabet;
  std::vector<LabeledEdge> edges;
  std::vector<int> tau;  // permutation of labels, tau^{2r} = id
  int r = 1;

  int nstates() const { return static_cast<int>(states.size()); }
  int nlabels() const { return static_cast<int>(label_alphabet.size()); }
};

/// Structural checks: indices in range, tau a permutation with tau^{2r} = id,
/// at most 64 states. Throws ValidationError.
void validate_presentation(const LabeledPresentation& p);

/// Iteratively removes states with no incoming or no outgoing edge.
/// Throws ValidationError("presents the empty shift") when nothing is left.
LabeledPresentation trim_essential(const LabeledPresentation& p);
/// Same, but a 0-state result is returned rather than thrown.
LabeledPresentation trim_essential_or_empty(const LabeledPresentation& p);

LabeledPresentation reverse_presentation(const LabeledPresentation& p);
/// Keep only edges whose label satisfies keep; states unchanged until trim.
LabeledPresentation restrict_labels(const LabeledPresentation& p,
                                    const std::vector<char>& keep);
LabeledPresentation with_tau(const LabeledPresentation& p,
                             std::vector<int> tau, int r);

/// Probe: every realizable word w of length <= probe_len has a realizable
/// tau-reversed image. Exact closure is guaranteed for presentations built
/// by edge-orbit symmetrization or by the chain construction itself.
bool check_tau_closure(const LabeledPresentation& p, int probe_len,
                       WorkBudget& budget, std::string* witness = nullptr);

/// State subsets as bitmasks (presentations are capped at 64 states).
using Subset = std::uint64_t;

/// Futures as saturation-canonical state subsets, via transition-monoid
/// idempotents: the attainable stabilized subsets are exactly All * e * m
/// for e idempotent (with a nonempty representative word) and m arbitrary.
std::vector<Subset> compute_futures(const LabeledPresentation& p,
                                    WorkBudget& budget);
/// Pasts: the same computation on the edge-reversed presentation.
std::vector<Subset> compute_pasts(const LabeledPresentation& p,
                                  WorkBudget& budget);
/// Second route for cross-checking: subsets All * M with a pumping witness
/// P * M = M, P a nonempty-word relation.
std::vector<Subset> compute_futures_stabilization(const LabeledPresentation& p,
                                                  WorkBudget& budget);

struct JointState {
  Subset future;
  int label;
  Subset past;
  bool operator==(const JointState&) const = default;
};

struct PropertyCertificate {
  bool p1_ok = false, p2_ok = false, p3_ok = false;
  std::string p1_witness, p2_witness, p3_witness;
  bool ok() const { return p1_ok && p2_ok && p3_ok; }
  std::string summary() const;
};

/// Krieger joint state chain of a presentation: alphabet of joint states
/// (F, a, P), overlap matrix A, reversal matrix J from the tau-infinity maps,
/// labeling L(F, a, P) = a.
struct JointStateChain {
  std::vector<JointState> symbols;
  IntMatrix A, J;
  std::vector<int> labels;     // chain symbol -> presentation label
  std::vector<int> tau_labels; // tau on presentation labels
  std::vector<int> tau_J;      // chain symbol permutation extracted from J
  int r = 1;
  PropertyCertificate certificate;

  int size() const { return static_cast<int>(symbols.size()); }
};

/// Builds the chain and re-checks (P1)-(P3); a failed check throws
/// ConsistencyError carrying the witness (the construction is supposed to
/// always produce a valid chain).
JointStateChain build_joint_state_chain(const LabeledPresentation& p,
                                        WorkBudget& budget);

/// (P1) A J = J A^T and J^{2r} = I, (P2) the labeling intertwines the symbol
/// maps, (P3) no graph diamonds (pair-graph search with witness blocks).
PropertyCertificate check_properties(const IntMatrix& A, const IntMatrix& J,
                                     const std::vector<int>& labels,
                                     const std::vector<int>& tau_labels, int r);

/// Signed matrices over k-element single-label subsets. Entries are
/// determinants of the corresponding submatrices: A_k(S1, S2) is the signed
/// count of adjacency-compatible bijections S1 -> S2, J_k the sign of tau_J
/// restricted to S1. Signs are inversion counts against the fixed symbol
/// order (the chain's own ordering).
struct SignedSubsetMatrices {
  int k = 1;
  std::vector<std::vector<int>> index_set;  // sorted subsets, ordered by (label, lex)
  IntMatrix A_k, J_k;
};

SignedSubsetMatrices build_signed_matrices(const IntMatrix& A,
                                           const IntMatrix& J,
                                           const std::vector<int>& labels,
                                           int k);

/// All levels k = 1 .. max single-label multiplicity.
std::vector<SignedSubsetMatrices> build_signed_family(const JointStateChain& chain);

/// sum_k (-1)^{k+1} tr(A_k^m J_k^{2l}); a negative total aborts with a full
/// dump, because it would mean the inclusion-exclusion is broken.
Int fixed_count_theoremC(const JointStateChain& chain, long m, int l);
Int fixed_count_theoremC(const std::vector<SignedSubsetMatrices>& family,
                         long m, int l);

/// Word-enumeration oracle: realizable words w of length m whose extension
/// w, tau^{-2l}(w), tau^{-4l}(w), ... admits a periodic run (the relation of
/// the full period has a cycle). Independent of the chain and its matrices.
Int sofic_fixed_count_bruteforce(const LabeledPresentation& p, long m, int l,
                                 WorkBudget& budget);

/// Flip fixed-point counts via the alternating entry-sum formulas on a chain
/// built with an involutive tau (r = 1 view).
std::array<Int, 3> flip_counts_sofic(const JointStateChain& chain, long m);
std::array<Int, 3> flip_counts_sofic(const std::vector<SignedSubsetMatrices>& family,
                                     long m);

/// Counts label words of length n with the mirror condition
/// w_i = g(w_{(-i-e) mod n}) that are realizable as periodic points.
/// Covers the flip oracle (g the flip map) and the two-generator subgroup
/// oracle (g = tau^d).
Int sofic_mirror_count_bruteforce(const LabeledPresentation& p,
                                  const std::vector<int>& g, long n, long e,
                                  WorkBudget& budget);

}  // namespace revzeta::sofic
