#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "revzeta/sft.hpp"
#include "revzeta/sofic.hpp"
#include "revzeta/system_io.hpp"

namespace testutil {

using revzeta::Int;
using revzeta::exact::IntMatrix;

using Rng = std::mt19937_64;

/// Random permutation with tau^{2r} = id: partition into cycles whose
/// lengths divide 2r.
inline std::vector<int> random_tau(Rng& rng, int n, int r) {
  std::vector<int> divisors;
  for (int d = 1; d <= 2 * r; ++d)
    if ((2 * r) % d == 0) divisors.push_back(d);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> tau(n, -1);
  int pos = 0;
  while (pos < n) {
    int remaining = n - pos;
    int len;
    do {
      len = divisors[std::uniform_int_distribution<int>(
          0, static_cast<int>(divisors.size()) - 1)(rng)];
    } while (len > remaining);
    for (int i = 0; i < len; ++i)
      tau[order[pos + i]] = order[pos + (i + 1) % len];
    pos += len;
  }
  return tau;
}

/// Random validated reversal SFT: random tau of order dividing 2r, then a
/// random zero-one matrix symmetrized to the transpose-image closure by
/// iterating A(a,b) &= A(tau(b), tau(a)) to a fixpoint.
inline revzeta::sft::ReversalSFT random_reversal_sft(Rng& rng, int max_symbols,
                                                     int r,
                                                     int density_percent = 55) {
  int n = std::uniform_int_distribution<int>(1, max_symbols)(rng);
  std::vector<int> tau = random_tau(rng, n, r);
  IntMatrix A(n, n);
  std::uniform_int_distribution<int> pct(0, 99);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) = pct(rng) < density_percent ? 1 : 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (A.at(i, j) == 1 && A.at(tau[j], tau[i]) == 0) {
          A.at(i, j) = 0;
          changed = true;
        }
  }
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "s" + std::to_string(i);
  return revzeta::sft::validate(names, A,
                                revzeta::exact::permutation_matrix(tau), r);
}

inline revzeta::sft::ReversalSFT paper6() {
  return revzeta::io::to_sft(revzeta::io::paper_example_6());
}

/// Golden mean vertex shift with the identity flip (J = I, r = 1).
inline revzeta::sft::ReversalSFT golden_mean_flip() {
  IntMatrix A = IntMatrix::from_rows({{1, 1}, {1, 0}});
  return revzeta::sft::validate({"a", "b"}, A, IntMatrix::identity(2), 1);
}

/// Full shift on n symbols with a given tau (defaults to identity).
inline revzeta::sft::ReversalSFT full_shift(int n, int r = 1,
                                            std::vector<int> tau = {}) {
  IntMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A.at(i, j) = 1;
  if (tau.empty()) tau = revzeta::perm_identity(n);
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
  return revzeta::sft::validate(names, A,
                                revzeta::exact::permutation_matrix(tau), r);
}

/// Standard 2-state presentation of the even shift, tau = id flip.
inline revzeta::sofic::LabeledPresentation even_shift() {
  revzeta::sofic::LabeledPresentation p;
  p.states = {"E", "O"};
  p.label_alphabet = {"0", "1"};
  p.edges = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}};
  p.tau = {0, 1};
  p.r = 1;
  return p;
}

/// Golden mean as a labeled presentation (no "11"), tau = id flip.
inline revzeta::sofic::LabeledPresentation golden_mean_sofic() {
  revzeta::sofic::LabeledPresentation p;
  p.states = {"q0", "q1"};
  p.label_alphabet = {"0", "1"};
  p.edges = {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}};
  p.tau = {0, 1};
  p.r = 1;
  return p;
}

/// A vertex SFT as an injectively labeled presentation: labels name the
/// source symbol, so label sequences are exactly the points of the SFT.
inline revzeta::sofic::LabeledPresentation vertex_shift_presentation(
    const revzeta::sft::ReversalSFT& sys) {
  revzeta::sofic::LabeledPresentation p;
  p.states = sys.alphabet;
  p.label_alphabet = sys.alphabet;
  for (int i = 0; i < sys.size(); ++i)
    for (int j = 0; j < sys.size(); ++j)
      if (sys.A.at(i, j) == 1) p.edges.push_back({i, j, i});
  p.tau = sys.tau;
  p.r = sys.r;
  return p;
}

/// Random labeled presentation whose language is tau-reversal-closed by
/// construction: the edge set is closed under (u, v, c) -> (v, u, tau(c)).
inline revzeta::sofic::LabeledPresentation random_tau_closed_presentation(
    Rng& rng, int max_states, int nlabels, int r, int density_percent = 35) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    int n = std::uniform_int_distribution<int>(1, max_states)(rng);
    revzeta::sofic::LabeledPresentation p;
    for (int i = 0; i < n; ++i) p.states.push_back("v" + std::to_string(i));
    for (int c = 0; c < nlabels; ++c)
      p.label_alphabet.push_back(std::string(1, static_cast<char>('a' + c)));
    p.tau = random_tau(rng, nlabels, r);
    p.r = r;
    std::set<std::tuple<int, int, int>> edges;
    std::uniform_int_distribution<int> pct(0, 99);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int c = 0; c < nlabels; ++c)
          if (pct(rng) < density_percent) edges.insert({u, v, c});
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto [u, v, c] : std::set(edges))
        if (edges.insert({v, u, p.tau[c]}).second) grew = true;
    }
    for (auto [u, v, c] : edges) p.edges.push_back({u, v, c});
    auto trimmed = revzeta::sofic::trim_essential_or_empty(p);
    if (trimmed.nstates() > 0) return trimmed;
  }
  throw revzeta::Error("could not sample a nonempty tau-closed presentation");
}

}  // namespace testutil
