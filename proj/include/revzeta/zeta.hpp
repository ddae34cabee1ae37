#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "revzeta/series.hpp"
#include "revzeta/sft.hpp"
#include "revzeta/sofic.hpp"

namespace revzeta::zeta {

using exact::RationalFunction;
using exact::TruncatedSeries;

enum class GConvention { Log, Ordinary };

/// Abstract source of fixed-point counts f(m, 2l), l = 0..l_range-1, with all
/// backends for the same system required (and tested) to agree.
struct CountProvider {
  int l_range = 1;
  std::function<Int(long m, int l)> f;
};

CountProvider trace_provider(const sft::ReversalSFT& sys);
CountProvider bruteforce_provider(const sft::ReversalSFT& sys,
                                  WorkBudget& budget);

/// Log convention: sum f(m, 2l)/m t^m (what the zeta product consumes);
/// ordinary: sum f(m, 2l) t^m (what the rationality statements are about).
TruncatedSeries generating_g(const CountProvider& cp, int order,
                             GConvention convention);

/// Parity-reduced flip generating function: sum of p(2m-1, 0) t^{2m-1} and
/// (p(2m, 0) + p(2m, 1))/2 t^{2m}. Half-integer coefficients are permitted.
TruncatedSeries generating_h(
    const std::function<std::array<Int, 3>(long)>& flip_triples, int order);

/// Closed form of sum_{m>=1} tr(A^m J^{2l}) t^m:
/// tr(J^{2l} adj(I - tA)) / det(I - tA) - tr(J^{2l}).
RationalFunction ordinary_gf_rational(const sft::ReversalSFT& sys, int l);
/// The alternating-sum analogue over the signed subset matrices.
RationalFunction ordinary_gf_rational_sofic(
    const std::vector<sofic::SignedSubsetMatrices>& family, int l);

struct ZetaFactor {
  enum class Kind { RationalPower, ExpSeries };
  Kind kind = Kind::RationalPower;
  RationalFunction base;  // RationalPower: base(t^subst_power)^exponent
  Rat exponent = 1;
  int subst_power = 1;
  TruncatedSeries arg;  // ExpSeries: exp(arg), arg already substituted/scaled
  std::string provenance;
};

/// A zeta function as an exact truncated series plus, where the theory
/// licenses them, closed-form factors whose expansion reproduces the series.
struct ZetaResult {
  TruncatedSeries series;
  std::vector<ZetaFactor> factors;
  std::string provenance;
};

TruncatedSeries expand_factor(const ZetaFactor& f, int order);
TruncatedSeries expand_factors(const std::vector<ZetaFactor>& fs, int order);

/// Artin-Mazur zeta: 1/det(I - tA) for a shift of finite type.
ZetaResult artin_mazur(const sft::ReversalSFT& sys, int order);
/// Sofic case: product of det(I - tA_k)^{(-1)^k} over the signed family.
ZetaResult artin_mazur(const sofic::JointStateChain& chain, int order);

/// Flip-system zeta sqrt(zeta_T(t^2)) * exp(h(t)); coincides with the direct
/// definition for order-2 systems.
ZetaResult flip_zeta(const sft::FlipView& fv, int order);

/// The product decomposition over sub-reversal systems (divisors k of r,
/// factors exp(g_{2k}(t^{2k})/2k)) and sub-flip systems (odd divisors d,
/// factors exp(h_{2d}(t^d)/d)), counts from the trace/matrix backends.
ZetaResult lind_zeta_product(const sft::ReversalSFT& sys, int order);
ZetaResult lind_zeta_product(const sofic::LabeledPresentation& p, int order,
                             WorkBudget& budget);

/// The definition, evaluated head-on: enumerate subgroups of index <= order,
/// count fixed points of each generator pair by window enumeration (never by
/// traces), and exponentiate.
TruncatedSeries lind_zeta_direct(const sft::ReversalSFT& sys, int order,
                                 WorkBudget& budget);
TruncatedSeries lind_zeta_direct(const sofic::LabeledPresentation& p,
                                 int order, WorkBudget& budget);

}  // namespace revzeta::zeta
