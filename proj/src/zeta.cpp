#include "revzeta/zeta.hpp"

#include <algorithm>

#include "revzeta/group.hpp"

namespace revzeta::zeta {

using exact::IntMatrix;
using exact::IntPoly;

CountProvider trace_provider(const sft::ReversalSFT& sys) {
  CountProvider cp;
  cp.l_range = sys.r;
  cp.f = [sys](long m, int l) {
    return exact::mat_pow_trace(sys.A, sys.J, static_cast<unsigned long>(m),
                                static_cast<unsigned long>(2 * l));
  };
  return cp;
}

CountProvider bruteforce_provider(const sft::ReversalSFT& sys,
                                  WorkBudget& budget) {
  CountProvider cp;
  cp.l_range = sys.r;
  cp.f = [sys, &budget](long m, int l) {
    return sft::fixed_count_bruteforce(sys, m, l, budget);
  };
  return cp;
}

TruncatedSeries generating_g(const CountProvider& cp, int order,
                             GConvention convention) {
  TruncatedSeries g(order);
  for (long m = 1; m <= order; ++m) {
    Int total = 0;
    for (int l = 0; l < cp.l_range; ++l) total += cp.f(m, l);
    g.c[m] = convention == GConvention::Log ? make_rat(total, Int(m))
                                            : Rat(total);
  }
  return g;
}

TruncatedSeries generating_h(
    const std::function<std::array<Int, 3>(long)>& flip_triples, int order) {
  TruncatedSeries h(order);
  for (long m = 1; 2 * m - 1 <= order; ++m) {
    auto [p_odd, p_even0, p_even1] = flip_triples(m);
    h.c[2 * m - 1] = Rat(p_odd);
    if (2 * m <= order) h.c[2 * m] = make_rat(p_even0 + p_even1, Int(2));
  }
  return h;
}

namespace {

// tr(J^{2l} adj(I - tA)) as a polynomial in t, via the adjugate chain.
IntPoly twisted_adjugate_trace(const IntMatrix& A, const IntMatrix& Jl) {
  auto B = exact::resolvent_adjugate(A);
  IntPoly num(B.size(), Int(0));
  for (std::size_t j = 0; j < B.size(); ++j) num[j] = (Jl * B[j]).trace();
  return exact::poly_trim(std::move(num));
}

RationalFunction twisted_resolvent_gf(const IntMatrix& A, const IntMatrix& Jl) {
  if (A.rows() == 0) return RationalFunction::zero();
  IntPoly den = exact::reciprocal_char_poly(A);
  IntPoly num = twisted_adjugate_trace(A, Jl);
  num = exact::poly_sub(num, exact::poly_scale(Jl.trace(), den));
  return RationalFunction(std::move(num), std::move(den));
}

}  // namespace

RationalFunction ordinary_gf_rational(const sft::ReversalSFT& sys, int l) {
  if (l < 0 || l >= sys.r) throw Error("l out of range");
  if (sys.empty()) return RationalFunction::zero();
  return twisted_resolvent_gf(sys.A,
                              sys.J.pow(static_cast<unsigned long>(2 * l)));
}

RationalFunction ordinary_gf_rational_sofic(
    const std::vector<sofic::SignedSubsetMatrices>& family, int l) {
  RationalFunction total = RationalFunction::zero();
  for (const auto& fam : family) {
    if (fam.index_set.empty()) continue;
    RationalFunction term = twisted_resolvent_gf(
        fam.A_k, fam.J_k.pow(static_cast<unsigned long>(2 * l)));
    total = rf_add(total, fam.k % 2 == 1 ? term : rf_scale(Rat(-1), term));
  }
  return total;
}

TruncatedSeries expand_factor(const ZetaFactor& f, int order) {
  if (f.kind == ZetaFactor::Kind::ExpSeries)
    return series_exp(ts_with_order(f.arg, order));
  RationalFunction base = f.subst_power == 1
                              ? f.base
                              : exact::rf_substitute_power(f.base, f.subst_power);
  return series_pow(expand_rational(base, order), f.exponent);
}

TruncatedSeries expand_factors(const std::vector<ZetaFactor>& fs, int order) {
  TruncatedSeries out = TruncatedSeries::one(order);
  for (const auto& f : fs) out = ts_mul(out, expand_factor(f, order));
  return out;
}

ZetaResult artin_mazur(const sft::ReversalSFT& sys, int order) {
  ZetaResult z;
  z.provenance = "artin-mazur closed form 1/det(I - tA)";
  ZetaFactor f;
  f.kind = ZetaFactor::Kind::RationalPower;
  f.base = sys.empty() ? RationalFunction::one()
                       : RationalFunction({Int(1)},
                                          exact::reciprocal_char_poly(sys.A));
  f.exponent = 1;
  f.provenance = "1/det(I - tA)";
  z.factors.push_back(f);
  z.series = expand_factors(z.factors, order);
  return z;
}

ZetaResult artin_mazur(const sofic::JointStateChain& chain, int order) {
  ZetaResult z;
  z.provenance = "artin-mazur, alternating determinant product";
  auto family = sofic::build_signed_family(chain);
  for (const auto& fam : family) {
    if (fam.index_set.empty()) continue;
    ZetaFactor f;
    f.kind = ZetaFactor::Kind::RationalPower;
    f.base = RationalFunction({Int(1)}, exact::reciprocal_char_poly(fam.A_k));
    f.exponent = fam.k % 2 == 1 ? 1 : -1;
    f.provenance = "det(I - tA_" + std::to_string(fam.k) + ")^{" +
                   (fam.k % 2 == 1 ? std::string("-1") : std::string("+1")) +
                   "}";
    z.factors.push_back(f);
  }
  z.series = expand_factors(z.factors, order);
  return z;
}

ZetaResult flip_zeta(const sft::FlipView& fv, int order) {
  ZetaResult z;
  z.provenance = "flip zeta sqrt(zeta_T(t^2)) exp(h(t))";
  ZetaFactor sq;
  sq.kind = ZetaFactor::Kind::RationalPower;
  sq.base = fv.base.empty()
                ? RationalFunction::one()
                : RationalFunction({Int(1)},
                                   exact::reciprocal_char_poly(fv.base.A));
  sq.exponent = Rat(1, 2);
  sq.subst_power = 2;
  sq.provenance = "zeta_T(t^2)^{1/2}";
  z.factors.push_back(sq);
  ZetaFactor eh;
  eh.kind = ZetaFactor::Kind::ExpSeries;
  eh.arg = generating_h([&](long m) { return sft::flip_counts_trace(fv, m); },
                        order);
  eh.provenance = "exp(h(t))";
  z.factors.push_back(eh);
  z.series = expand_factors(z.factors, order);
  return z;
}

namespace {

std::vector<int> divisors(int r) {
  std::vector<int> d;
  for (int k = 1; k <= r; ++k)
    if (r % k == 0) d.push_back(k);
  return d;
}

ZetaResult assemble_product(
    int r, int order,
    const std::function<TruncatedSeries(int k)>& sub_reversal_g,
    const std::function<TruncatedSeries(int d)>& sub_flip_h) {
  ZetaResult z;
  z.provenance = "product over sub-reversal and sub-flip systems";
  for (int k : divisors(r)) {
    TruncatedSeries g = sub_reversal_g(k);
    ZetaFactor f;
    f.kind = ZetaFactor::Kind::ExpSeries;
    f.arg = ts_scale(Rat(1, 2 * k), ts_substitute_power(g, 2 * k));
    f.provenance = "exp(g_" + std::to_string(2 * k) + "(t^" +
                   std::to_string(2 * k) + ")/" + std::to_string(2 * k) + ")";
    z.factors.push_back(f);
  }
  for (int d : divisors(r)) {
    if (d % 2 == 0) continue;
    TruncatedSeries h = sub_flip_h(d);
    ZetaFactor f;
    f.kind = ZetaFactor::Kind::ExpSeries;
    f.arg = ts_scale(Rat(1, d), ts_substitute_power(h, d));
    f.provenance = "exp(h_" + std::to_string(2 * d) + "(t^" +
                   std::to_string(d) + ")/" + std::to_string(d) + ")";
    z.factors.push_back(f);
  }
  z.series = expand_factors(z.factors, order);
  return z;
}

}  // namespace

ZetaResult lind_zeta_product(const sft::ReversalSFT& sys, int order) {
  return assemble_product(
      sys.r, order,
      [&](int k) {
        // X_{2k} with the subgroup grouping's l-range 0..k-1; powers of the
        // restricted J wrap, which is exactly what the grouping needs.
        sft::ReversalSFT sub = sft::restrict_fixed_subsystem(sys, k);
        CountProvider cp;
        cp.l_range = k;
        cp.f = [sub](long m, int l) {
          return exact::mat_pow_trace(sub.A, sub.J,
                                      static_cast<unsigned long>(m),
                                      static_cast<unsigned long>(2 * l));
        };
        return generating_g(cp, order, GConvention::Log);
      },
      [&](int d) {
        sft::FlipView fv = sft::make_flip_view(sys, d);
        return generating_h(
            [&](long m) { return sft::flip_counts_trace(fv, m); }, order);
      });
}

namespace {

// Sub-presentation of labels fixed by tau^{2l}, with the label alphabet
// pruned so that the restriction validates on its own.
sofic::LabeledPresentation sofic_restriction(const sofic::LabeledPresentation& p,
                                             int l) {
  auto t2l = perm_pow(p.tau, 2L * l);
  std::vector<char> keep(p.nlabels(), 0);
  for (int c = 0; c < p.nlabels(); ++c) keep[c] = t2l[c] == c;
  return sofic::restrict_labels(p, keep);
}

}  // namespace

ZetaResult lind_zeta_product(const sofic::LabeledPresentation& p, int order,
                             WorkBudget& budget) {
  sofic::validate_presentation(p);
  return assemble_product(
      p.r, order,
      [&](int k) {
        sofic::LabeledPresentation sub = sofic_restriction(p, k);
        sub.r = k;  // tau^{2k} = id on the kept labels
        sub = sofic::trim_essential_or_empty(sub);
        if (sub.nstates() == 0) return TruncatedSeries::zero(order);
        auto chain = sofic::build_joint_state_chain(sub, budget);
        auto family = sofic::build_signed_family(chain);
        CountProvider cp;
        cp.l_range = k;
        cp.f = [family](long m, int l) {
          return sofic::fixed_count_theoremC(family, m, l);
        };
        return generating_g(cp, order, GConvention::Log);
      },
      [&](int d) {
        sofic::LabeledPresentation sub = sofic_restriction(p, d);
        // flip view: symbol map tau^d, an involution on the kept labels
        sub.tau = perm_pow(sub.tau, d);
        sub.r = 1;
        sub = sofic::trim_essential_or_empty(sub);
        if (sub.nstates() == 0) return TruncatedSeries::zero(order);
        auto chain = sofic::build_joint_state_chain(sub, budget);
        auto family = sofic::build_signed_family(chain);
        return generating_h(
            [&](long m) { return sofic::flip_counts_sofic(family, m); },
            order);
      });
}

TruncatedSeries lind_zeta_direct(const sft::ReversalSFT& sys, int order,
                                 WorkBudget& budget) {
  auto descs = grp::enumerate_subgroups(sys.r, order);
  TruncatedSeries acc(order);
  for (const auto& d : descs) {
    long idx = d.index();
    Int f;
    if (d.family == grp::Family::F1) {
      sft::ReversalSFT sub =
          sft::restrict_fixed_subsystem(sys, static_cast<int>(d.k));
      f = sub.empty() ? Int(0)
                      : sft::fixed_count_bruteforce_twist(
                            sub.A, perm_pow(sub.tau, 2 * d.second), d.m,
                            budget);
    } else {
      f = sft::mixed_fixed_count_bruteforce(sys, d.m, d.second,
                                            static_cast<int>(2 * d.k - 1),
                                            budget);
    }
    acc.c[idx] += make_rat(f, Int(idx));
  }
  return series_exp(acc);
}

TruncatedSeries lind_zeta_direct(const sofic::LabeledPresentation& p,
                                 int order, WorkBudget& budget) {
  sofic::validate_presentation(p);
  auto descs = grp::enumerate_subgroups(p.r, order);
  TruncatedSeries acc(order);
  for (const auto& d : descs) {
    long idx = d.index();
    Int f;
    if (d.family == grp::Family::F1) {
      sofic::LabeledPresentation sub =
          sofic_restriction(p, static_cast<int>(d.k));
      sub.r = static_cast<int>(d.k);
      sub = sofic::trim_essential_or_empty(sub);
      f = sub.nstates() == 0
              ? Int(0)
              : sofic::sofic_fixed_count_bruteforce(
                    sub, d.m, static_cast<int>(d.second), budget);
    } else {
      f = sofic::sofic_mirror_count_bruteforce(
          p, perm_pow(p.tau, 2 * d.k - 1), d.m, d.second, budget);
    }
    acc.c[idx] += make_rat(f, Int(idx));
  }
  return series_exp(acc);
}

}  // namespace revzeta::zeta
