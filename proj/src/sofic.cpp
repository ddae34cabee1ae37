#include "revzeta/sofic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace revzeta::sofic {

namespace {

struct BoolRel {
  int n = 0;
  std::vector<std::uint64_t> row;

  static BoolRel zero(int n) {
    BoolRel r;
    r.n = n;
    r.row.assign(n, 0);
    return r;
  }
  static BoolRel ident(int n) {
    BoolRel r = zero(n);
    for (int i = 0; i < n; ++i) r.row[i] = 1ull << i;
    return r;
  }
  BoolRel mul(const BoolRel& b) const {
    BoolRel r = zero(n);
    for (int i = 0; i < n; ++i) {
      std::uint64_t m = row[i];
      while (m) {
        int j = __builtin_ctzll(m);
        m &= m - 1;
        r.row[i] |= b.row[j];
      }
    }
    return r;
  }
  bool is_zero() const {
    for (auto v : row)
      if (v) return false;
    return true;
  }
  bool operator==(const BoolRel&) const = default;
  bool operator<(const BoolRel& o) const { return row < o.row; }
};

Subset rel_step(const BoolRel& R, Subset S) {
  Subset out = 0;
  while (S) {
    int i = __builtin_ctzll(S);
    S &= S - 1;
    out |= R.row[i];
  }
  return out;
}

Subset colsupport(const BoolRel& R) {
  Subset out = 0;
  for (auto v : R.row) out |= v;
  return out;
}

bool has_cycle(const BoolRel& R) {
  // transitive closure by repeated squaring-with-union
  BoolRel C = R;
  for (int steps = 1; steps < C.n; steps <<= 1) {
    BoolRel C2 = C.mul(C);
    bool changed = false;
    for (int i = 0; i < C.n; ++i) {
      std::uint64_t merged = C.row[i] | C2.row[i];
      if (merged != C.row[i]) changed = true;
      C.row[i] = merged;
    }
    if (!changed) break;
  }
  for (int i = 0; i < C.n; ++i)
    if (C.row[i] & (1ull << i)) return true;
  return false;
}

/// Per-label step relations; doubles as an NFA over the label alphabet.
struct Nfa {
  int n = 0;
  std::vector<BoolRel> step;  // one relation per label
};

Nfa forward_nfa(const LabeledPresentation& p) {
  Nfa a;
  a.n = p.nstates();
  a.step.assign(p.nlabels(), BoolRel::zero(a.n));
  for (const auto& e : p.edges)
    a.step[e.label].row[e.from] |= 1ull << e.to;
  return a;
}

Nfa reversed_nfa(const LabeledPresentation& p) {
  Nfa a;
  a.n = p.nstates();
  a.step.assign(p.nlabels(), BoolRel::zero(a.n));
  for (const auto& e : p.edges)
    a.step[e.label].row[e.to] |= 1ull << e.from;
  return a;
}

/// Edge labels pushed through a symbol map: reading d in the result steps
/// like reading g^{-1}(d) in the source.
Nfa relabeled(const Nfa& a, const std::vector<int>& g) {
  Nfa b;
  b.n = a.n;
  b.step.assign(a.step.size(), BoolRel::zero(a.n));
  for (std::size_t c = 0; c < a.step.size(); ++c) b.step[g[c]] = a.step[c];
  return b;
}

/// L(a from Sa) included in L(b from Sb), by subset-pair search.
bool lang_included(const Nfa& a, Subset Sa, const Nfa& b, Subset Sb) {
  if (Sa == 0) return true;
  std::set<std::pair<Subset, Subset>> seen;
  std::vector<std::pair<Subset, Subset>> stack{{Sa, Sb}};
  seen.insert(stack[0]);
  while (!stack.empty()) {
    auto [U, V] = stack.back();
    stack.pop_back();
    if (V == 0) return false;  // U is nonzero by construction
    for (std::size_t c = 0; c < a.step.size(); ++c) {
      Subset U2 = rel_step(a.step[c], U);
      if (U2 == 0) continue;
      Subset V2 = rel_step(b.step[c], V);
      if (seen.insert({U2, V2}).second) stack.push_back({U2, V2});
    }
  }
  return true;
}

/// Saturation against an arbitrary language: all states whose follower
/// language lies inside L(target from S_target), over the base NFA.
Subset saturate_against(const Nfa& base, const Nfa& target, Subset S_target) {
  Subset out = 0;
  for (int q = 0; q < base.n; ++q)
    if (lang_included(base, 1ull << q, target, S_target)) out |= 1ull << q;
  return out;
}

Subset saturate(const Nfa& base, Subset S) {
  return saturate_against(base, base, S);
}

struct Monoid {
  std::vector<BoolRel> elems;    // elems[0] = identity
  std::vector<char> nonempty;    // has a representative word of length >= 1
};

Monoid transition_monoid(const Nfa& a, WorkBudget& budget) {
  Monoid M;
  std::map<std::vector<std::uint64_t>, int> index;
  auto intern = [&](const BoolRel& r, bool from_word) {
    auto it = index.find(r.row);
    if (it != index.end()) {
      if (from_word) M.nonempty[it->second] = 1;
      return it->second;
    }
    int id = static_cast<int>(M.elems.size());
    index.emplace(r.row, id);
    M.elems.push_back(r);
    M.nonempty.push_back(from_word ? 1 : 0);
    budget.charge();
    return id;
  };
  intern(BoolRel::ident(a.n), false);
  std::vector<BoolRel> letters;
  for (const auto& L : a.step) letters.push_back(L);
  for (std::size_t i = 0; i < M.elems.size(); ++i) {
    BoolRel cur = M.elems[i];  // copy: elems grows
    for (const auto& L : letters) {
      budget.charge();
      intern(cur.mul(L), true);
    }
  }
  return M;
}

std::vector<Subset> canonical_subsets(const LabeledPresentation& p,
                                      const std::vector<Subset>& raw) {
  Nfa fwd = forward_nfa(p);
  std::set<Subset> out;
  for (Subset s : raw)
    if (s) out.insert(saturate(fwd, s));
  return std::vector<Subset>(out.begin(), out.end());
}

std::string subset_string(Subset s) {
  std::string r = "{";
  bool first = true;
  while (s) {
    int i = __builtin_ctzll(s);
    s &= s - 1;
    if (!first) r += ",";
    r += std::to_string(i);
    first = false;
  }
  return r + "}";
}

}  // namespace

void validate_presentation(const LabeledPresentation& p) {
  if (p.r < 1) throw ValidationError("presentation order parameter r must be >= 1");
  if (p.nstates() > 64)
    throw ValidationError("presentations are limited to 64 states");
  for (const auto& e : p.edges) {
    if (e.from < 0 || e.from >= p.nstates() || e.to < 0 || e.to >= p.nstates())
      throw ValidationError("edge endpoint out of range");
    if (e.label < 0 || e.label >= p.nlabels())
      throw ValidationError("edge label out of range");
  }
  if (static_cast<int>(p.tau.size()) != p.nlabels() || !is_permutation(p.tau))
    throw ValidationError("tau is not a permutation of the label alphabet");
  auto t = perm_pow(p.tau, 2L * p.r);
  if (t != perm_identity(p.nlabels()))
    throw ValidationError("tau^{2r} is not the identity on labels");
}

LabeledPresentation trim_essential_or_empty(const LabeledPresentation& p) {
  int n = p.nstates();
  std::vector<char> alive(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> has_in(n, 0), has_out(n, 0);
    for (const auto& e : p.edges)
      if (alive[e.from] && alive[e.to]) {
        has_out[e.from] = 1;
        has_in[e.to] = 1;
      }
    for (int s = 0; s < n; ++s)
      if (alive[s] && (!has_in[s] || !has_out[s])) {
        alive[s] = 0;
        changed = true;
      }
  }
  LabeledPresentation q;
  q.label_alphabet = p.label_alphabet;
  q.tau = p.tau;
  q.r = p.r;
  std::vector<int> remap(n, -1);
  for (int s = 0; s < n; ++s)
    if (alive[s]) {
      remap[s] = q.nstates();
      q.states.push_back(p.states[s]);
    }
  std::set<LabeledEdge> edges;
  for (const auto& e : p.edges)
    if (alive[e.from] && alive[e.to])
      edges.insert({remap[e.from], remap[e.to], e.label});
  q.edges.assign(edges.begin(), edges.end());
  return q;
}

LabeledPresentation trim_essential(const LabeledPresentation& p) {
  LabeledPresentation q = trim_essential_or_empty(p);
  if (q.nstates() == 0)
    throw ValidationError("presents the empty shift");
  return q;
}

LabeledPresentation reverse_presentation(const LabeledPresentation& p) {
  LabeledPresentation q = p;
  for (auto& e : q.edges) std::swap(e.from, e.to);
  std::sort(q.edges.begin(), q.edges.end());
  return q;
}

LabeledPresentation restrict_labels(const LabeledPresentation& p,
                                    const std::vector<char>& keep) {
  LabeledPresentation q;
  q.states = p.states;
  q.r = p.r;
  std::vector<int> remap(p.nlabels(), -1);
  for (int c = 0; c < p.nlabels(); ++c)
    if (keep[c]) {
      remap[c] = q.nlabels();
      q.label_alphabet.push_back(p.label_alphabet[c]);
    }
  q.tau.resize(q.nlabels());
  for (int c = 0; c < p.nlabels(); ++c) {
    if (!keep[c]) continue;
    if (remap[p.tau[c]] < 0)
      throw ValidationError("kept label set is not tau-invariant");
    q.tau[remap[c]] = remap[p.tau[c]];
  }
  for (const auto& e : p.edges)
    if (keep[e.label]) q.edges.push_back({e.from, e.to, remap[e.label]});
  return q;
}

LabeledPresentation with_tau(const LabeledPresentation& p, std::vector<int> tau,
                             int r) {
  LabeledPresentation q = p;
  q.tau = std::move(tau);
  q.r = r;
  return q;
}

bool check_tau_closure(const LabeledPresentation& p, int probe_len,
                       WorkBudget& budget, std::string* witness) {
  LabeledPresentation q = trim_essential_or_empty(p);
  if (q.nstates() == 0) return true;
  Nfa fwd = forward_nfa(q);
  int nl = q.nlabels();
  auto realizable = [&](const std::vector<int>& w) {
    BoolRel R = BoolRel::ident(fwd.n);
    for (int c : w) {
      R = R.mul(fwd.step[c]);
      if (R.is_zero()) return false;
    }
    return true;
  };
  bool ok = true;
  std::vector<int> w;
  std::function<void(const BoolRel&)> rec = [&](const BoolRel& R) {
    if (!ok) return;
    budget.charge();
    if (!w.empty()) {
      std::vector<int> img(w.size());
      for (std::size_t i = 0; i < w.size(); ++i)
        img[i] = q.tau[w[w.size() - 1 - i]];
      if (!realizable(img)) {
        ok = false;
        if (witness) {
          std::string s;
          for (int c : w) s += q.label_alphabet[c] + ".";
          *witness = s;
        }
        return;
      }
    }
    if (static_cast<int>(w.size()) == probe_len) return;
    for (int c = 0; c < nl; ++c) {
      BoolRel R2 = R.mul(fwd.step[c]);
      if (R2.is_zero()) continue;
      w.push_back(c);
      rec(R2);
      w.pop_back();
    }
  };
  rec(BoolRel::ident(fwd.n));
  return ok;
}

std::vector<Subset> compute_futures(const LabeledPresentation& p,
                                    WorkBudget& budget) {
  LabeledPresentation q = trim_essential_or_empty(p);
  if (q.nstates() == 0) return {};
  Nfa fwd = forward_nfa(q);
  Monoid M = transition_monoid(fwd, budget);
  std::vector<Subset> raw;
  for (std::size_t e = 0; e < M.elems.size(); ++e) {
    if (!M.nonempty[e]) continue;
    if (!(M.elems[e].mul(M.elems[e]) == M.elems[e])) continue;  // idempotent
    for (const auto& m : M.elems) {
      budget.charge();
      raw.push_back(colsupport(M.elems[e].mul(m)));
    }
  }
  return canonical_subsets(q, raw);
}

std::vector<Subset> compute_pasts(const LabeledPresentation& p,
                                  WorkBudget& budget) {
  return compute_futures(reverse_presentation(p), budget);
}

std::vector<Subset> compute_futures_stabilization(const LabeledPresentation& p,
                                                  WorkBudget& budget) {
  LabeledPresentation q = trim_essential_or_empty(p);
  if (q.nstates() == 0) return {};
  Nfa fwd = forward_nfa(q);
  Monoid M = transition_monoid(fwd, budget);
  std::vector<Subset> raw;
  for (const auto& m : M.elems) {
    bool pumped = false;
    for (std::size_t pi = 0; pi < M.elems.size() && !pumped; ++pi) {
      if (!M.nonempty[pi]) continue;
      budget.charge();
      if (M.elems[pi].mul(m) == m) pumped = true;
    }
    if (pumped) raw.push_back(colsupport(m));
  }
  return canonical_subsets(q, raw);
}

std::string PropertyCertificate::summary() const {
  std::string s;
  s += std::string("P1 ") + (p1_ok ? "pass" : ("FAIL " + p1_witness)) + "; ";
  s += std::string("P2 ") + (p2_ok ? "pass" : ("FAIL " + p2_witness)) + "; ";
  s += std::string("P3 ") + (p3_ok ? "pass" : ("FAIL " + p3_witness));
  return s;
}

PropertyCertificate check_properties(const IntMatrix& A, const IntMatrix& J,
                                     const std::vector<int>& labels,
                                     const std::vector<int>& tau_labels,
                                     int r) {
  PropertyCertificate cert;
  int n = A.rows();
  // P1
  std::vector<int> tauJ;
  cert.p1_ok = true;
  if (!exact::permutation_of(J, tauJ)) {
    cert.p1_ok = false;
    cert.p1_witness = "J is not a permutation matrix";
  } else {
    IntMatrix Jp = J.pow(2ul * r);
    IntMatrix I = IntMatrix::identity(n);
    for (int i = 0; i < n && cert.p1_ok; ++i)
      for (int j = 0; j < n && cert.p1_ok; ++j)
        if (Jp.at(i, j) != I.at(i, j)) {
          cert.p1_ok = false;
          cert.p1_witness = "J^{2r} != I at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")";
        }
    IntMatrix lhs = A * J, rhs = J * A.transpose();
    for (int i = 0; i < n && cert.p1_ok; ++i)
      for (int j = 0; j < n && cert.p1_ok; ++j)
        if (lhs.at(i, j) != rhs.at(i, j)) {
          cert.p1_ok = false;
          cert.p1_witness = "AJ != JA^T at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")";
        }
  }
  // P2
  if (tauJ.empty() && n > 0) {
    cert.p2_ok = false;
    cert.p2_witness = "skipped: J is not a permutation";
  } else {
    cert.p2_ok = true;
    for (int s = 0; s < n; ++s)
      if (labels[tauJ[s]] != tau_labels[labels[s]]) {
        cert.p2_ok = false;
        cert.p2_witness = "L(tau_J(s)) != tau(L(s)) at symbol " +
                          std::to_string(s);
        break;
      }
  }
  // P3: pair-graph diamond search on the essential part of A.
  std::vector<char> alive(n, 1);
  {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n; ++s) {
        if (!alive[s]) continue;
        bool in = false, out = false;
        for (int t2 = 0; t2 < n; ++t2) {
          if (alive[t2] && A.at(s, t2) == 1) out = true;
          if (alive[t2] && A.at(t2, s) == 1) in = true;
        }
        if (!in || !out) {
          alive[s] = 0;
          changed = true;
        }
      }
    }
  }
  auto pid = [n](int u, int v) { return u * n + v; };
  auto pair_edge = [&](int u, int v, int u2, int v2) {
    return alive[u] && alive[v] && alive[u2] && alive[v2] &&
           A.at(u, u2) == 1 && A.at(v, v2) == 1 && labels[u2] == labels[v2];
  };
  std::vector<int> from_diag(n * n, -2);  // -2 unseen, else parent pid (-1 root)
  std::vector<int> order;
  for (int s = 0; s < n; ++s)
    if (alive[s]) {
      from_diag[pid(s, s)] = -1;
      order.push_back(pid(s, s));
    }
  for (std::size_t h = 0; h < order.size(); ++h) {
    int u = order[h] / n, v = order[h] % n;
    for (int u2 = 0; u2 < n; ++u2)
      for (int v2 = 0; v2 < n; ++v2)
        if (from_diag[pid(u2, v2)] == -2 && pair_edge(u, v, u2, v2)) {
          from_diag[pid(u2, v2)] = order[h];
          order.push_back(pid(u2, v2));
        }
  }
  std::vector<char> to_diag(n * n, 0);
  {
    std::vector<int> q2;
    for (int s = 0; s < n; ++s)
      if (alive[s]) {
        to_diag[pid(s, s)] = 1;
        q2.push_back(pid(s, s));
      }
    for (std::size_t h = 0; h < q2.size(); ++h) {
      int u2 = q2[h] / n, v2 = q2[h] % n;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (!to_diag[pid(u, v)] && pair_edge(u, v, u2, v2)) {
            to_diag[pid(u, v)] = 1;
            q2.push_back(pid(u, v));
          }
    }
  }
  cert.p3_ok = true;
  for (int u = 0; u < n && cert.p3_ok; ++u)
    for (int v = 0; v < n && cert.p3_ok; ++v) {
      if (u == v) continue;
      if (from_diag[pid(u, v)] != -2 && to_diag[pid(u, v)]) {
        cert.p3_ok = false;
        // reconstruct the left half through parents
        std::vector<int> left;
        for (int cur = pid(u, v); cur != -1; cur = from_diag[cur])
          left.push_back(cur);
        std::reverse(left.begin(), left.end());
        // extend to a diagonal pair through to_diag by forward search
        std::vector<int> right;
        {
          std::vector<int> parent(n * n, -2);
          std::vector<int> q3{pid(u, v)};
          parent[pid(u, v)] = -1;
          int goal = -1;
          for (std::size_t h = 0; h < q3.size() && goal < 0; ++h) {
            int a1 = q3[h] / n, b1 = q3[h] % n;
            for (int a2 = 0; a2 < n && goal < 0; ++a2)
              for (int b2 = 0; b2 < n; ++b2)
                if (parent[pid(a2, b2)] == -2 && pair_edge(a1, b1, a2, b2)) {
                  parent[pid(a2, b2)] = q3[h];
                  q3.push_back(pid(a2, b2));
                  if (a2 == b2) {
                    goal = pid(a2, b2);
                    break;
                  }
                }
          }
          for (int cur = goal; cur != -1 && cur != -2; cur = parent[cur])
            right.push_back(cur);
          std::reverse(right.begin(), right.end());
        }
        std::string ba, bb;
        auto emit = [&](int pidv) {
          ba += std::to_string(pidv / n) + ".";
          bb += std::to_string(pidv % n) + ".";
        };
        for (int pv : left) emit(pv);
        for (std::size_t i2 = 1; i2 < right.size(); ++i2) emit(right[i2]);
        cert.p3_witness = "graph diamond, blocks " + ba + " vs " + bb;
      }
    }
  return cert;
}

JointStateChain build_joint_state_chain(const LabeledPresentation& p,
                                        WorkBudget& budget) {
  validate_presentation(p);
  LabeledPresentation q = trim_essential(p);
  Nfa fwd = forward_nfa(q);
  Nfa rev = reversed_nfa(q);
  Nfa fwd_tau = relabeled(fwd, q.tau);
  Nfa rev_tau = relabeled(rev, q.tau);

  std::vector<Subset> futures = compute_futures(q, budget);
  std::vector<Subset> pasts = compute_pasts(q, budget);

  JointStateChain chain;
  chain.r = q.r;
  chain.tau_labels = q.tau;
  for (Subset F : futures)
    for (int c = 0; c < q.nlabels(); ++c) {
      if (rel_step(fwd.step[c], F) == 0) continue;  // F(a) empty
      for (Subset P : pasts) {
        if (rel_step(rev.step[c], P) == 0) continue;  // P(a) empty
        chain.symbols.push_back({F, c, P});
      }
    }
  std::sort(chain.symbols.begin(), chain.symbols.end(),
            [](const JointState& a, const JointState& b) {
              if (a.future != b.future) return a.future < b.future;
              if (a.label != b.label) return a.label < b.label;
              return a.past < b.past;
            });
  int n = chain.size();
  chain.labels.resize(n);
  for (int i = 0; i < n; ++i) chain.labels[i] = chain.symbols[i].label;

  auto find_symbol = [&](const JointState& s) {
    auto it = std::lower_bound(
        chain.symbols.begin(), chain.symbols.end(), s,
        [](const JointState& a, const JointState& b) {
          if (a.future != b.future) return a.future < b.future;
          if (a.label != b.label) return a.label < b.label;
          return a.past < b.past;
        });
    if (it == chain.symbols.end() || !(*it == s)) return -1;
    return static_cast<int>(it - chain.symbols.begin());
  };

  // A-rule: F1(a1) = F2 and P1 = P2(a2), on canonical subsets.
  std::map<std::pair<Subset, int>, Subset> fstep_cache, pstep_cache;
  auto fstep = [&](Subset F, int c) {
    auto key = std::make_pair(F, c);
    auto it = fstep_cache.find(key);
    if (it != fstep_cache.end()) return it->second;
    Subset s = saturate(fwd, rel_step(fwd.step[c], F));
    fstep_cache.emplace(key, s);
    return s;
  };
  auto pstep = [&](Subset P, int c) {
    auto key = std::make_pair(P, c);
    auto it = pstep_cache.find(key);
    if (it != pstep_cache.end()) return it->second;
    Subset s = saturate(rev, rel_step(rev.step[c], P));
    pstep_cache.emplace(key, s);
    return s;
  };
  chain.A = IntMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const JointState& s1 = chain.symbols[i];
      const JointState& s2 = chain.symbols[j];
      if (fstep(s1.future, s1.label) == s2.future &&
          pstep(s2.past, s2.label) == s1.past)
        chain.A.at(i, j) = 1;
    }

  // J-rule: (F, a, P) -> (tau_inf^-(P), tau(a), tau_inf^+(F)).
  chain.J = IntMatrix(n, n);
  std::map<Subset, Subset> tau_minus_cache, tau_plus_cache;
  for (int i = 0; i < n; ++i) {
    const JointState& s = chain.symbols[i];
    Subset F2;
    {
      auto it = tau_minus_cache.find(s.past);
      if (it != tau_minus_cache.end())
        F2 = it->second;
      else {
        F2 = saturate_against(fwd, rev_tau, s.past);
        tau_minus_cache.emplace(s.past, F2);
      }
    }
    Subset P2;
    {
      auto it = tau_plus_cache.find(s.future);
      if (it != tau_plus_cache.end())
        P2 = it->second;
      else {
        P2 = saturate_against(rev, fwd_tau, s.future);
        tau_plus_cache.emplace(s.future, P2);
      }
    }
    JointState target{F2, q.tau[s.label], P2};
    int j = find_symbol(target);
    if (j < 0)
      throw ConsistencyError(
          "reversal image of joint state is not a joint state: (" +
          subset_string(F2) + ", " + q.label_alphabet[target.label] + ", " +
          subset_string(P2) + ")");
    chain.J.at(i, j) = 1;
  }

  chain.certificate =
      check_properties(chain.A, chain.J, chain.labels, chain.tau_labels, q.r);
  if (!chain.certificate.ok())
    throw ConsistencyError("joint state chain failed its property checks: " +
                           chain.certificate.summary());
  exact::permutation_of(chain.J, chain.tau_J);
  return chain;
}

SignedSubsetMatrices build_signed_matrices(const IntMatrix& A,
                                           const IntMatrix& J,
                                           const std::vector<int>& labels,
                                           int k) {
  int n = A.rows();
  if (k < 1 || k > std::max(n, 1))
    throw Error("subset size k = " + std::to_string(k) + " out of range");
  SignedSubsetMatrices out;
  out.k = k;
  int max_label = -1;
  for (int l : labels) max_label = std::max(max_label, l);
  for (int lab = 0; lab <= max_label; ++lab) {
    std::vector<int> members;
    for (int s = 0; s < n; ++s)
      if (labels[s] == lab) members.push_back(s);
    if (static_cast<int>(members.size()) < k) continue;
    // k-combinations in lexicographic order
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<int> sub(k);
      for (int i = 0; i < k; ++i) sub[i] = members[idx[i]];
      out.index_set.push_back(sub);
      int i = k - 1;
      while (i >= 0 && idx[i] == static_cast<int>(members.size()) - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  int m = static_cast<int>(out.index_set.size());
  out.A_k = IntMatrix(m, m);
  out.J_k = IntMatrix(m, m);
  auto minor_det = [&](const IntMatrix& M, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
    IntMatrix sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub.at(i, j) = M.at(rows[i], cols[j]);
    return exact::determinant(std::move(sub));
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      out.A_k.at(i, j) = minor_det(A, out.index_set[i], out.index_set[j]);
      out.J_k.at(i, j) = minor_det(J, out.index_set[i], out.index_set[j]);
    }
  return out;
}

std::vector<SignedSubsetMatrices> build_signed_family(
    const JointStateChain& chain) {
  std::map<int, int> label_count;
  for (int l : chain.labels) ++label_count[l];
  int kmax = 0;
  for (auto& [l, c] : label_count) kmax = std::max(kmax, c);
  std::vector<SignedSubsetMatrices> family;
  for (int k = 1; k <= kmax; ++k)
    family.push_back(
        build_signed_matrices(chain.A, chain.J, chain.labels, k));
  return family;
}

Int fixed_count_theoremC(const std::vector<SignedSubsetMatrices>& family,
                         long m, int l) {
  if (m < 1) throw Error("fixed_count_theoremC needs m >= 1");
  Int total = 0;
  std::ostringstream dump;
  for (const auto& fam : family) {
    if (fam.index_set.empty()) continue;
    Int term = exact::mat_pow_trace(fam.A_k, fam.J_k,
                                    static_cast<unsigned long>(m),
                                    static_cast<unsigned long>(2 * l));
    dump << "k=" << fam.k << " tr=" << term.get_str() << "; ";
    total += (fam.k % 2 == 1) ? term : -term;
  }
  if (total < 0)
    throw ConsistencyError(
        "inclusion-exclusion violated: negative fixed-point count " +
        total.get_str() + " at m=" + std::to_string(m) + ", l=" +
        std::to_string(l) + " [" + dump.str() + "]");
  return total;
}

Int fixed_count_theoremC(const JointStateChain& chain, long m, int l) {
  return fixed_count_theoremC(build_signed_family(chain), m, l);
}

std::array<Int, 3> flip_counts_sofic(
    const std::vector<SignedSubsetMatrices>& family, long m) {
  if (m < 1) throw Error("flip_counts_sofic needs m >= 1");
  std::array<Int, 3> out{Int(0), Int(0), Int(0)};
  for (const auto& fam : family) {
    if (fam.index_set.empty()) continue;
    const IntMatrix& Ak = fam.A_k;
    const IntMatrix& Jk = fam.J_k;
    IntMatrix Am1 = Ak.pow(static_cast<unsigned long>(m - 1));
    IntMatrix Jd = exact::diag_part(Jk);
    IntMatrix AJd = exact::diag_part(Ak * Jk);
    IntMatrix JAd = exact::diag_part(Jk * Ak);
    Int sgn = (fam.k % 2 == 1) ? 1 : -1;
    out[0] += sgn * exact::entry_sum(Jd * Am1 * AJd);
    out[1] += sgn * exact::entry_sum(
                        Jd * Ak.pow(static_cast<unsigned long>(m)) * Jd);
    out[2] += sgn * exact::entry_sum(JAd * Am1 * AJd);
  }
  for (const Int& v : out)
    if (v < 0)
      throw ConsistencyError("inclusion-exclusion violated: negative flip "
                             "count at m=" + std::to_string(m));
  return out;
}

std::array<Int, 3> flip_counts_sofic(const JointStateChain& chain, long m) {
  return flip_counts_sofic(build_signed_family(chain), m);
}

Int sofic_fixed_count_bruteforce(const LabeledPresentation& p, long m, int l,
                                 WorkBudget& budget) {
  if (m < 1) throw Error("sofic_fixed_count_bruteforce needs m >= 1");
  if (l < 0 || l >= p.r) throw Error("l out of range");
  LabeledPresentation q = trim_essential_or_empty(p);
  if (q.nstates() == 0) return 0;
  Nfa fwd = forward_nfa(q);
  auto g = perm_pow(q.tau, 2L * l);
  auto ginv = perm_inverse(g);
  long d = perm_order(g);
  // ginv^r per block index
  std::vector<std::vector<int>> gq(d);
  gq[0] = perm_identity(q.nlabels());
  for (long i = 1; i < d; ++i) gq[i] = perm_compose(gq[i - 1], ginv);

  Int count = 0;
  std::vector<int> w(m);
  std::vector<std::vector<BoolRel>> prod(
      d, std::vector<BoolRel>(m + 1, BoolRel::ident(fwd.n)));
  std::function<void(long)> rec = [&](long pos) {
    budget.charge();
    if (pos == m) {
      BoolRel W = prod[0][m];
      for (long qi = 1; qi < d; ++qi) W = W.mul(prod[qi][m]);
      if (has_cycle(W)) ++count;
      return;
    }
    for (int c = 0; c < q.nlabels(); ++c) {
      bool dead = false;
      for (long qi = 0; qi < d && !dead; ++qi) {
        prod[qi][pos + 1] = prod[qi][pos].mul(fwd.step[gq[qi][c]]);
        if (prod[qi][pos + 1].is_zero()) dead = true;
      }
      if (dead) continue;
      w[pos] = c;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

Int sofic_mirror_count_bruteforce(const LabeledPresentation& p,
                                  const std::vector<int>& g, long n, long e,
                                  WorkBudget& budget) {
  if (n < 1) throw Error("window length must be >= 1");
  LabeledPresentation q = trim_essential_or_empty(p);
  if (q.nstates() == 0) return 0;
  Nfa fwd = forward_nfa(q);
  auto partner = [&](long i) { return ((-i - e) % n + n) % n; };
  Int count = 0;
  std::vector<int> w(n);
  std::vector<BoolRel> pref(n + 1, BoolRel::ident(fwd.n));
  std::function<void(long)> rec = [&](long pos) {
    budget.charge();
    if (pos == n) {
      if (has_cycle(pref[n])) ++count;
      return;
    }
    long pt = partner(pos);
    for (int c = 0; c < q.nlabels(); ++c) {
      if (pt == pos) {
        if (g[c] != c) continue;
      } else if (pt < pos) {
        if (w[pt] != g[c] || c != g[w[pt]]) continue;
      }
      pref[pos + 1] = pref[pos].mul(fwd.step[c]);
      if (pref[pos + 1].is_zero()) continue;
      w[pos] = c;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace revzeta::sofic
