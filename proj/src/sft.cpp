#include "revzeta/sft.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace revzeta::sft {

namespace {

std::vector<std::vector<char>> adjacency_table(const IntMatrix& A) {
  int n = A.rows();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adj[i][j] = A.at(i, j) == 1 ? 1 : 0;
  return adj;
}

std::string cell(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

ReversalSFT validate(std::vector<std::string> alphabet, IntMatrix A,
                     IntMatrix J, int r) {
  if (r < 1) throw ValidationError("reversal half-order r must be >= 1");
  if (!A.is_square() || !J.is_square() || A.rows() != J.rows())
    throw DimensionError("validate needs equal square shapes, got A " +
                         A.shape_string() + ", J " + J.shape_string());
  int n = A.rows();
  if (static_cast<int>(alphabet.size()) != n)
    throw DimensionError("alphabet size " + std::to_string(alphabet.size()) +
                         " does not match matrix dimension " +
                         std::to_string(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (A.at(i, j) != 0 && A.at(i, j) != 1)
        throw ValidationError("A has a non-zero-one entry at " + cell(i, j));
      if (J.at(i, j) != 0 && J.at(i, j) != 1)
        throw ValidationError("J has a non-zero-one entry at " + cell(i, j));
    }
  std::vector<int> tau;
  if (!exact::permutation_of(J, tau))
    throw ValidationError("J is not a permutation matrix");
  IntMatrix Jp = J.pow(2 * static_cast<unsigned long>(r));
  IntMatrix I = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (Jp.at(i, j) != I.at(i, j))
        throw ValidationError("J^{2r} != I first differs at " + cell(i, j));
  IntMatrix lhs = A * J;
  IntMatrix rhs = J * A.transpose();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (lhs.at(i, j) != rhs.at(i, j))
        throw ValidationError("AJ != JA^T first differs at " + cell(i, j));
  return ReversalSFT{std::move(alphabet), std::move(A), std::move(J), r,
                     std::move(tau)};
}

int half_order_of(const std::vector<int>& tau) {
  long ord = perm_order(tau);
  return static_cast<int>(ord % 2 == 0 ? ord / 2 : ord);
}

Int fixed_count_trace(const ReversalSFT& sys, long m, int l) {
  if (m < 1) throw Error("fixed_count_trace needs m >= 1");
  if (l < 0 || l >= sys.r)
    throw Error("l = " + std::to_string(l) + " out of range [0, " +
                std::to_string(sys.r) + ")");
  if (sys.empty()) return 0;
  return exact::mat_pow_trace(sys.A, sys.J, static_cast<unsigned long>(m),
                              static_cast<unsigned long>(2 * l));
}

Int fixed_count_bruteforce_twist(const IntMatrix& A,
                                 const std::vector<int>& twist, long m,
                                 WorkBudget& budget) {
  int n = A.rows();
  if (n == 0) return 0;
  if (m < 1) throw Error("window length must be >= 1");
  auto adj = adjacency_table(A);
  auto inv = perm_inverse(twist);
  long d = perm_order(twist);
  long P = m * d;
  // inv^q for q = 0..d-1
  std::vector<std::vector<int>> invp(d);
  invp[0] = perm_identity(n);
  for (long q = 1; q < d; ++q) invp[q] = perm_compose(invp[q - 1], inv);

  Int count = 0;
  std::vector<int> x(m);
  std::vector<int> w(P);
  auto check_leaf = [&]() {
    for (long q = 0; q < d; ++q)
      for (long i = 0; i < m; ++i) w[q * m + i] = invp[q][x[i]];
    for (long t = 0; t < P; ++t)
      if (!adj[w[t]][w[(t + 1) % P]]) return;
    ++count;
  };
  std::function<void(long)> rec = [&](long pos) {
    budget.charge();
    if (pos == m) {
      check_leaf();
      return;
    }
    for (int s = 0; s < n; ++s) {
      if (pos > 0 && !adj[x[pos - 1]][s]) continue;
      x[pos] = s;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

Int fixed_count_bruteforce(const ReversalSFT& sys, long m, int l,
                           WorkBudget& budget) {
  if (l < 0 || l >= sys.r)
    throw Error("l = " + std::to_string(l) + " out of range [0, " +
                std::to_string(sys.r) + ")");
  if (sys.empty()) return 0;
  return fixed_count_bruteforce_twist(sys.A, perm_pow(sys.tau, 2 * l), m,
                                      budget);
}

ReversalSFT restrict_fixed_subsystem(const ReversalSFT& sys, int l) {
  if (l < 1 || l > sys.r)
    throw Error("restriction index l = " + std::to_string(l) +
                " out of range [1, " + std::to_string(sys.r) + "]");
  auto tau2l = perm_pow(sys.tau, 2 * l);
  std::vector<int> keep;
  for (int a = 0; a < sys.size(); ++a)
    if (tau2l[a] == a) keep.push_back(a);
  int k = static_cast<int>(keep.size());
  std::vector<int> pos(sys.size(), -1);
  for (int i = 0; i < k; ++i) pos[keep[i]] = i;

  ReversalSFT sub;
  sub.A = IntMatrix(k, k);
  sub.J = IntMatrix(k, k);
  sub.tau.resize(k);
  for (int i = 0; i < k; ++i) {
    sub.alphabet.push_back(sys.alphabet[keep[i]]);
    sub.tau[i] = pos[sys.tau[keep[i]]];  // tau preserves the fixed alphabet
    for (int j = 0; j < k; ++j) {
      sub.A.at(i, j) = sys.A.at(keep[i], keep[j]);
      sub.J.at(i, j) = sys.J.at(keep[i], keep[j]);
    }
  }
  sub.r = half_order_of(sub.tau);
  return sub;
}

FlipView make_flip_view(const ReversalSFT& sys, int d) {
  if (d < 1 || d % 2 == 0) throw Error("flip power d must be odd and >= 1");
  if (d > sys.r) throw Error("flip power d exceeds r");
  FlipView fv;
  fv.base = restrict_fixed_subsystem(sys, d);
  // tau^d on the original alphabet, transported to the restricted indexing
  auto taud = perm_pow(sys.tau, d);
  std::vector<int> pos(sys.size(), -1);
  int idx = 0;
  auto tau2d = perm_pow(sys.tau, 2 * d);
  for (int a = 0; a < sys.size(); ++a)
    if (tau2d[a] == a) pos[a] = idx++;
  fv.flip.resize(fv.base.size());
  for (int a = 0; a < sys.size(); ++a)
    if (pos[a] >= 0) fv.flip[pos[a]] = pos[taud[a]];
  for (int a = 0; a < fv.base.size(); ++a)
    if (fv.flip[fv.flip[a]] != a)
      throw ConsistencyError("flip symbol map is not an involution");
  return fv;
}

std::array<Int, 3> flip_counts_trace(const FlipView& fv, long m) {
  if (m < 1) throw Error("flip_counts_trace needs m >= 1");
  if (fv.base.empty()) return {Int(0), Int(0), Int(0)};
  const IntMatrix& A = fv.base.A;
  IntMatrix J = exact::permutation_matrix(fv.flip);
  IntMatrix Am1 = A.pow(static_cast<unsigned long>(m - 1));
  IntMatrix Jd = exact::diag_part(J);
  IntMatrix AJd = exact::diag_part(A * J);
  IntMatrix JAd = exact::diag_part(J * A);
  Int p_odd = exact::entry_sum(Jd * Am1 * AJd);
  Int p_even0 = exact::entry_sum(Jd * A.pow(static_cast<unsigned long>(m)) * Jd);
  Int p_even1 = exact::entry_sum(JAd * Am1 * AJd);
  return {p_odd, p_even0, p_even1};
}

namespace {

// Counts cyclic adjacency words x_0..x_{n-1} with x_i = g(x_{(-i-e) mod n})
// for all i. Shared by the flip oracle (g an involution) and the
// two-generator subgroup oracle (g = tau^d).
Int mirror_window_count(const IntMatrix& A, const std::vector<int>& g, long n,
                        long e, WorkBudget& budget) {
  int nsym = A.rows();
  if (nsym == 0) return 0;
  if (n < 1) throw Error("window length must be >= 1");
  auto adj = adjacency_table(A);
  auto partner = [&](long i) { return ((-i - e) % n + n) % n; };
  Int count = 0;
  std::vector<int> x(n);
  std::function<void(long)> rec = [&](long pos) {
    budget.charge();
    if (pos == n) {
      if (adj[x[n - 1]][x[0]]) ++count;
      return;
    }
    long p = partner(pos);
    for (int s = 0; s < nsym; ++s) {
      if (pos > 0 && !adj[x[pos - 1]][s]) continue;
      if (p == pos) {
        if (g[s] != s) continue;
      } else if (p < pos) {
        // both directions of the mirror condition
        if (x[p] != g[s] || s != g[x[p]]) continue;
      }
      x[pos] = s;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

Int flip_count_bruteforce(const FlipView& fv, long n, long e,
                          WorkBudget& budget) {
  if (fv.base.empty()) return 0;
  return mirror_window_count(fv.base.A, fv.flip, n, e, budget);
}

Int mixed_fixed_count_bruteforce(const ReversalSFT& sys, long m, long j, int d,
                                 WorkBudget& budget) {
  if (d < 1 || d % 2 == 0) throw Error("reversal power d must be odd");
  if (sys.empty()) return 0;
  return mirror_window_count(sys.A, perm_pow(sys.tau, d), m, j, budget);
}

// ---------------------------------------------------------------------------
// Recoding
// ---------------------------------------------------------------------------

namespace {

struct TrimResult {
  std::vector<int> keep;              // original symbol indices kept
  std::vector<std::vector<char>> adj; // restricted adjacency on kept symbols,
                                      // still indexed by ORIGINAL symbols
  std::vector<char> alive;
};

TrimResult trim_presentation(const SftPresentation& X) {
  if (!X.adj.is_square())
    throw DimensionError("presentation adjacency must be square, got " +
                         X.adj.shape_string());
  int n = X.adj.rows();
  TrimResult t;
  t.adj = adjacency_table(X.adj);
  t.alive.assign(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      if (!t.alive[a]) continue;
      bool has_out = false, has_in = false;
      for (int b = 0; b < n; ++b) {
        if (t.alive[b] && t.adj[a][b]) has_out = true;
        if (t.alive[b] && t.adj[b][a]) has_in = true;
      }
      if (!has_out || !has_in) {
        t.alive[a] = 0;
        changed = true;
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    if (t.alive[a])
      t.keep.push_back(a);
    else
      for (int b = 0; b < n; ++b) t.adj[a][b] = t.adj[b][a] = 0;
  }
  return t;
}

void enumerate_blocks(const TrimResult& t, int width, WorkBudget& budget,
                      const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> b(width);
  std::function<void(int)> rec = [&](int pos) {
    budget.charge();
    if (pos == width) {
      fn(b);
      return;
    }
    for (int s : t.keep) {
      if (pos > 0 && !t.adj[b[pos - 1]][s]) continue;
      b[pos] = s;
      rec(pos + 1);
    }
  };
  if (!t.keep.empty()) rec(0);
}

std::string block_string(const SftPresentation& X, const std::vector<int>& b) {
  std::string s;
  for (int v : b) {
    if (!s.empty()) s += ".";
    s += X.alphabet[v];
  }
  return s;
}

int checked_rule_output(const SftPresentation& X, const LocalReversalRule& rule,
                        const std::vector<int>& window) {
  int out = rule.map(window);
  if (out < 0 || out >= static_cast<int>(X.alphabet.size()))
    throw ValidationError("rule output out of alphabet range on block " +
                          block_string(X, window));
  return out;
}

// phi applied once to a centered odd-width block; width shrinks by window-1.
std::vector<int> block_apply(const SftPresentation& X,
                             const LocalReversalRule& rule,
                             const std::vector<int>& b) {
  int c = (rule.window - 1) / 2;
  int K = (static_cast<int>(b.size()) - 1) / 2;
  int outK = K - c;
  std::vector<int> out(2 * outK + 1);
  std::vector<int> win(rule.window);
  for (int i = -outK; i <= outK; ++i) {
    for (int tpos = 0; tpos < rule.window; ++tpos)
      win[tpos] = b[(-i - c + tpos) + K];
    out[i + outK] = checked_rule_output(X, rule, win);
  }
  return out;
}

}  // namespace

RecodedSystem one_block_recode(const SftPresentation& X,
                               const LocalReversalRule& rule,
                               WorkBudget& budget) {
  if (rule.window < 1 || rule.window % 2 == 0)
    throw Error("rule window must be odd and positive");
  if (rule.order_r < 1) throw Error("rule order parameter must be positive");
  const int c = (rule.window - 1) / 2;
  const int r = rule.order_r;
  TrimResult trim = trim_presentation(X);

  RecodedSystem out;
  const int R = (2 * r - 1) * c;
  const int n = 2 * R + 1;
  out.block_length = n;
  out.shift_power = R;
  if (trim.keep.empty()) {
    out.sys = validate({}, IntMatrix(0, 0), IntMatrix(0, 0), r);
    return out;
  }

  // Reversal law: consecutive outputs of the rule must traverse edges
  // backwards. Checked on every admissible block wide enough to determine
  // two adjacent outputs.
  enumerate_blocks(trim, 2 * c + 2, budget, [&](const std::vector<int>& u) {
    std::vector<int> right(u.begin() + 1, u.end());
    std::vector<int> left(u.begin(), u.end() - 1);
    int si = checked_rule_output(X, rule, right);
    int si1 = checked_rule_output(X, rule, left);
    if (!trim.adj[si][si1])
      throw ValidationError("rule violates the reversal law on block " +
                            block_string(X, u));
  });
  // Order: applying the rule 2r times must return the centre symbol.
  enumerate_blocks(trim, 4 * r * c + 1, budget, [&](const std::vector<int>& u) {
    std::vector<int> b = u;
    for (int k = 0; k < 2 * r; ++k) b = block_apply(X, rule, b);
    if (b[0] != u[(static_cast<int>(u.size()) - 1) / 2])
      throw ValidationError("rule is not of order " + std::to_string(2 * r) +
                            ": witness block " + block_string(X, u));
  });

  // Tuple alphabet: (phi^k(x)_0)_{k < 2r} computed per centred block.
  std::map<std::vector<int>, int> tuple_ids;
  auto intern_tuple = [&](const std::vector<int>& centred) {
    std::vector<int> tup(2 * r);
    std::vector<int> b = centred;
    for (int k = 0; k < 2 * r; ++k) {
      tup[k] = b[(static_cast<int>(b.size()) - 1) / 2];
      if (k + 1 < 2 * r) b = block_apply(X, rule, b);
    }
    auto [it, inserted] =
        tuple_ids.emplace(tup, static_cast<int>(tuple_ids.size()));
    if (inserted) out.tuples.push_back(tup);
    return it->second;
  };

  std::set<std::vector<int>> words_np1;
  enumerate_blocks(trim, n + 1 + 2 * R, budget, [&](const std::vector<int>& b) {
    std::vector<int> y(n + 1);
    for (int t = 0; t <= n; ++t) {
      std::vector<int> sub(b.begin() + t, b.begin() + t + 2 * R + 1);
      y[t] = intern_tuple(sub);
    }
    words_np1.insert(y);
  });

  std::set<std::vector<int>> state_set;
  for (const auto& yw : words_np1) {
    state_set.insert(std::vector<int>(yw.begin(), yw.end() - 1));
    state_set.insert(std::vector<int>(yw.begin() + 1, yw.end()));
  }
  std::vector<std::vector<int>> states(state_set.begin(), state_set.end());
  std::map<std::vector<int>, int> state_ids;
  for (std::size_t i = 0; i < states.size(); ++i)
    state_ids[states[i]] = static_cast<int>(i);

  int ns = static_cast<int>(states.size());
  IntMatrix A(ns, ns), J(ns, ns);
  for (int i = 0; i < ns; ++i)
    for (int j2 = 0; j2 < ns; ++j2) {
      bool overlap = std::equal(states[i].begin() + 1, states[i].end(),
                                states[j2].begin());
      if (!overlap) continue;
      std::vector<int> glued = states[i];
      glued.push_back(states[j2].back());
      if (words_np1.count(glued)) A.at(i, j2) = 1;
    }

  // tuple rotation = the reversal's symbol map on the tuple alphabet
  auto rot_tuple = [&](int id) {
    std::vector<int> t = out.tuples[id];
    std::rotate(t.begin(), t.begin() + 1, t.end());
    auto it = tuple_ids.find(t);
    if (it == tuple_ids.end())
      throw ConsistencyError("tuple alphabet not closed under rotation");
    return it->second;
  };
  for (int i = 0; i < ns; ++i) {
    std::vector<int> v(n);
    for (int p = 0; p < n; ++p) v[p] = rot_tuple(states[i][n - 1 - p]);
    auto it = state_ids.find(v);
    if (it == state_ids.end())
      throw ValidationError("reversed image of an admissible block is not "
                            "admissible; the rule is not a reversal of the "
                            "presented shift");
    J.at(i, it->second) = 1;
  }

  std::vector<std::string> names(ns);
  for (int i = 0; i < ns; ++i) names[i] = "q" + std::to_string(i);
  out.sys = validate(std::move(names), std::move(A), std::move(J), r);
  out.state_words = std::move(states);
  return out;
}

Int rule_fixed_count_bruteforce(const SftPresentation& X,
                                const LocalReversalRule& rule, long m, int l,
                                WorkBudget& budget) {
  if (m < 1) throw Error("rule_fixed_count_bruteforce needs m >= 1");
  const int r = rule.order_r;
  if (l < 0 || l >= r) throw Error("l out of range");
  const int c = (rule.window - 1) / 2;
  TrimResult trim = trim_presentation(X);
  if (trim.keep.empty()) return 0;
  long d = l == 0 ? 1 : 2 * r / std::gcd(2L * l, 2L * r);
  long P = m * d;

  auto cyc_apply = [&](const std::vector<int>& x) {
    std::vector<int> y(P);
    std::vector<int> win(rule.window);
    for (long i = 0; i < P; ++i) {
      for (int t = 0; t < rule.window; ++t) {
        long idx = (-i - c + t) % P;
        if (idx < 0) idx += P;
        win[t] = x[idx];
      }
      y[i] = checked_rule_output(X, rule, win);
    }
    return y;
  };

  Int count = 0;
  std::vector<int> x(P);
  std::function<void(long)> rec = [&](long pos) {
    budget.charge();
    if (pos == P) {
      if (!trim.adj[x[P - 1]][x[0]]) return;
      std::vector<int> y = x;
      for (int k = 0; k < 2 * l; ++k) y = cyc_apply(y);
      for (long i = 0; i < P; ++i)
        if (y[(i + m) % P] != x[i]) return;
      ++count;
      return;
    }
    for (int s : trim.keep) {
      if (pos > 0 && !trim.adj[x[pos - 1]][s]) continue;
      x[pos] = s;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace revzeta::sft
