#include "revzeta/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace revzeta::grp {

namespace {

int mod2r(long k, int r) {
  int m = static_cast<int>(k % (2 * r));
  if (m < 0) m += 2 * r;
  return m;
}

void check_same_r(const GroupElement& x, const GroupElement& y) {
  if (x.order_r != y.order_r)
    throw Error("group elements from different groups: r = " +
                std::to_string(x.order_r) + " vs r = " +
                std::to_string(y.order_r));
}

}  // namespace

std::string GroupElement::to_string() const {
  std::string s;
  if (exp_a != 0) s += "a^" + exp_a.get_str();
  if (exp_b != 0) s += "b^" + std::to_string(exp_b);
  if (s.empty()) s = "1";
  return s;
}

GroupElement g_identity(int r) { return {Int(0), 0, r}; }

GroupElement g_make(Int exp_a, long exp_b, int r) {
  if (r < 1) throw Error("group order parameter r must be positive");
  return {std::move(exp_a), mod2r(exp_b, r), r};
}

GroupElement g_mul(const GroupElement& x, const GroupElement& y) {
  check_same_r(x, y);
  Int n = x.exp_a + ((x.exp_b % 2 == 0) ? y.exp_a : -y.exp_a);
  return {std::move(n), mod2r(x.exp_b + y.exp_b, x.order_r), x.order_r};
}

GroupElement g_inv(const GroupElement& x) {
  // (a^n b^k)^{-1} = a^{-(-1)^k n} b^{-k}
  Int n = (x.exp_b % 2 == 0) ? -x.exp_a : x.exp_a;
  return {std::move(n), mod2r(-x.exp_b, x.order_r), x.order_r};
}

GroupElement g_pow(const GroupElement& x, long e) {
  GroupElement acc = g_identity(x.order_r);
  GroupElement base = e < 0 ? g_inv(x) : x;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  for (; k > 0; --k) acc = g_mul(acc, base);
  return acc;
}

int order_of_b_power(int i, int r) {
  if (i == 0) return 1;
  return 2 * r / std::gcd(i, 2 * r);
}

long SubgroupDescriptor::index() const {
  return family == Family::F1 ? 2 * k * m : (2 * k - 1) * m;
}

std::array<GroupElement, 2> SubgroupDescriptor::generators() const {
  if (family == Family::F1)
    return {g_make(Int(m), 2 * second, r), g_make(Int(0), 2 * k, r)};
  return {g_make(Int(m), 0, r), g_make(Int(second), 2 * k - 1, r)};
}

std::string SubgroupDescriptor::text() const {
  std::string s = family == Family::F1 ? "F1(m=" : "F2(m=";
  s += std::to_string(m);
  s += family == Family::F1 ? ",l=" : ",j=";
  s += std::to_string(second) + ",k=" + std::to_string(k) + ")@r=" +
       std::to_string(r);
  return s;
}

std::vector<SubgroupDescriptor> enumerate_subgroups(int r, long index_max) {
  if (r < 1) throw Error("enumerate_subgroups: r must be positive");
  std::vector<SubgroupDescriptor> out;
  for (long k = 1; k <= r; ++k) {
    if (r % k != 0) continue;
    for (long m = 1; 2 * k * m <= index_max; ++m)
      for (long l = 0; l < k; ++l)
        out.push_back({Family::F1, m, l, k, r});
  }
  for (long k = 1; 2 * k - 1 <= r; ++k) {
    if (r % (2 * k - 1) != 0) continue;
    for (long m = 1; (2 * k - 1) * m <= index_max; ++m)
      for (long j = 0; j < m; ++j)
        out.push_back({Family::F2, m, j, k, r});
  }
  std::sort(out.begin(), out.end(),
            [](const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
              if (a.index() != b.index()) return a.index() < b.index();
              if (a.family != b.family) return a.family < b.family;
              if (a.m != b.m) return a.m < b.m;
              if (a.second != b.second) return a.second < b.second;
              return a.k < b.k;
            });
  return out;
}

namespace {

// Membership structure for a finitely generated subgroup H of G_{2r}.
// H is determined by step (H meets <a> in <a^step>; step 0 means trivially)
// and one a-exponent representative per attained b-exponent. Saturation
// closes the representative set under products and inverses; every element
// ever recorded is a word in the generators, so the fixpoint is exactly H.
class Membership {
 public:
  Membership(const std::vector<GroupElement>& gens, int r) : r_(r) {
    rep_.assign(2 * r, std::nullopt);
    rep_[0] = Int(0);
    for (const auto& g : gens) {
      if (g.order_r != r) throw Error("generator has mismatched r");
      add(g.exp_a, g.exp_b);
      GroupElement inv = g_inv(g);
      add(inv.exp_a, inv.exp_b);
    }
    saturate();
  }

  bool contains(const GroupElement& g) const {
    if (!rep_[g.exp_b]) return false;
    Int d = g.exp_a - *rep_[g.exp_b];
    if (step_ == 0) return d == 0;
    return d % step_ == 0;
  }

 private:
  void add(const Int& n, int k) {
    Int v = reduce(n);
    if (!rep_[k]) {
      rep_[k] = v;
      changed_ = true;
      return;
    }
    Int d = v - *rep_[k];
    if (d == 0) return;
    if (d < 0) d = -d;
    Int g;
    mpz_gcd(g.get_mpz_t(), step_.get_mpz_t(), d.get_mpz_t());
    if (g != step_) {
      step_ = g;
      changed_ = true;
      for (auto& rv : rep_)
        if (rv) *rv = reduce(*rv);
    }
  }

  Int reduce(const Int& n) const {
    if (step_ == 0) return n;
    Int v = n % step_;
    if (v < 0) v += step_;
    return v;
  }

  void saturate() {
    while (changed_) {
      changed_ = false;
      std::vector<std::pair<Int, int>> elems;
      for (int k = 0; k < 2 * r_; ++k)
        if (rep_[k]) elems.emplace_back(*rep_[k], k);
      for (const auto& [n1, k1] : elems) {
        // inverse
        Int ni = (k1 % 2 == 0) ? -n1 : n1;
        add(ni, (2 * r_ - k1) % (2 * r_));
        for (const auto& [n2, k2] : elems) {
          Int np = n1 + ((k1 % 2 == 0) ? n2 : -n2);
          add(np, (k1 + k2) % (2 * r_));
        }
      }
    }
  }

  int r_;
  Int step_ = 0;
  std::vector<std::optional<Int>> rep_;
  bool changed_ = true;
};

std::array<GroupElement, 4> step_elements(int r) {
  return {g_make(Int(1), 0, r), g_make(Int(-1), 0, r), g_make(Int(0), 1, r),
          g_make(Int(0), -1, r)};
}

}  // namespace

std::optional<long> coset_enumeration_index(
    const std::vector<GroupElement>& generators, int r,
    std::size_t coset_bound) {
  if (coset_bound < 1) throw Error("coset bound must be >= 1");
  Membership H(generators, r);
  auto same_coset = [&](const GroupElement& x, const GroupElement& y) {
    return H.contains(g_mul(x, g_inv(y)));
  };
  std::vector<GroupElement> reps = {g_identity(r)};
  std::deque<std::size_t> queue = {0};
  auto steps = step_elements(r);
  while (!queue.empty()) {
    GroupElement g = reps[queue.front()];
    queue.pop_front();
    for (const auto& s : steps) {
      GroupElement h = g_mul(g, s);
      bool known = false;
      for (const auto& rep : reps)
        if (same_coset(h, rep)) {
          known = true;
          break;
        }
      if (!known) {
        reps.push_back(h);
        if (reps.size() > coset_bound) return std::nullopt;
        queue.push_back(reps.size() - 1);
      }
    }
  }
  return static_cast<long>(reps.size());
}

std::vector<std::array<int, 4>> canonical_coset_table(
    const std::vector<GroupElement>& generators, int r, std::size_t bound) {
  Membership H(generators, r);
  auto same_coset = [&](const GroupElement& x, const GroupElement& y) {
    return H.contains(g_mul(x, g_inv(y)));
  };
  std::vector<GroupElement> reps = {g_identity(r)};
  std::vector<std::array<int, 4>> table;
  auto steps = step_elements(r);
  for (std::size_t c = 0; c < reps.size(); ++c) {
    GroupElement g = reps[c];  // copy: reps may reallocate below
    std::array<int, 4> row{};
    for (int si = 0; si < 4; ++si) {
      GroupElement h = g_mul(g, steps[si]);
      int target = -1;
      for (std::size_t i = 0; i < reps.size(); ++i)
        if (same_coset(h, reps[i])) {
          target = static_cast<int>(i);
          break;
        }
      if (target < 0) {
        reps.push_back(h);
        if (reps.size() > bound)
          throw BudgetError("coset table exceeded bound " +
                            std::to_string(bound));
        target = static_cast<int>(reps.size() - 1);
      }
      row[si] = target;
    }
    table.push_back(row);
  }
  return table;
}

FixedPointSpec subgroup_fixed_spec(const SubgroupDescriptor& d) {
  FixedPointSpec spec;
  if (d.family == Family::F1) {
    spec.conditions.push_back({d.m, 2 * d.second});
    if (d.k != d.r) spec.conditions.push_back({0, 2 * d.k});
  } else {
    spec.conditions.push_back({d.m, 0});
    spec.conditions.push_back({d.second, 2 * d.k - 1});
    spec.flip_membership_hint = 2 * (2 * d.k - 1);
  }
  return spec;
}

}  // namespace revzeta::grp
