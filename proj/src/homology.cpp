#include "dimsub/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dimsub {

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Integer> v = a.invariants();
  v.insert(v.end(), b.invariants().begin(), b.invariants().end());
  return FgAbGroup::from_invariants(v);
}

namespace {

// H_* of a cyclic group Z/d (d = 0 for Z) up to degree k
std::vector<FgAbGroup> cyclic_homology(const Integer& d, int k) {
  std::vector<FgAbGroup> h;
  for (int i = 0; i <= k; ++i) {
    if (i == 0) h.push_back(FgAbGroup::free(1));
    else if (d == 0) h.push_back(i == 1 ? FgAbGroup::free(1) : FgAbGroup());
    else h.push_back(i % 2 == 1 ? FgAbGroup::from_invariants({d}) : FgAbGroup());
  }
  return h;
}

std::vector<FgAbGroup> kunneth(const std::vector<FgAbGroup>& x, const std::vector<FgAbGroup>& y, int k) {
  std::vector<FgAbGroup> out(static_cast<std::size_t>(k + 1));
  for (int n = 0; n <= k; ++n) {
    FgAbGroup acc;
    for (int i = 0; i <= n; ++i) acc = direct_sum(acc, tensor(x[i], y[n - i]));
    for (int i = 0; i <= n - 1; ++i) acc = direct_sum(acc, tor(x[i], y[n - 1 - i]));
    out[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

}  // namespace

std::vector<FgAbGroup> homology_upto(const FgAbGroup& a, int k) {
  if (k < 0) throw Error("homology degree must be >= 0");
  std::vector<FgAbGroup> h = cyclic_homology(1, k);  // trivial group
  for (const auto& d : a.invariants()) h = kunneth(h, cyclic_homology(d, k), k);
  return h;
}

HomologyResult homology(const FgAbGroup& a, int k) { return {a, k, homology_upto(a, k).back()}; }

FgAbGroup example_sec4(std::size_t a_rank, std::size_t b_rank) {
  return tensor(homology(FgAbGroup::free(a_rank), 3).value, functor_eval(QuadFunctor::Ext, FgAbGroup::free(b_rank)).value);
}

std::size_t h3_lambda2_rank(const FgAbGroup& a, const FgAbGroup& b) {
  return tensor(homology(a, 3).value, functor_eval(QuadFunctor::Ext, b).value).free_rank();
}

// ---------------------------------------------------------------------------
// sparse Smith form: unit pivots first, dense SNF on what is left

SparseSnf sparse_snf(std::vector<SparseVec> rows_in, std::size_t cols) {
  std::vector<std::map<int, Integer>> rows;
  std::vector<std::set<int>> col_rows(cols);
  for (auto& r : rows_in) {
    if (r.empty()) continue;
    int idx = static_cast<int>(rows.size());
    rows.emplace_back(r.begin(), r.end());
    for (const auto& [c, x] : r) col_rows[static_cast<std::size_t>(c)].insert(idx);
  }
  std::vector<bool> alive(rows.size(), true);
  SparseSnf out;

  auto eliminate = [&](int pr, int pc) {
    const Integer piv = rows[pr].at(pc);  // +-1
    std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (int t : targets) {
      if (t == pr) continue;
      Integer m = rows[t].at(pc) * piv;
      for (const auto& [c, x] : rows[pr]) {
        Integer& y = rows[t][c];
        bool was_zero = y == 0;
        y -= m * x;
        if (y == 0) {
          rows[t].erase(c);
          col_rows[static_cast<std::size_t>(c)].erase(t);
        } else if (was_zero) {
          col_rows[static_cast<std::size_t>(c)].insert(t);
        }
      }
      if (rows[t].empty()) alive[t] = false;
    }
    // drop the pivot row and column
    for (const auto& [c, x] : rows[pr]) col_rows[static_cast<std::size_t>(c)].erase(pr);
    rows[pr].clear();
    alive[pr] = false;
    ++out.rank;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    // rows ordered by length so that fill-in stays small
    std::vector<int> order;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (alive[i]) order.push_back(static_cast<int>(i));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rows[a].size() < rows[b].size(); });
    for (int r : order) {
      if (!alive[r]) continue;
      int best = -1;
      std::size_t best_len = 0;
      for (const auto& [c, x] : rows[r]) {
        if (abs(x) != 1) continue;
        std::size_t len = col_rows[static_cast<std::size_t>(c)].size();
        if (best < 0 || len < best_len) best = c, best_len = len;
      }
      if (best < 0) continue;
      eliminate(r, best);
      progress = true;
    }
  }

  // dense remainder
  std::vector<int> live_rows, live_cols;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (alive[i] && !rows[i].empty()) live_rows.push_back(static_cast<int>(i));
  for (std::size_t c = 0; c < cols; ++c)
    if (!col_rows[c].empty()) live_cols.push_back(static_cast<int>(c));
  if (live_rows.empty()) return out;
  std::map<int, std::size_t> col_pos;
  for (std::size_t j = 0; j < live_cols.size(); ++j) col_pos[live_cols[j]] = j;
  IntMatrix m(live_rows.size(), live_cols.size());
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, x] : rows[live_rows[i]]) m(i, col_pos.at(c)) = x;
  for (const auto& d : snf(m)) {
    ++out.rank;
    if (d != 1) out.torsion.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// bar complex

namespace {

struct FiniteGroup {
  std::vector<long> d;
  long size = 1;

  long add(long a, long b) const {
    long out = 0, scale = 1;
    for (long m : d) {
      out += ((a % m + b % m) % m) * scale;
      a /= m;
      b /= m;
      scale *= m;
    }
    return out;
  }
};

// normalized k-chains: tuples of nonidentity elements, encoded base (size - 1)
struct Chains {
  long base;
  int k;
  long count() const {
    long c = 1;
    for (int i = 0; i < k; ++i) c *= base;
    return c;
  }
  std::vector<long> decode(long x) const {
    std::vector<long> t(static_cast<std::size_t>(k));
    for (int i = k - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = x % base + 1;
      x /= base;
    }
    return t;
  }
  // -1 for a degenerate tuple
  long encode(const std::vector<long>& t) const {
    long x = 0;
    for (long g : t) {
      if (g == 0) return -1;
      x = x * base + (g - 1);
    }
    return x;
  }
};

// rows: boundary of each k-chain in (k-1)-chains, trivial coefficients
std::vector<SparseVec> boundary(const FiniteGroup& g, int k) {
  Chains src{g.size - 1, k}, dst{g.size - 1, k - 1};
  std::vector<SparseVec> rows;
  for (long x = 0; x < src.count(); ++x) {
    auto t = src.decode(x);
    std::map<int, Integer> acc;
    auto add = [&](const std::vector<long>& face, int sign) {
      long e = dst.encode(face);
      if (e >= 0) acc[static_cast<int>(e)] += sign;
    };
    add(std::vector<long>(t.begin() + 1, t.end()), 1);
    for (int i = 0; i + 1 < k; ++i) {
      std::vector<long> face(t.begin(), t.begin() + i);
      face.push_back(g.add(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i + 1)]));
      face.insert(face.end(), t.begin() + i + 2, t.end());
      add(face, (i + 1) % 2 == 0 ? 1 : -1);
    }
    add(std::vector<long>(t.begin(), t.end() - 1), k % 2 == 0 ? 1 : -1);
    SparseVec row;
    for (const auto& [c, v] : acc)
      if (v != 0) row.emplace_back(c, v);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

FgAbGroup bar_oracle(const FgAbGroup& grp, int k, int max_order, int max_degree) {
  if (k < 0) throw Error("homology degree must be >= 0");
  auto order = grp.order();
  if (!order) throw Error("bar_oracle needs a finite group");
  if (*order > max_order || k > max_degree)
    throw CapExceeded("bar_oracle limited to order <= " + std::to_string(max_order) + " and degree <= " +
                      std::to_string(max_degree));
  if (k == 0) return FgAbGroup::free(1);
  FiniteGroup g;
  for (const auto& d : grp.invariants()) g.d.push_back(to_long(d));
  g.size = to_long(*order);
  if (g.size == 1) return FgAbGroup();

  // H_k = Z^(c_k - r_k - r_{k+1}) + torsion of coker(d_{k+1})
  long ck = Chains{g.size - 1, k}.count();
  std::size_t rk = sparse_snf(boundary(g, k), static_cast<std::size_t>(Chains{g.size - 1, k - 1}.count())).rank;
  SparseSnf next = sparse_snf(boundary(g, k + 1), static_cast<std::size_t>(ck));
  std::vector<Integer> inv = next.torsion;
  long free_rank = ck - static_cast<long>(rk) - static_cast<long>(next.rank);
  inv.insert(inv.end(), static_cast<std::size_t>(free_rank), Integer(0));
  return FgAbGroup::from_invariants(inv);
}

}  // namespace dimsub
