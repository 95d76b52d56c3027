#include "dimsub/lattice.hpp"

#include <algorithm>

namespace dimsub {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw Error("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::append_row(const std::vector<Integer>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product dimension mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
    }
  return p;
}

SparseVec to_sparse(const std::vector<Integer>& dense) {
  SparseVec v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.emplace_back(static_cast<int>(i), dense[i]);
  return v;
}

std::vector<Integer> to_dense(const SparseVec& v, std::size_t dim) {
  std::vector<Integer> d(dim);
  for (const auto& [i, c] : v) d.at(static_cast<std::size_t>(i)) = c;
  return d;
}

namespace {

/// ca*a + cb*b
SparseVec combine(const Integer& ca, const SparseVec& a, const Integer& cb, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Integer tmp;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      tmp = ca * a[i].second;
      if (tmp != 0) out.emplace_back(a[i].first, tmp);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      tmp = cb * b[j].second;
      if (tmp != 0) out.emplace_back(b[j].first, tmp);
      ++j;
    } else {
      tmp = ca * a[i].second + cb * b[j].second;
      if (tmp != 0) out.emplace_back(a[i].first, tmp);
      ++i;
      ++j;
    }
  }
  return out;
}

void normalize_sign(SparseVec& v) {
  if (!v.empty() && v[0].second < 0)
    for (auto& [i, c] : v) c = -c;
}

Integer entry_at(const SparseVec& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& e, int k) { return e.first < k; });
  return (it != v.end() && it->first == idx) ? it->second : Integer(0);
}

}  // namespace

bool LatticeBuilder::insert(SparseVec v) {
  bool changed = false;
  while (!v.empty()) {
    int p = v[0].first;
    if (static_cast<std::size_t>(p) >= dim_) throw Error("vector index beyond ambient dimension");
    auto it = rows_.find(p);
    if (it == rows_.end()) {
      normalize_sign(v);
      rows_.emplace(p, std::move(v));
      return true;
    }
    SparseVec& r = it->second;
    const Integer rp = r[0].second;
    const Integer vp = v[0].second;
    if (mpz_divisible_p(vp.get_mpz_t(), rp.get_mpz_t())) {
      Integer q = vp / rp;
      v = combine(1, v, -q, r);
      continue;
    }
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rp.get_mpz_t(), vp.get_mpz_t());
    SparseVec new_r = combine(s, r, t, v);
    SparseVec rest = combine(Integer(rp / g), v, Integer(-(vp / g)), r);
    normalize_sign(new_r);
    r = std::move(new_r);
    v = std::move(rest);
    changed = true;
  }
  return changed;
}

SparseVec LatticeBuilder::reduce(SparseVec v) const {
  while (!v.empty()) {
    auto it = rows_.find(v[0].first);
    if (it == rows_.end()) return v;
    const Integer& rp = it->second[0].second;
    if (!mpz_divisible_p(v[0].second.get_mpz_t(), rp.get_mpz_t())) return v;
    Integer q = v[0].second / rp;
    v = combine(1, v, -q, it->second);
  }
  return v;
}

IntLattice IntLattice::from_builder(const LatticeBuilder& b) {
  IntLattice l(b.dim());
  for (const auto& [p, r] : b.rows()) l.basis_.push_back(r);
  // Reduce entries above pivots, last row first.
  for (std::size_t i = l.basis_.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < l.basis_.size(); ++j) {
      int pj = l.basis_[j][0].first;
      Integer e = entry_at(l.basis_[i], pj);
      if (e == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), e.get_mpz_t(), l.basis_[j][0].second.get_mpz_t());
      if (q != 0) l.basis_[i] = combine(1, l.basis_[i], -q, l.basis_[j]);
    }
  }
  return l;
}

IntLattice IntLattice::from_rows(std::size_t dim, const std::vector<SparseVec>& rows) {
  LatticeBuilder b(dim);
  for (const auto& r : rows) b.insert(r);
  return from_builder(b);
}

IntLattice IntLattice::from_matrix(const IntMatrix& m) {
  LatticeBuilder b(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) b.insert(to_sparse(m.row(r)));
  return from_builder(b);
}

IntLattice IntLattice::full(std::size_t dim) {
  IntLattice l(dim);
  for (std::size_t i = 0; i < dim; ++i) l.basis_.push_back({{static_cast<int>(i), Integer(1)}});
  return l;
}

IntMatrix IntLattice::basis_matrix() const {
  IntMatrix m(basis_.size(), dim_);
  for (std::size_t r = 0; r < basis_.size(); ++r)
    for (const auto& [c, v] : basis_[r]) m(r, static_cast<std::size_t>(c)) = v;
  return m;
}

std::optional<std::vector<Integer>> IntLattice::coordinates(const SparseVec& v0) const {
  std::vector<Integer> coords(basis_.size());
  SparseVec v = v0;
  while (!v.empty()) {
    int p = v[0].first;
    auto it = std::lower_bound(basis_.begin(), basis_.end(), p,
                               [](const SparseVec& r, int k) { return r[0].first < k; });
    if (it == basis_.end() || (*it)[0].first != p) return std::nullopt;
    if (!mpz_divisible_p(v[0].second.get_mpz_t(), (*it)[0].second.get_mpz_t())) return std::nullopt;
    Integer q = v[0].second / (*it)[0].second;
    coords[static_cast<std::size_t>(it - basis_.begin())] += q;
    v = combine(1, v, -q, *it);
  }
  return coords;
}

bool IntLattice::contains(const SparseVec& v) const {
  for (const auto& [i, c] : v)
    if (static_cast<std::size_t>(i) >= dim_) throw Error("dimension mismatch in lattice membership");
  return coordinates(v).has_value();
}

bool IntLattice::contains(const std::vector<Integer>& v) const {
  if (v.size() != dim_) throw Error("dimension mismatch in lattice membership");
  return contains(to_sparse(v));
}

bool IntLattice::contains(const IntLattice& sub) const {
  if (sub.dim_ != dim_) throw Error("dimension mismatch in lattice containment");
  return std::all_of(sub.basis_.begin(), sub.basis_.end(), [&](const SparseVec& r) { return contains(r); });
}

IntLattice IntLattice::truncate(std::size_t k) const {
  LatticeBuilder b(k);
  for (const auto& r : basis_) {
    SparseVec t;
    for (const auto& e : r)
      if (static_cast<std::size_t>(e.first) < k) t.push_back(e);
    b.insert(std::move(t));
  }
  return from_builder(b);
}

bool member(const std::vector<Integer>& v, const IntLattice& l) { return l.contains(v); }

IntLattice join(const IntLattice& a, const IntLattice& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch in join");
  LatticeBuilder bl(a.dim());
  for (const auto& r : a.basis()) bl.insert(r);
  for (const auto& r : b.basis()) bl.insert(r);
  return IntLattice::from_builder(bl);
}

IntLattice meet(const IntLattice& a, const IntLattice& b) {
  if (a.dim() != b.dim()) throw Error("dimension mismatch in meet");
  const int n = static_cast<int>(a.dim());
  // Rows (x, x) for x in A and (y, 0) for y in B; echelon rows with pivot >= n span {(0, z) : z in A and B}.
  LatticeBuilder bl(2 * a.dim());
  for (const auto& r : a.basis()) {
    SparseVec v = r;
    for (const auto& [i, c] : r) v.emplace_back(i + n, c);
    bl.insert(std::move(v));
  }
  for (const auto& r : b.basis()) bl.insert(r);
  LatticeBuilder out(a.dim());
  for (const auto& [p, r] : bl.rows()) {
    if (p < n) continue;
    SparseVec z;
    for (const auto& [i, c] : r) z.emplace_back(i - n, c);
    out.insert(std::move(z));
  }
  return IntLattice::from_builder(out);
}

std::vector<Integer> snf(const IntMatrix& m0) {
  IntMatrix m = m0;
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < R && t < C) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pr = 0, pc = 0;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(pr, pc)))) {
          found = true;
          pr = i;
          pc = j;
        }
    if (!found) break;
    if (pr != t)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(pr, j), m(t, j));
    if (pc != t)
      for (std::size_t i = 0; i < R; ++i) std::swap(m(i, pc), m(i, t));
    bool clean = true;
    for (std::size_t i = t + 1; i < R; ++i) {
      if (m(i, t) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
      for (std::size_t j = t; j < C; ++j) m(i, j) -= q * m(t, j);
      if (m(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < C; ++j) {
      if (m(t, j) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
      for (std::size_t i = t; i < R; ++i) m(i, j) -= q * m(i, t);
      if (m(t, j) != 0) clean = false;
    }
    if (!clean) continue;
    // Enforce divisibility of the remaining block by the pivot.
    bool divides = true;
    for (std::size_t i = t + 1; i < R && divides; ++i)
      for (std::size_t j = t + 1; j < C; ++j)
        if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
          for (std::size_t k = t; k < C; ++k) m(t, k) += m(i, k);
          divides = false;
          break;
        }
    if (!divides) continue;
    diag.push_back(abs(m(t, t)));
    ++t;
  }
  return diag;
}

IntMatrix hnf(const IntMatrix& m) {
  IntLattice l = IntLattice::from_matrix(m);
  return l.basis_matrix();
}

std::vector<Integer> cokernel_invariants(const IntMatrix& m) {
  auto d = snf(m);
  std::vector<Integer> out;
  for (const auto& x : d)
    if (x > 1) out.push_back(x);
  for (std::size_t i = d.size(); i < m.cols(); ++i) out.emplace_back(0);
  return out;
}

std::vector<Integer> quotient_invariants(const IntLattice& sub, const IntLattice& sup) {
  if (!sup.contains(sub)) throw Error("quotient_invariants: sublattice is not contained in the superlattice");
  IntMatrix coords(0, sup.rank());
  for (const auto& r : sub.basis()) coords.append_row(*sup.coordinates(r));
  return cokernel_invariants(coords);
}

std::string format_invariants(const std::vector<Integer>& inv) {
  std::string out;
  std::size_t free_rank = 0;
  for (const auto& d : inv) {
    if (d == 0) {
      ++free_rank;
      continue;
    }
    if (d == 1) continue;
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  if (free_rank > 0) {
    if (!out.empty()) out += " + ";
    out += free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  }
  return out.empty() ? "0" : out;
}

}  // namespace dimsub
