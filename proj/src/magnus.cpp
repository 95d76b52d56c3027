#include "dimsub/magnus.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace dimsub {

MonomialBasis::MonomialBasis(int vars, int degree) : vars_(vars), degree_(degree) {
  if (degree < 0) throw Error("degree bound must be non-negative");
  powers_.push_back(1);
  offsets_.push_back(0);
  for (int k = 0; k <= degree; ++k) {
    offsets_.push_back(offsets_.back() + powers_.back());
    powers_.push_back(powers_.back() * static_cast<std::size_t>(vars));
  }
}

std::size_t MonomialBasis::count(int vars, int degree) {
  std::size_t total = 0, p = 1;
  const std::size_t big = std::numeric_limits<std::size_t>::max() / 4;
  for (int k = 0; k <= degree; ++k) {
    total += p;
    if (total > big) return big;
    p *= static_cast<std::size_t>(vars);
    if (p > big) p = big;
  }
  return total;
}

std::size_t MonomialBasis::index(const Monomial& m) const {
  if (static_cast<int>(m.size()) > degree_) throw Error("monomial exceeds degree bound");
  std::size_t r = 0;
  for (int v : m) {
    if (v < 0 || v >= vars_) throw Error("monomial variable out of range");
    r = r * static_cast<std::size_t>(vars_) + static_cast<std::size_t>(v);
  }
  return offsets_[m.size()] + r;
}

int MonomialBasis::degree_of(std::size_t index) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Monomial MonomialBasis::monomial(std::size_t index) const {
  int k = degree_of(index);
  std::size_t r = index - offsets_[static_cast<std::size_t>(k)];
  Monomial m(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    m[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::size_t>(vars_));
    r /= static_cast<std::size_t>(vars_);
  }
  return m;
}

std::optional<std::size_t> MonomialBasis::times_var(std::size_t index, int var) const {
  int k = degree_of(index);
  if (k + 1 > degree_) return std::nullopt;
  std::size_t r = index - offsets_[static_cast<std::size_t>(k)];
  return offsets_[static_cast<std::size_t>(k + 1)] + r * static_cast<std::size_t>(vars_) +
         static_cast<std::size_t>(var);
}

std::optional<std::size_t> MonomialBasis::var_times(int var, std::size_t index) const {
  int k = degree_of(index);
  if (k + 1 > degree_) return std::nullopt;
  std::size_t r = index - offsets_[static_cast<std::size_t>(k)];
  return offsets_[static_cast<std::size_t>(k + 1)] + static_cast<std::size_t>(var) * powers_[static_cast<std::size_t>(k)] + r;
}

std::optional<std::size_t> MonomialBasis::concat(std::size_t a, std::size_t b) const {
  int ka = degree_of(a), kb = degree_of(b);
  if (ka + kb > degree_) return std::nullopt;
  std::size_t ra = a - offsets_[static_cast<std::size_t>(ka)];
  std::size_t rb = b - offsets_[static_cast<std::size_t>(kb)];
  return offsets_[static_cast<std::size_t>(ka + kb)] + ra * powers_[static_cast<std::size_t>(kb)] + rb;
}

TruncatedSeries::TruncatedSeries(int vars, int degree) : basis_(vars, degree), coeffs_(basis_.size()) {}

TruncatedSeries TruncatedSeries::one(int vars, int degree) {
  TruncatedSeries s(vars, degree);
  s.coeffs_[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::variable(int var, int vars, int degree) {
  TruncatedSeries s(vars, degree);
  if (degree >= 1) s.coeffs_.at(s.basis_.index({var})) = 1;
  return s;
}

TruncatedSeries TruncatedSeries::from_sparse(const SparseVec& v, int vars, int degree) {
  TruncatedSeries s(vars, degree);
  for (const auto& [i, c] : v) s.coeffs_.at(static_cast<std::size_t>(i)) = c;
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
}

std::optional<int> TruncatedSeries::min_degree() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return basis_.degree_of(i);
  return std::nullopt;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (o.coeffs_.size() != coeffs_.size()) throw Error("series of different shapes");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (o.coeffs_.size() != coeffs_.size()) throw Error("series of different shapes");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) throw Error("series of different shapes");
  TruncatedSeries p(a.vars(), a.degree());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      auto k = a.basis_.concat(i, j);
      if (!k) continue;
      p.coeffs_[*k] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return p;
}

void TruncatedSeries::add_scaled(const TruncatedSeries& o, const Integer& c) {
  if (o.coeffs_.size() != coeffs_.size()) throw Error("series of different shapes");
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (o.coeffs_[i] != 0) coeffs_[i] += c * o.coeffs_[i];
}

void TruncatedSeries::mul_generator(int var, int exponent) {
  // s * X_var
  auto shifted = [&](const std::vector<Integer>& s) {
    std::vector<Integer> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == 0) continue;
      if (auto k = basis_.times_var(i, var)) out[*k] = s[i];
    }
    return out;
  };
  if (exponent > 0) {
    auto t = shifted(coeffs_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += t[i];
  } else {
    // (1 + X)^-1 = 1 - X + X^2 - ...
    std::vector<Integer> t = coeffs_;
    for (int k = 1; k <= degree(); ++k) {
      t = shifted(t);
      for (auto& c : t) c = -c;
      for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += t[i];
    }
  }
}

SparseVec series_mul(const MonomialBasis& basis, const SparseVec& a, const SparseVec& b) {
  std::map<std::size_t, Integer> acc;
  for (const auto& [i, ca] : a) {
    int da = basis.degree_of(static_cast<std::size_t>(i));
    for (const auto& [j, cb] : b) {
      if (da + basis.degree_of(static_cast<std::size_t>(j)) > basis.degree()) break;
      auto k = basis.concat(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      acc[*k] += ca * cb;
    }
  }
  SparseVec out;
  for (auto& [k, c] : acc)
    if (c != 0) out.emplace_back(static_cast<int>(k), std::move(c));
  return out;
}

TruncatedSeries expand(const Word& w, int vars, int degree) {
  TruncatedSeries s = TruncatedSeries::one(vars, degree);
  for (Letter l : w.letters()) {
    if (letter_index(l) >= vars) throw Error("word uses a generator beyond the expansion rank");
    s.mul_generator(letter_index(l), letter_exponent(l));
  }
  return s;
}

TruncatedSeries expand_ring(const RingElement& a, int vars, int degree) {
  TruncatedSeries s(vars, degree);
  for (const auto& [w, c] : a.terms()) {
    s.add_scaled(expand(w, vars, degree), c);
  }
  return s;
}

std::optional<int> min_degree(const RingElement& a, int vars, int d_max) {
  if (a.is_zero()) throw Error("min_degree of the zero element");
  return expand_ring(a, vars, d_max).min_degree();
}

IntLattice two_sided_closure(const MonomialBasis& basis, std::span<const SparseVec> gens) {
  LatticeBuilder b(basis.size());
  std::vector<SparseVec> work;
  for (const auto& g : gens)
    if (!g.empty() && !b.reduce(g).empty()) {
      b.insert(g);
      work.push_back(g);
    }
  auto shift = [&](const SparseVec& v, int var, bool left) {
    SparseVec out;
    for (const auto& [i, c] : v) {
      auto k = left ? basis.var_times(var, static_cast<std::size_t>(i)) : basis.times_var(static_cast<std::size_t>(i), var);
      if (k) out.emplace_back(static_cast<int>(*k), c);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };
  for (std::size_t w = 0; w < work.size(); ++w) {
    for (int var = 0; var < basis.vars(); ++var)
      for (bool left : {true, false}) {
        SparseVec p = shift(work[w], var, left);
        if (p.empty() || b.reduce(p).empty()) continue;
        b.insert(p);
        work.push_back(std::move(p));
      }
  }
  return IntLattice::from_builder(b);
}

namespace {

class ShadowBuilder {
 public:
  ShadowBuilder(const GroupContext& ctx, int degree, const ShadowConfig& cfg)
      : ctx_(ctx), basis_(ctx.rank(), degree), cfg_(cfg) {}

  IntLattice eval(const IdealExpr& e) {
    switch (e.kind()) {
      case IdealExpr::Kind::Atom: return atom(e.atom_value());
      case IdealExpr::Kind::Sum: {
        IntLattice acc = eval(e.children()[0]);
        for (std::size_t i = 1; i < e.children().size(); ++i) acc = join(acc, eval(e.children()[i]));
        return acc;
      }
      case IdealExpr::Kind::Product: {
        IntLattice acc = eval(e.children()[0]);
        for (std::size_t i = 1; i < e.children().size(); ++i) acc = product(acc, eval(e.children()[i]));
        return acc;
      }
      case IdealExpr::Kind::Power: {
        IntLattice base = eval(e.children()[0]);
        IntLattice acc = base;
        for (int i = 1; i < e.exponent(); ++i) acc = product(acc, base);
        return acc;
      }
    }
    return IntLattice(basis_.size());
  }

 private:
  IntLattice product(const IntLattice& a, const IntLattice& b) {
    LatticeBuilder out(basis_.size());
    for (const auto& x : a.basis())
      for (const auto& y : b.basis()) {
        SparseVec p = series_mul(basis_, x, y);
        if (!p.empty()) out.insert(std::move(p));
      }
    return IntLattice::from_builder(out);
  }

  IntLattice atom(const IdealAtom& a) {
    if (auto it = cache_.find(a); it != cache_.end()) return it->second;
    IntLattice result(basis_.size());
    switch (a.kind) {
      case IdealAtom::Kind::Whole: {
        std::vector<SparseVec> rows;
        for (std::size_t i = 1; i < basis_.size(); ++i) rows.push_back({{static_cast<int>(i), Integer(1)}});
        result = IntLattice::from_rows(basis_.size(), rows);
        break;
      }
      case IdealAtom::Kind::Subgroup: {
        std::vector<SparseVec> gens;
        for (const auto& y : ctx_.subgroup(a.name).normal_generators) {
          TruncatedSeries s = expand(y, basis_.vars(), basis_.degree());
          s -= TruncatedSeries::one(basis_.vars(), basis_.degree());
          gens.push_back(s.to_sparse());
        }
        result = two_sided_closure(basis_, gens);
        break;
      }
      case IdealAtom::Kind::Derived:
      case IdealAtom::Kind::Gamma: {
        IntLattice base = atom(IdealAtom::subgroup(a.name));
        IntLattice level = base;
        for (int k = 2; k <= a.weight; ++k) {
          std::vector<SparseVec> gens;
          for (const auto& u : level.basis())
            for (const auto& j : base.basis()) {
              SparseVec uj = series_mul(basis_, u, j);
              SparseVec ju = series_mul(basis_, j, u);
              // uj - ju
              std::map<int, Integer> acc;
              for (const auto& [i, c] : uj) acc[i] += c;
              for (const auto& [i, c] : ju) acc[i] -= c;
              SparseVec d;
              for (auto& [i, c] : acc)
                if (c != 0) d.emplace_back(i, c);
              if (!d.empty()) gens.push_back(std::move(d));
            }
          level = two_sided_closure(basis_, gens);
        }
        result = level;
        break;
      }
    }
    cache_.emplace(a, result);
    return result;
  }

  const GroupContext& ctx_;
  MonomialBasis basis_;
  ShadowConfig cfg_;
  std::map<IdealAtom, IntLattice> cache_;
};

}  // namespace

IntLattice ideal_shadow(const IdealExpr& e, const GroupContext& ctx, int degree, const ShadowConfig& cfg) {
  if (MonomialBasis::count(ctx.rank(), degree) > cfg.dimension_cap)
    throw CapExceeded("shadow dimension for rank " + std::to_string(ctx.rank()) + " at degree " +
                      std::to_string(degree) + " exceeds the configured cap");
  ctx.check_resolves(e);
  return ShadowBuilder(ctx, degree, cfg).eval(e);
}

}  // namespace dimsub
