#pragma once

// Sparse multilinear maps g^k -> g over a fixed basis, their skew cousins,
// associative structure tables, and the two graded brackets (insertion-type
// and unshuffle-type) together with the standard polynomial family.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gla/exterior.hpp"
#include "gla/scalar.hpp"

namespace gla {

constexpr int kMaxArity = 16;
constexpr size_t kMaxTableEntries = 10'000'000;

inline void sv_add(SparseVec& a, int idx, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = a.find(idx);
  if (it == a.end()) {
    a.emplace(idx, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) a.erase(it);
  }
}

inline void sv_add(SparseVec& a, const SparseVec& b, const Scalar& scale) {
  for (const auto& [i, c] : b) sv_add(a, i, c * scale);
}

inline SparseVec sv_scaled(const SparseVec& a, const Scalar& s) {
  SparseVec out;
  for (const auto& [i, c] : a) sv_add(out, i, c * s);
  return out;
}

inline bool sv_is_zero(const SparseVec& a) { return a.empty(); }

inline Scalar sv_coeff(const SparseVec& a, int idx) {
  auto it = a.find(idx);
  return it == a.end() ? Scalar(0) : it->second;
}

// Merge of two strictly increasing disjoint tuples; second member is the
// parity (+1/-1) of the unshuffle putting a before b. Nullopt on overlap.
inline std::optional<std::pair<std::vector<int>, int>> merge_shuffle(
    const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return std::nullopt;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
      inversions += static_cast<int>(a.size() - i);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return std::make_pair(std::move(out), inversions % 2 ? -1 : 1);
}

namespace detail {
inline void check_tuple(const std::vector<int>& key, int n, int arity) {
  if (static_cast<int>(key.size()) != arity)
    throw std::invalid_argument("tuple length does not match arity");
  for (int k : key)
    if (k < 1 || k > n) throw std::invalid_argument("basis index out of range");
}

// Insertion sort with sign; nullopt on repeated indices.
inline std::optional<std::pair<std::vector<int>, int>> sort_signed(
    std::vector<int> key) {
  int sign = 1;
  for (size_t i = 1; i < key.size(); ++i)
    for (size_t j = i; j > 0 && key[j - 1] >= key[j]; --j) {
      if (key[j - 1] == key[j]) return std::nullopt;
      std::swap(key[j - 1], key[j]);
      sign = -sign;
    }
  return std::make_pair(std::move(key), sign);
}
}  // namespace detail

// Plain multilinear map, stored entry-wise on basis tuples (1-based).
class MultiMap {
 public:
  MultiMap(int n, int arity) : n_(n), arity_(arity) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (arity < 0 || arity > kMaxArity)
      throw std::invalid_argument("arity exceeds the arity cap");
  }

  int n() const { return n_; }
  int arity() const { return arity_; }
  const std::map<std::vector<int>, SparseVec>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  void add(const std::vector<int>& key, int out, const Scalar& c) {
    detail::check_tuple(key, n_, arity_);
    if (out < 1 || out > n_) throw std::invalid_argument("output index out of range");
    if (c.is_zero()) return;
    auto& vec = table_[key];
    sv_add(vec, out, c);
    if (vec.empty()) table_.erase(key);
    guard();
  }

  void add(const std::vector<int>& key, const SparseVec& out, const Scalar& scale) {
    detail::check_tuple(key, n_, arity_);
    if (out.empty() || scale.is_zero()) return;
    auto& vec = table_[key];
    sv_add(vec, out, scale);
    if (vec.empty()) table_.erase(key);
    guard();
  }

  SparseVec eval(const std::vector<int>& key) const {
    detail::check_tuple(key, n_, arity_);
    auto it = table_.find(key);
    return it == table_.end() ? SparseVec{} : it->second;
  }

  bool operator==(const MultiMap& o) const {
    return n_ == o.n_ && arity_ == o.arity_ && table_ == o.table_;
  }
  bool operator!=(const MultiMap& o) const { return !(*this == o); }

  MultiMap operator+(const MultiMap& o) const {
    check_compatible(o);
    MultiMap out = *this;
    for (const auto& [k, v] : o.table_) out.add(k, v, Scalar(1));
    return out;
  }

  MultiMap operator*(const Scalar& s) const {
    MultiMap out(n_, arity_);
    for (const auto& [k, v] : table_) out.add(k, v, s);
    return out;
  }

  MultiMap operator-(const MultiMap& o) const { return *this + o * Scalar(-1); }

  void check_compatible(const MultiMap& o) const {
    if (n_ != o.n_ || arity_ != o.arity_)
      throw std::invalid_argument("multimap shape mismatch");
  }

 private:
  void guard() const {
    if (table_.size() > kMaxTableEntries)
      throw std::length_error("multilinear table exceeded entry budget");
  }
  int n_, arity_;
  std::map<std::vector<int>, SparseVec> table_;
};

// Alternating multilinear map; stored on strictly increasing tuples. add and
// eval accept arbitrary tuples, sorting with the permutation sign (repeats
// contribute nothing).
class SkewMap {
 public:
  SkewMap(int n, int arity) : n_(n), arity_(arity) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (arity < 0 || arity > kMaxArity)
      throw std::invalid_argument("arity exceeds the arity cap");
  }

  int n() const { return n_; }
  int arity() const { return arity_; }
  const std::map<std::vector<int>, SparseVec>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

  void add(const std::vector<int>& key, int out, const Scalar& c) {
    detail::check_tuple(key, n_, arity_);
    if (out < 1 || out > n_) throw std::invalid_argument("output index out of range");
    if (c.is_zero()) return;
    auto sorted = detail::sort_signed(key);
    if (!sorted) return;
    auto& vec = table_[sorted->first];
    sv_add(vec, out, sorted->second > 0 ? c : -c);
    if (vec.empty()) table_.erase(sorted->first);
  }

  void add(const std::vector<int>& key, const SparseVec& out, const Scalar& scale) {
    detail::check_tuple(key, n_, arity_);
    if (out.empty() || scale.is_zero()) return;
    auto sorted = detail::sort_signed(key);
    if (!sorted) return;
    auto& vec = table_[sorted->first];
    sv_add(vec, out, sorted->second > 0 ? scale : -scale);
    if (vec.empty()) table_.erase(sorted->first);
  }

  // Signed evaluation on an arbitrary basis tuple.
  SparseVec eval(std::vector<int> key) const {
    detail::check_tuple(key, n_, arity_);
    auto sorted = detail::sort_signed(std::move(key));
    if (!sorted) return {};
    auto it = table_.find(sorted->first);
    if (it == table_.end()) return {};
    return sorted->second > 0 ? it->second : sv_scaled(it->second, Scalar(-1));
  }

  bool operator==(const SkewMap& o) const {
    return n_ == o.n_ && arity_ == o.arity_ && table_ == o.table_;
  }
  bool operator!=(const SkewMap& o) const { return !(*this == o); }

  SkewMap operator+(const SkewMap& o) const {
    check_compatible(o);
    SkewMap out = *this;
    for (const auto& [k, v] : o.table_) out.add(k, v, Scalar(1));
    return out;
  }

  SkewMap operator*(const Scalar& s) const {
    SkewMap out(n_, arity_);
    for (const auto& [k, v] : table_) out.add(k, v, s);
    return out;
  }

  SkewMap operator-(const SkewMap& o) const { return *this + o * Scalar(-1); }

  void check_compatible(const SkewMap& o) const {
    if (n_ != o.n_ || arity_ != o.arity_)
      throw std::invalid_argument("skew map shape mismatch");
  }

 private:
  int n_, arity_;
  std::map<std::vector<int>, SparseVec> table_;
};

// Structure table of a finite-dimensional associative algebra, with optional
// unit and trace. Associativity (and the unit/trace laws, when present) are
// checked exhaustively at construction.
class AssociativeAlgebraDef {
 public:
  AssociativeAlgebraDef(int n, std::vector<std::vector<SparseVec>> mul,
                        std::optional<SparseVec> unit,
                        std::optional<std::vector<Scalar>> trace)
      : n_(n), mul_(std::move(mul)), unit_(std::move(unit)), trace_(std::move(trace)) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (static_cast<int>(mul_.size()) != n)
      throw std::invalid_argument("product table has wrong shape");
    for (const auto& row : mul_)
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("product table has wrong shape");
    if (trace_ && static_cast<int>(trace_->size()) != n)
      throw std::invalid_argument("trace vector has wrong length");
    check_associative();
    if (unit_) check_unit();
    if (trace_) check_trace_symmetric();
  }

  int n() const { return n_; }
  const SparseVec& mul_basis(int i, int j) const { return mul_[i - 1][j - 1]; }
  bool has_unit() const { return unit_.has_value(); }
  const SparseVec& unit() const {
    if (!unit_) throw std::invalid_argument("algebra has no unit");
    return *unit_;
  }
  bool has_trace() const { return trace_.has_value(); }
  const std::vector<Scalar>& trace_values() const {
    if (!trace_) throw std::invalid_argument("algebra has no trace");
    return *trace_;
  }

  SparseVec mul(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b) sv_add(out, mul_basis(i, j), ci * cj);
    return out;
  }

  Scalar trace(const SparseVec& a) const {
    const auto& tau = trace_values();
    Scalar out(0);
    for (const auto& [i, c] : a) out += c * tau[i - 1];
    return out;
  }

  // Matrix algebra of size m x m on the elementary-matrix basis; index of
  // E_ab is (a-1)m + b. Unit is the identity matrix, trace the matrix trace.
  static AssociativeAlgebraDef gl(int m) {
    if (m < 1) throw std::invalid_argument("matrix size must be positive");
    int n = m * m;
    auto idx = [m](int a, int b) { return (a - 1) * m + b; };
    std::vector<std::vector<SparseVec>> mul(n, std::vector<SparseVec>(n));
    for (int a = 1; a <= m; ++a)
      for (int b = 1; b <= m; ++b)
        for (int c = 1; c <= m; ++c)
          for (int d = 1; d <= m; ++d)
            if (b == c) mul[idx(a, b) - 1][idx(c, d) - 1] = {{idx(a, d), Scalar(1)}};
    SparseVec unit;
    for (int a = 1; a <= m; ++a) unit[idx(a, a)] = Scalar(1);
    std::vector<Scalar> tau(n, Scalar(0));
    for (int a = 1; a <= m; ++a) tau[idx(a, a) - 1] = Scalar(1);
    return AssociativeAlgebraDef(n, std::move(mul), std::move(unit), std::move(tau));
  }

  // C^n with pointwise product: e_i e_j = delta_ij e_i; unit = sum e_i.
  static AssociativeAlgebraDef abelian(int n) {
    std::vector<std::vector<SparseVec>> mul(n, std::vector<SparseVec>(n));
    SparseVec unit;
    for (int i = 1; i <= n; ++i) {
      mul[i - 1][i - 1] = {{i, Scalar(1)}};
      unit[i] = Scalar(1);
    }
    std::vector<Scalar> tau(n, Scalar(1));
    return AssociativeAlgebraDef(n, std::move(mul), std::move(unit), std::move(tau));
  }

 private:
  void check_associative() const {
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) {
        const SparseVec& ij = mul_basis(i, j);
        for (int k = 1; k <= n_; ++k) {
          SparseVec left;
          for (const auto& [r, c] : ij) sv_add(left, mul_basis(r, k), c);
          SparseVec right;
          for (const auto& [r, c] : mul_basis(j, k)) sv_add(right, mul_basis(i, r), c);
          if (left != right)
            throw std::invalid_argument("product table is not associative");
        }
      }
  }

  void check_unit() const {
    for (int i = 1; i <= n_; ++i) {
      SparseVec x{{i, Scalar(1)}};
      if (mul(*unit_, x) != x || mul(x, *unit_) != x)
        throw std::invalid_argument("declared unit is not a unit");
    }
  }

  void check_trace_symmetric() const {
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j)
        if (trace(mul_basis(i, j)) != trace(mul_basis(j, i)))
          throw std::invalid_argument("trace is not symmetric on products");
  }

  int n_;
  std::vector<std::vector<SparseVec>> mul_;
  std::optional<SparseVec> unit_;
  std::optional<std::vector<Scalar>> trace_;
};

namespace detail {
inline int parity_sign(long long e) { return (e % 2 + 2) % 2 ? -1 : 1; }

using OutIndex = std::map<int, std::vector<std::pair<const std::vector<int>*, Scalar>>>;

template <typename MapT>
OutIndex index_by_output(const MapT& m) {
  OutIndex by_out;
  for (const auto& [key, vec] : m.table())
    for (const auto& [s, c] : vec) by_out[s].emplace_back(&key, c);
  return by_out;
}
}  // namespace detail

// Insertion-type graded bracket on multilinear maps. With p = arity(F)-1 and
// q = arity(G)-1:
//   [F,G] = (-1)^(pq) sum_j (-1)^(q(j-1)) F o_j G  -  sum_j (-1)^(p(j-1)) G o_j F
// where o_j splices the inner map's value into slot j. Two arity-0 inputs
// bracket to the zero arity-0 map.
inline MultiMap gerstenhaber_bracket(const MultiMap& f, const MultiMap& g) {
  if (f.n() != g.n()) throw std::invalid_argument("dimension mismatch");
  const int p = f.arity() - 1, q = g.arity() - 1;
  if (p + q + 1 < 0) return MultiMap(f.n(), 0);
  if (p + q + 1 > kMaxArity)
    throw std::invalid_argument("bracket arity exceeds the arity cap");
  MultiMap out(f.n(), p + q + 1);

  auto accumulate = [&out](const MultiMap& outer, const MultiMap& inner, int base_sign,
                           int step_parity) {
    auto inner_by_out = detail::index_by_output(inner);
    for (const auto& [u, outer_vec] : outer.table()) {
      for (int j = 1; j <= outer.arity(); ++j) {
        int s = u[j - 1];
        auto it = inner_by_out.find(s);
        if (it == inner_by_out.end()) continue;
        int sign = base_sign * detail::parity_sign(static_cast<long long>(step_parity) * (j - 1));
        for (const auto& [v_ptr, c] : it->second) {
          std::vector<int> key;
          key.reserve(outer.arity() - 1 + inner.arity());
          key.insert(key.end(), u.begin(), u.begin() + (j - 1));
          key.insert(key.end(), v_ptr->begin(), v_ptr->end());
          key.insert(key.end(), u.begin() + j, u.end());
          out.add(key, outer_vec, Scalar(sign) * c);
        }
      }
    }
  };

  accumulate(f, g, detail::parity_sign(static_cast<long long>(p) * q), q);
  accumulate(g, f, -1, p);
  return out;
}

// Unshuffle-type graded bracket on skew maps:
//   [F,G]_a = (-1)^(pq) sum_{S_(q+1,p)} eps F(G(..), ..) - sum_{S_(p+1,q)} eps G(F(..), ..)
inline SkewMap nr_bracket(const SkewMap& f, const SkewMap& g) {
  if (f.n() != g.n()) throw std::invalid_argument("dimension mismatch");
  const int p = f.arity() - 1, q = g.arity() - 1;
  if (p + q + 1 < 0) return SkewMap(f.n(), 0);
  if (p + q + 1 > kMaxArity)
    throw std::invalid_argument("bracket arity exceeds the arity cap");
  SkewMap out(f.n(), p + q + 1);

  auto accumulate = [&out](const SkewMap& outer, const SkewMap& inner, int base_sign) {
    auto inner_by_out = detail::index_by_output(inner);
    for (const auto& [u, outer_vec] : outer.table()) {
      for (size_t pos = 0; pos < u.size(); ++pos) {
        int s = u[pos];
        auto it = inner_by_out.find(s);
        if (it == inner_by_out.end()) continue;
        std::vector<int> rest;
        rest.reserve(u.size() - 1);
        rest.insert(rest.end(), u.begin(), u.begin() + pos);
        rest.insert(rest.end(), u.begin() + pos + 1, u.end());
        int front_sign = pos % 2 ? -1 : 1;
        for (const auto& [v_ptr, c] : it->second) {
          auto merged = merge_shuffle(*v_ptr, rest);
          if (!merged) continue;
          Scalar coef = Scalar(base_sign * front_sign * merged->second) * c;
          out.add(merged->first, outer_vec, coef);
        }
      }
    }
  };

  accumulate(f, g, detail::parity_sign(static_cast<long long>(p) * q));
  accumulate(g, f, -1);
  return out;
}

// Alternation without the 1/k! factor:
//   A(F)(X_1..X_k) = sum_{sigma} eps(sigma) F(X_sigma(1), .., X_sigma(k)).
inline SkewMap skew_symmetrize(const MultiMap& f) {
  SkewMap out(f.n(), f.arity());
  for (const auto& [u, vec] : f.table()) {
    std::vector<int> key = u;
    int sign = 1;
    bool repeat = false;
    for (size_t i = 1; i < key.size() && !repeat; ++i)
      for (size_t j = i; j > 0 && key[j - 1] >= key[j]; --j) {
        if (key[j - 1] == key[j]) {
          repeat = true;
          break;
        }
        std::swap(key[j - 1], key[j]);
        sign = -sign;
      }
    if (repeat) continue;
    out.add(key, vec, Scalar(sign));
  }
  return out;
}

// Pointwise product in order: (F o G)(Y_1..Y_(p+q)) = F(Y_1..Y_p) G(Y_(p+1)..).
inline MultiMap circ_product(const AssociativeAlgebraDef& alg, const MultiMap& f,
                             const MultiMap& g) {
  if (f.n() != alg.n() || g.n() != alg.n())
    throw std::invalid_argument("dimension mismatch");
  if (f.arity() + g.arity() > kMaxArity)
    throw std::invalid_argument("product arity exceeds the arity cap");
  MultiMap out(f.n(), f.arity() + g.arity());
  for (const auto& [u, fv] : f.table())
    for (const auto& [v, gv] : g.table()) {
      SparseVec prod = alg.mul(fv, gv);
      if (prod.empty()) continue;
      std::vector<int> key = u;
      key.insert(key.end(), v.begin(), v.end());
      out.add(key, prod, Scalar(1));
    }
  return out;
}

// Unshuffle product of skew maps through the algebra product:
//   (F x G)(Y_1..Y_(p+q)) = sum_{S_(p,q)} eps F(Y_sigma..) G(Y_sigma..).
inline SkewMap times_product(const AssociativeAlgebraDef& alg, const SkewMap& f,
                             const SkewMap& g) {
  if (f.n() != alg.n() || g.n() != alg.n())
    throw std::invalid_argument("dimension mismatch");
  if (f.arity() + g.arity() > kMaxArity)
    throw std::invalid_argument("product arity exceeds the arity cap");
  SkewMap out(f.n(), f.arity() + g.arity());
  for (const auto& [u, fv] : f.table())
    for (const auto& [v, gv] : g.table()) {
      auto merged = merge_shuffle(u, v);
      if (!merged) continue;
      SparseVec prod = alg.mul(fv, gv);
      if (prod.empty()) continue;
      out.add(merged->first, prod, Scalar(merged->second));
    }
  return out;
}

// Iterated product m_k(Y_1..Y_k) = Y_1 Y_2 .. Y_k; m_0 is the unit, m_1 the
// identity map.
inline MultiMap standard_polynomial(const AssociativeAlgebraDef& alg, int k) {
  if (k < 0 || k > kMaxArity)
    throw std::invalid_argument("arity exceeds the arity cap");
  if (k == 0) {
    MultiMap m(alg.n(), 0);
    m.add({}, alg.unit(), Scalar(1));
    return m;
  }
  MultiMap m(alg.n(), 1);
  for (int i = 1; i <= alg.n(); ++i) m.add({i}, i, Scalar(1));
  for (int step = 2; step <= k; ++step) {
    MultiMap next(alg.n(), step);
    for (const auto& [u, vec] : m.table())
      for (int j = 1; j <= alg.n(); ++j) {
        SparseVec prod = alg.mul(vec, SparseVec{{j, Scalar(1)}});
        if (prod.empty()) continue;
        std::vector<int> key = u;
        key.push_back(j);
        next.add(key, prod, Scalar(1));
      }
    m = std::move(next);
  }
  return m;
}

// A_k = A(m_k), the alternated standard polynomial.
inline SkewMap standard_skew_polynomial(const AssociativeAlgebraDef& alg, int k) {
  return skew_symmetrize(standard_polynomial(alg, k));
}

// Contraction in the first slot by a fixed vector.
inline SkewMap iota_contract(const SparseVec& z, const SkewMap& f) {
  if (f.arity() == 0)
    throw std::invalid_argument("cannot contract an arity-0 map");
  SkewMap out(f.n(), f.arity() - 1);
  for (const auto& [u, vec] : f.table())
    for (size_t pos = 0; pos < u.size(); ++pos) {
      Scalar zc = sv_coeff(z, u[pos]);
      if (zc.is_zero()) continue;
      std::vector<int> rest;
      rest.reserve(u.size() - 1);
      rest.insert(rest.end(), u.begin(), u.begin() + pos);
      rest.insert(rest.end(), u.begin() + pos + 1, u.end());
      out.add(rest, vec, pos % 2 ? -zc : zc);
    }
  return out;
}

// Composes a skew map with the algebra trace, producing the alternating form
// Tr F in the Grassmann algebra on the same index set.
inline ExteriorElement trace_lift(const AssociativeAlgebraDef& alg, const SkewMap& f) {
  if (f.n() != alg.n()) throw std::invalid_argument("dimension mismatch");
  if (f.n() > kMaxGenerators)
    throw std::invalid_argument("dimension exceeds the Grassmann generator cap");
  ExteriorElement out(f.n());
  for (const auto& [u, vec] : f.table()) {
    Scalar c = alg.trace(vec);
    if (c.is_zero()) continue;
    Mask m = 0;
    for (int g : u) m |= Mask{1} << (g - 1);
    out.add(m, c);
  }
  return out;
}

// True when F has even arity 2k >= 2 and squares to zero under the unshuffle
// bracket.
inline bool is_2k_lie(const SkewMap& f) {
  if (f.arity() < 2 || f.arity() % 2 != 0)
    throw std::invalid_argument("structure must have even arity >= 2");
  return nr_bracket(f, f).is_zero();
}

}  // namespace gla
