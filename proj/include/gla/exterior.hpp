#pragma once

// Sparse Grassmann algebra on up to 16 generators, with its deformation into
// a Clifford algebra and the super Poisson bracket. Basis monomials are
// bitmasks: bit i (0-based) set means generator i+1 is present. Coefficients
// are exact Scalars.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gla/linalg.hpp"
#include "gla/scalar.hpp"

namespace gla {

using Mask = std::uint32_t;
constexpr int kMaxGenerators = 16;

// Coefficient vector of an element of the underlying space, indexed by
// generator (1-based).
using SparseVec = std::map<int, Scalar>;

// Number of pairs (i in I, j in J) with i > j; the sign exponent of both the
// wedge of disjoint monomials and the deformed product of arbitrary ones.
inline int inversions(Mask i_mask, Mask j_mask) {
  int count = 0;
  for (Mask rest = i_mask; rest;) {
    int bit = std::countr_zero(rest);
    rest &= rest - 1;
    count += std::popcount(j_mask & ((Mask{1} << bit) - 1));
  }
  return count;
}

inline Mask mask_of(std::initializer_list<int> generators) {
  Mask m = 0;
  for (int g : generators) {
    if (g < 1 || g > kMaxGenerators)
      throw std::invalid_argument("generator index out of range");
    Mask bit = Mask{1} << (g - 1);
    if (m & bit) throw std::invalid_argument("repeated generator in monomial");
    m |= bit;
  }
  return m;
}

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

class ExteriorElement {
 public:
  explicit ExteriorElement(int n) : n_(n) {
    if (n < 0 || n > kMaxGenerators)
      throw std::invalid_argument("generator count must be in [0, 16]");
  }

  int n() const { return n_; }
  const std::map<Mask, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(Mask m, const Scalar& c) {
    if (m >> n_) throw std::invalid_argument("monomial uses generators beyond n");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Scalar coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  static ExteriorElement unit(int n) {
    ExteriorElement e(n);
    e.add(0, Scalar(1));
    return e;
  }

  static ExteriorElement generator(int n, int g) {
    ExteriorElement e(n);
    e.add(mask_of({g}), Scalar(1));
    return e;
  }

  static ExteriorElement monomial(int n, Mask m, const Scalar& c = Scalar(1)) {
    ExteriorElement e(n);
    e.add(m, c);
    return e;
  }

  bool operator==(const ExteriorElement& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const ExteriorElement& o) const { return !(*this == o); }

  ExteriorElement operator+(const ExteriorElement& o) const {
    check_same_space(o);
    ExteriorElement out = *this;
    for (const auto& [m, c] : o.terms_) out.add(m, c);
    return out;
  }

  ExteriorElement operator-(const ExteriorElement& o) const {
    check_same_space(o);
    ExteriorElement out = *this;
    for (const auto& [m, c] : o.terms_) out.add(m, -c);
    return out;
  }

  ExteriorElement operator*(const Scalar& s) const {
    ExteriorElement out(n_);
    for (const auto& [m, c] : terms_) out.add(m, c * s);
    return out;
  }

  ExteriorElement operator-() const { return *this * Scalar(-1); }

  // -1 when zero, else requires homogeneity.
  int degree() const {
    if (terms_.empty()) return -1;
    int d = std::popcount(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
      if (std::popcount(m) != d)
        throw std::invalid_argument("element is not homogeneous");
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = std::popcount(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
      if (std::popcount(m) != d) return false;
    return true;
  }

  ExteriorElement component(int deg) const {
    ExteriorElement out(n_);
    for (const auto& [m, c] : terms_)
      if (std::popcount(m) == deg) out.add(m, c);
    return out;
  }

  int max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, std::popcount(m));
    return d;
  }

  // Value on a tuple of basis vectors (1-based indices); 0 on repeats, sign
  // of the sorting permutation otherwise.
  Scalar eval_basis(const std::vector<int>& idx) const {
    Mask m = 0;
    int sign = 1;
    for (size_t pos = 0; pos < idx.size(); ++pos) {
      int g = idx[pos];
      if (g < 1 || g > n_) throw std::invalid_argument("basis index out of range");
      Mask bit = Mask{1} << (g - 1);
      if (m & bit) return Scalar(0);
      // parity of insertions after this bit = generators already present above g
      if (std::popcount(m >> g) % 2) sign = -sign;
      m |= bit;
    }
    Scalar c = coeff(m);
    return sign > 0 ? c : -c;
  }

  void check_same_space(const ExteriorElement& o) const {
    if (n_ != o.n_) throw std::invalid_argument("mixed generator counts");
  }

 private:
  int n_;
  std::map<Mask, Scalar> terms_;
};

inline ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
  a.check_same_space(b);
  ExteriorElement out(a.n());
  for (const auto& [i, ci] : a.terms())
    for (const auto& [j, cj] : b.terms()) {
      if (i & j) continue;
      Scalar c = ci * cj;
      if (inversions(i, j) % 2) c = -c;
      out.add(i | j, c);
    }
  return out;
}

// Interior product against the k-th basis vector (1-based), lowering in the
// first slot.
inline ExteriorElement interior(const ExteriorElement& a, int k) {
  if (k < 1 || k > a.n()) throw std::invalid_argument("basis index out of range");
  Mask bit = Mask{1} << (k - 1);
  ExteriorElement out(a.n());
  for (const auto& [m, c] : a.terms()) {
    if (!(m & bit)) continue;
    int below = std::popcount(m & (bit - 1));
    out.add(m ^ bit, below % 2 ? -c : c);
  }
  return out;
}

inline ExteriorElement interior(const ExteriorElement& a, const SparseVec& x) {
  ExteriorElement out(a.n());
  for (const auto& [k, c] : x) {
    if (c.is_zero()) continue;
    ExteriorElement part = interior(a, k);
    for (const auto& [m, pc] : part.terms()) out.add(m, pc * c);
  }
  return out;
}

// Symmetric invertible matrix of inner products B(X_i, X_j); caches its
// inverse for the bracket.
class GramMatrix {
 public:
  explicit GramMatrix(QMatrix b) : b_(std::move(b)) {
    if (b_.rows() != b_.cols()) throw std::invalid_argument("Gram matrix not square");
    for (int r = 0; r < b_.rows(); ++r)
      for (int c = r + 1; c < b_.cols(); ++c)
        if (b_.at(r, c) != b_.at(c, r))
          throw std::invalid_argument("Gram matrix not symmetric");
    auto inv = b_.inverse();
    if (!inv) throw std::invalid_argument("Gram matrix not invertible");
    inv_ = std::move(*inv);
  }

  static GramMatrix identity(int n) { return GramMatrix(QMatrix::identity(n)); }

  int n() const { return b_.rows(); }
  const QMatrix& matrix() const { return b_; }
  const QMatrix& inverse() const { return inv_; }
  // 1-based accessors.
  const Rational& entry(int i, int j) const { return b_.at(i - 1, j - 1); }
  const Rational& inv_entry(int i, int j) const { return inv_.at(i - 1, j - 1); }

  bool is_identity() const { return b_ == QMatrix::identity(b_.rows()); }

 private:
  QMatrix b_;
  QMatrix inv_;
};

// Super Poisson bracket of degree -2 on the Grassmann algebra:
//   {a, b} = 2 (-1)^(w+1) sum_{i,j} (B^-1)_ij iota_i(a_w) ^ iota_j(b)
// summed over the homogeneous components a_w of a.
inline ExteriorElement super_poisson(const ExteriorElement& a,
                                     const ExteriorElement& b,
                                     const GramMatrix& gram) {
  a.check_same_space(b);
  if (gram.n() != a.n()) throw std::invalid_argument("Gram size mismatch");
  const int n = a.n();
  ExteriorElement out(n);
  for (int w = 0; w <= a.max_degree(); ++w) {
    ExteriorElement aw = a.component(w);
    if (aw.is_zero()) continue;
    Scalar pre = Scalar((w + 1) % 2 ? -2 : 2);
    for (int i = 1; i <= n; ++i) {
      ExteriorElement ia = interior(aw, i);
      if (ia.is_zero()) continue;
      for (int j = 1; j <= n; ++j) {
        const Rational& g = gram.inv_entry(i, j);
        if (g == 0) continue;
        ExteriorElement jb = interior(b, j);
        if (jb.is_zero()) continue;
        ExteriorElement piece = wedge(ia, jb) * (pre * Scalar(g));
        for (const auto& [m, c] : piece.terms()) out.add(m, c);
      }
    }
  }
  return out;
}

// Deformed (Clifford) product e_I * e_J = (-1)^inv(I,J) t^|I&J| e_(I xor J).
// Only the identity Gram is supported; the general bracket machinery works
// through super_poisson instead.
inline ExteriorElement clifford_star(const ExteriorElement& a,
                                     const ExteriorElement& b,
                                     const GramMatrix& gram) {
  a.check_same_space(b);
  if (gram.n() != a.n()) throw std::invalid_argument("Gram size mismatch");
  if (!gram.is_identity())
    throw std::invalid_argument("deformed product requires the identity Gram");
  ExteriorElement out(a.n());
  for (const auto& [i, ci] : a.terms())
    for (const auto& [j, cj] : b.terms()) {
      Scalar c = ci * cj * Scalar::t(std::popcount(i & j));
      if (inversions(i, j) % 2) c = -c;
      out.add(i ^ j, c);
    }
  return out;
}

inline ExteriorElement clifford_star(const ExteriorElement& a,
                                     const ExteriorElement& b) {
  return clifford_star(a, b, GramMatrix::identity(a.n()));
}

// Coefficient of t^k in the deformed product, as a bilinear map on the
// Grassmann algebra. Inputs must be t-free.
inline ExteriorElement dk_coefficient(int k, const ExteriorElement& a,
                                      const ExteriorElement& b) {
  a.check_same_space(b);
  if (k < 0) throw std::invalid_argument("negative deformation order");
  ExteriorElement out(a.n());
  for (const auto& [i, ci] : a.terms()) {
    if (!ci.is_rational())
      throw std::invalid_argument("deformation coefficients need t-free input");
    for (const auto& [j, cj] : b.terms()) {
      if (!cj.is_rational())
        throw std::invalid_argument("deformation coefficients need t-free input");
      if (std::popcount(i & j) != k) continue;
      Scalar c = ci * cj;
      if (inversions(i, j) % 2) c = -c;
      out.add(i ^ j, c);
    }
  }
  return out;
}

// Exponential form of the deformed product:
//   a * b = wedge . exp(-tF) (a (x) b),  F = (-1)^|a| sum_j iota_j a (x) iota_j b.
inline ExteriorElement moyal_star(const ExteriorElement& a,
                                  const ExteriorElement& b) {
  a.check_same_space(b);
  const int n = a.n();
  using Tensor = std::map<std::pair<Mask, Mask>, Scalar>;
  Tensor cur;
  for (const auto& [i, ci] : a.terms())
    for (const auto& [j, cj] : b.terms()) cur[{i, j}] = ci * cj;

  ExteriorElement out(n);
  Rational factorial = 1;
  for (int k = 0;; ++k) {
    if (k > 0) factorial *= k;
    Scalar weight = Scalar::t(k) * Scalar(k % 2 ? -1 : 1) / Scalar(factorial);
    for (const auto& [masks, c] : cur) {
      auto [i, j] = masks;
      if (i & j) continue;
      Scalar term = c * weight;
      if (inversions(i, j) % 2) term = -term;
      out.add(i | j, term);
    }
    if (static_cast<size_t>(k) >= static_cast<size_t>(n)) break;
    Tensor next;
    bool any = false;
    for (const auto& [masks, c] : cur) {
      auto [i, j] = masks;
      int left_sign = std::popcount(i) % 2 ? -1 : 1;
      Mask common = i & j;
      while (common) {
        int bit = std::countr_zero(common);
        common &= common - 1;
        Mask x = Mask{1} << bit;
        int s = left_sign;
        if (std::popcount(i & (x - 1)) % 2) s = -s;
        if (std::popcount(j & (x - 1)) % 2) s = -s;
        Scalar add = s > 0 ? c : -c;
        auto key = std::make_pair(i ^ x, j ^ x);
        auto it = next.find(key);
        if (it == next.end())
          next.emplace(key, add);
        else
          it->second += add;
        any = true;
      }
    }
    if (!any) break;
    cur = std::move(next);
  }
  return out;
}

}  // namespace gla
