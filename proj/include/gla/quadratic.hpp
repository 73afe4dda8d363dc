#pragma once

// Quadratic vector spaces and Lie algebras: bracket tables checked against
// Jacobi and form-invariance at construction, the correspondence between
// brackets and odd exterior forms, decomposability, the small catalog of
// elementary quadratic algebras, and central reduction.

#include <optional>
#include <stdexcept>
#include <vector>

#include "gla/derivation.hpp"
#include "gla/exterior.hpp"
#include "gla/linalg.hpp"
#include "gla/multimap.hpp"
#include "gla/scalar.hpp"

namespace gla {

struct QuadraticSpace {
  int n;
  GramMatrix gram;
  QuadraticSpace(int n_, GramMatrix g) : n(n_), gram(std::move(g)) {
    if (gram.n() != n) throw std::invalid_argument("Gram size mismatch");
  }
};

class LieAlgebraDef {
 public:
  LieAlgebraDef(SkewMap bracket, std::optional<GramMatrix> gram = std::nullopt)
      : bracket_(std::move(bracket)), gram_(std::move(gram)) {
    if (bracket_.arity() != 2)
      throw std::invalid_argument("bracket must have arity 2");
    if (!nr_bracket(bracket_, bracket_).is_zero())
      throw std::invalid_argument("bracket fails the Jacobi identity");
    if (gram_) {
      if (gram_->n() != bracket_.n())
        throw std::invalid_argument("Gram size mismatch");
      check_invariance();
    }
  }

  int n() const { return bracket_.n(); }
  const SkewMap& bracket() const { return bracket_; }
  bool has_gram() const { return gram_.has_value(); }
  const GramMatrix& gram() const {
    if (!gram_) throw std::invalid_argument("Lie algebra has no invariant form");
    return *gram_;
  }

  SparseVec bracket_of(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) sv_add(out, bracket_.eval({i, j}), ci * cj);
    return out;
  }

  Scalar bform(const SparseVec& x, const SparseVec& y) const {
    const GramMatrix& g = gram();
    Scalar out(0);
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) out += ci * cj * Scalar(g.entry(i, j));
    return out;
  }

  // Matrix of ad X on the basis (columns index the argument).
  QMatrix ad_matrix(const SparseVec& x) const {
    QMatrix m(n(), n());
    for (int s = 1; s <= n(); ++s) {
      SparseVec col;
      for (const auto& [i, c] : x) sv_add(col, bracket_.eval({i, s}), c);
      for (const auto& [r, c] : col)
        if (c.is_rational())
          m.at(r - 1, s - 1) = c.as_rational();
        else
          throw std::invalid_argument("structure constants must be t-free here");
    }
    return m;
  }

  // Canonical basis of the center: kernel of all maps x -> [x, X_s].
  std::vector<std::vector<Rational>> center_basis() const {
    QMatrix m(n() * n(), n());
    int row = 0;
    for (int s = 1; s <= n(); ++s)
      for (int r = 1; r <= n(); ++r) {
        for (int j = 1; j <= n(); ++j)
          m.at(row, j - 1) = sv_to_rational(bracket_.eval({j, s}), r);
        ++row;
      }
    return m.kernel_basis();
  }

  // Canonical basis of the derived ideal [g, g].
  std::vector<std::vector<Rational>> derived_basis() const {
    std::vector<std::vector<Rational>> gens;
    for (const auto& [u, vec] : bracket_.table()) {
      std::vector<Rational> v(n(), Rational(0));
      for (const auto& [r, c] : vec) v[r - 1] = c.as_rational();
      gens.push_back(std::move(v));
    }
    return canonical_span(gens, n());
  }

  static std::vector<std::vector<Rational>> canonical_span(
      const std::vector<std::vector<Rational>>& gens, int dim) {
    QMatrix m(static_cast<int>(gens.size()), dim);
    for (size_t r = 0; r < gens.size(); ++r)
      for (int c = 0; c < dim; ++c) m.at(static_cast<int>(r), c) = gens[r][c];
    std::vector<int> pivots = m.rref();
    std::vector<std::vector<Rational>> basis;
    for (size_t r = 0; r < pivots.size(); ++r) {
      std::vector<Rational> v(dim);
      for (int c = 0; c < dim; ++c) v[c] = m.at(static_cast<int>(r), c);
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  static Rational sv_to_rational(const SparseVec& v, int r) {
    Scalar c = sv_coeff(v, r);
    return c.as_rational();
  }

  void check_invariance() const {
    for (int i = 1; i <= n(); ++i)
      for (int j = 1; j <= n(); ++j)
        for (int k = 1; k <= n(); ++k) {
          Scalar lhs(0);
          for (const auto& [r, c] : bracket_.eval({i, j}))
            lhs += c * Scalar(gram_->entry(r, k));
          for (const auto& [r, c] : bracket_.eval({i, k}))
            lhs += c * Scalar(gram_->entry(j, r));
          if (!lhs.is_zero())
            throw std::invalid_argument("form is not invariant under the bracket");
        }
  }

  SkewMap bracket_;
  std::optional<GramMatrix> gram_;
};

// ---- transpose pairing and cyclicity ----------------------------------

// Pairing form of a skew map: hat C(Y_1..Y_k, Y) = B(C(Y_1..Y_k), Y). For
// arity 0 this is B(C, .).
inline bool is_cyclic(const SkewMap& f, const GramMatrix& gram) {
  if (f.n() != gram.n()) throw std::invalid_argument("Gram size mismatch");
  const int k = f.arity();
  if (k == 0) return true;
  const int n = f.n();
  // hat C is skew in its first k slots already; full skewness is equivalent
  // to antisymmetry under swapping the last two.
  std::vector<int> tuple(k - 1);
  std::vector<std::vector<int>> prefixes;
  std::vector<int> cur;
  // enumerate increasing (k-1)-tuples
  std::vector<int> idx(k - 1);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == k - 1) {
      prefixes.push_back(idx);
      return;
    }
    for (int v = start; v <= n; ++v) {
      idx[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  for (const auto& pre : prefixes)
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        std::vector<int> t1 = pre, t2 = pre;
        t1.push_back(a);
        t2.push_back(b);
        SparseVec fa = f.eval(t1), fb = f.eval(t2);
        Scalar s(0);
        for (const auto& [r, c] : fa) s += c * Scalar(gram.entry(r, b));
        for (const auto& [r, c] : fb) s += c * Scalar(gram.entry(r, a));
        if (!s.is_zero()) return false;
      }
  return true;
}

// The (k+1)-form of a cyclic arity-k map; throws when the pairing form fails
// to be alternating.
inline ExteriorElement theta_map(const SkewMap& f, const GramMatrix& gram) {
  if (!is_cyclic(f, gram))
    throw std::invalid_argument("map is not cyclic with respect to the form");
  const int n = f.n();
  ExteriorElement out(n);
  // coefficient on each increasing (k+1)-mask
  std::vector<int> idx(f.arity() + 1);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == static_cast<int>(idx.size())) {
      std::vector<int> head(idx.begin(), idx.end() - 1);
      SparseVec v = f.eval(head);
      Scalar c(0);
      for (const auto& [r, cc] : v) c += cc * Scalar(gram.entry(r, idx.back()));
      if (!c.is_zero()) {
        Mask m = 0;
        for (int g : idx) m |= Mask{1} << (g - 1);
        out.add(m, c);
      }
      return;
    }
    for (int v = start; v <= n; ++v) {
      idx[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  return out;
}

// Inverse: the unique skew map whose pairing form is the given (k+1)-form.
inline SkewMap theta_inverse(const ExteriorElement& omega, const GramMatrix& gram) {
  const int n = omega.n();
  if (n != gram.n()) throw std::invalid_argument("Gram size mismatch");
  int w = omega.degree();
  if (w == 0) throw std::invalid_argument("form must have degree >= 1");
  if (w < 0) w = 1;  // zero form -> zero arity-0 map
  SkewMap f(n, w - 1);
  std::vector<int> idx(w - 1);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == w - 1) {
      SparseVec val;
      for (int r = 1; r <= n; ++r) {
        Scalar c(0);
        for (int s = 1; s <= n; ++s) {
          const Rational& binv = gram.inv_entry(r, s);
          if (binv == 0) continue;
          std::vector<int> args = idx;
          args.push_back(s);
          c += Scalar(binv) * omega.eval_basis(args);
        }
        sv_add(val, r, c);
      }
      if (!val.empty()) f.add(idx, val, Scalar(1));
      return;
    }
    for (int v = start; v <= n; ++v) {
      idx[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  return f;
}

// Normalized pairing transform and its inverse (the -1/2 scaling makes the
// transform a morphism for the brackets in play).
inline ExteriorElement phi_map(const SkewMap& f, const GramMatrix& gram) {
  return theta_map(f, gram) * Scalar(rat(-1, 2));
}

inline SkewMap phi_inverse(const ExteriorElement& omega, const GramMatrix& gram) {
  return theta_inverse(omega * Scalar(-2), gram);
}

// ---- brackets <-> odd forms -------------------------------------------

// I(X,Y,Z) = B([X,Y],Z) as an exterior 3-form.
inline ExteriorElement threeform_from_bracket(const LieAlgebraDef& l) {
  return theta_map(l.bracket(), l.gram());
}

// From an odd form of degree 2k+1 >= 3 to the arity-2k structure candidate
// F with B(F(Y_1..Y_2k), Y) = I(Y_1..Y_2k, Y); no Jacobi-type check is made.
inline SkewMap bracket_from_form(const QuadraticSpace& q, const ExteriorElement& i_form) {
  if (i_form.n() != q.n) throw std::invalid_argument("form size mismatch");
  int w = i_form.degree();
  if (w < 3 || w % 2 == 0)
    throw std::invalid_argument("structure forms must have odd degree >= 3");
  GrassmannDerivation d = poisson_adjoint(i_form, q.gram) * Scalar(rat(-1, 2));
  return from_derivation(d);
}

struct DecomposabilityResult {
  bool decomposable;
  int support_dim;  // dim of the smallest subspace carrying the form
};

// A degree-k form is decomposable iff its support dimension equals k.
inline DecomposabilityResult is_decomposable(const ExteriorElement& form) {
  if (form.is_zero())
    throw std::invalid_argument("the zero form has no decomposability type");
  int k = form.degree();
  const int n = form.n();
  // matrix of X -> iota_X(form) over the basis
  std::vector<Mask> cols;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (std::popcount(m) == k - 1) cols.push_back(m);
  std::map<Mask, int> col_of;
  for (size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = static_cast<int>(c);
  QMatrix m(n, static_cast<int>(cols.size()));
  for (int r = 1; r <= n; ++r) {
    ExteriorElement ir = interior(form, r);
    for (const auto& [mask, c] : ir.terms())
      m.at(r - 1, col_of.at(mask)) = c.as_rational();
  }
  int support = m.rank();
  return {support == k, support};
}

// ---- elementary quadratic algebras ------------------------------------

inline LieAlgebraDef sl2_algebra() {
  // basis H, E, F with [H,E] = 2E, [H,F] = -2F, [E,F] = H; B = trace form
  SkewMap b(3, 2);
  b.add({1, 2}, 2, Scalar(2));
  b.add({1, 3}, 3, Scalar(-2));
  b.add({2, 3}, 1, Scalar(1));
  QMatrix g(3, 3);
  g.at(0, 0) = 2;
  g.at(1, 2) = 1;
  g.at(2, 1) = 1;
  return LieAlgebraDef(std::move(b), GramMatrix(std::move(g)));
}

inline LieAlgebraDef elementary4() {
  // basis Z, P, Q, X; B(Z,X) = B(P,Q) = 1; [X,P] = P, [X,Q] = -Q, [P,Q] = Z
  SkewMap b(4, 2);
  b.add({2, 4}, 2, Scalar(-1));
  b.add({3, 4}, 3, Scalar(1));
  b.add({2, 3}, 1, Scalar(1));
  QMatrix g(4, 4);
  g.at(0, 3) = 1;
  g.at(3, 0) = 1;
  g.at(1, 2) = 1;
  g.at(2, 1) = 1;
  return LieAlgebraDef(std::move(b), GramMatrix(std::move(g)));
}

inline LieAlgebraDef elementary5() {
  // basis Z1, Z2, X1, X2, T; B(Zi,Xj) = delta, B(T,T) = 1;
  // [X1,T] = -Z2, [X2,T] = Z1, [X1,X2] = T
  SkewMap b(5, 2);
  b.add({3, 5}, 2, Scalar(-1));
  b.add({4, 5}, 1, Scalar(1));
  b.add({3, 4}, 5, Scalar(1));
  QMatrix g(5, 5);
  g.at(0, 2) = 1;
  g.at(2, 0) = 1;
  g.at(1, 3) = 1;
  g.at(3, 1) = 1;
  g.at(4, 4) = 1;
  return LieAlgebraDef(std::move(b), GramMatrix(std::move(g)));
}

inline LieAlgebraDef elementary6() {
  // basis Z1..Z3, X1..X3; B(Zi,Xj) = delta;
  // [X1,X2] = Z3, [X2,X3] = Z1, [X3,X1] = Z2
  SkewMap b(6, 2);
  b.add({4, 5}, 3, Scalar(1));
  b.add({5, 6}, 1, Scalar(1));
  b.add({4, 6}, 2, Scalar(-1));
  QMatrix g(6, 6);
  for (int i = 0; i < 3; ++i) {
    g.at(i, 3 + i) = 1;
    g.at(3 + i, i) = 1;
  }
  return LieAlgebraDef(std::move(b), GramMatrix(std::move(g)));
}

inline std::vector<LieAlgebraDef> elementary_catalog() {
  return {sl2_algebra(), elementary4(), elementary5(), elementary6()};
}

// Lie algebra spanned by explicit matrices (must be closed under the
// commutator); invariant form B(X,Y) = Tr(XY).
inline LieAlgebraDef matrix_lie_algebra(const std::vector<QMatrix>& basis) {
  const int n = static_cast<int>(basis.size());
  if (n == 0) throw std::invalid_argument("empty basis");
  const int m = basis[0].rows();
  for (const auto& b : basis)
    if (b.rows() != m || b.cols() != m)
      throw std::invalid_argument("basis matrices must share one square shape");
  QMatrix flat(m * m, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) flat.at(r * m + s, c) = basis[c].at(r, s);
  SkewMap br(n, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      QMatrix comm = basis[i - 1].multiply(basis[j - 1]);
      QMatrix ba = basis[j - 1].multiply(basis[i - 1]);
      std::vector<Rational> rhs(m * m);
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
          rhs[r * m + s] = comm.at(r, s) - ba.at(r, s);
      auto sol = flat.solve(rhs);
      if (!sol) throw std::invalid_argument("basis is not closed under commutators");
      SparseVec out;
      for (int r = 1; r <= n; ++r) sv_add(out, r, Scalar((*sol)[r - 1]));
      if (!out.empty()) br.add({i, j}, out, Scalar(1));
    }
  QMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QMatrix prod = basis[i].multiply(basis[j]);
      Rational tr = 0;
      for (int r = 0; r < m; ++r) tr += prod.at(r, r);
      g.at(i, j) = tr;
    }
  return LieAlgebraDef(std::move(br), GramMatrix(std::move(g)));
}

// gl(m) on the elementary-matrix basis E_ab, index (a-1)m + b.
inline LieAlgebraDef gl_lie(int m) {
  std::vector<QMatrix> basis;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      QMatrix e(m, m);
      e.at(a, b) = 1;
      basis.push_back(std::move(e));
    }
  return matrix_lie_algebra(basis);
}

// sl(m): H_i = E_ii - E_(i+1)(i+1) first, then E_ab (a != b) in row order.
inline LieAlgebraDef sl_lie(int m) {
  std::vector<QMatrix> basis;
  for (int i = 0; i + 1 < m; ++i) {
    QMatrix h(m, m);
    h.at(i, i) = 1;
    h.at(i + 1, i + 1) = -1;
    basis.push_back(std::move(h));
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      QMatrix e(m, m);
      e.at(a, b) = 1;
      basis.push_back(std::move(e));
    }
  return matrix_lie_algebra(basis);
}

inline LieAlgebraDef abelian_lie(int n) {
  return LieAlgebraDef(SkewMap(n, 2), GramMatrix::identity(n));
}

// Orthogonal direct sum of two quadratic Lie algebras (block bracket and
// block form).
inline LieAlgebraDef direct_sum(const LieAlgebraDef& a, const LieAlgebraDef& b) {
  const int n1 = a.n(), n2 = b.n();
  SkewMap br(n1 + n2, 2);
  for (const auto& [u, vec] : a.bracket().table()) br.add(u, vec, Scalar(1));
  for (const auto& [u, vec] : b.bracket().table()) {
    std::vector<int> key = {u[0] + n1, u[1] + n1};
    SparseVec shifted;
    for (const auto& [r, c] : vec) shifted[r + n1] = c;
    br.add(key, shifted, Scalar(1));
  }
  QMatrix g(n1 + n2, n1 + n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) g.at(i, j) = a.gram().matrix().at(i, j);
  for (int i = 0; i < n2; ++i)
    for (int j = 0; j < n2; ++j) g.at(n1 + i, n1 + j) = b.gram().matrix().at(i, j);
  return LieAlgebraDef(std::move(br), GramMatrix(std::move(g)));
}

// ---- structure tests ---------------------------------------------------

inline QMatrix killing_form(const LieAlgebraDef& l) {
  const int n = l.n();
  std::vector<QMatrix> ads;
  for (int i = 1; i <= n; ++i) ads.push_back(l.ad_matrix(SparseVec{{i, Scalar(1)}}));
  QMatrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      QMatrix prod = ads[i].multiply(ads[j]);
      Rational tr = 0;
      for (int r = 0; r < n; ++r) tr += prod.at(r, r);
      k.at(i, j) = tr;
      k.at(j, i) = tr;
    }
  return k;
}

inline bool is_semisimple(const LieAlgebraDef& l) {
  return killing_form(l).rank() == l.n();
}

// Elementary = non-abelian quadratic with the smallest possible derived
// ideal (dimension 3); cross-checked against decomposability of the
// structure 3-form. The two criteria must agree.
inline bool is_elementary(const LieAlgebraDef& l) {
  int derived_dim = static_cast<int>(l.derived_basis().size());
  if (derived_dim == 0) return false;
  bool by_dim = derived_dim == 3;
  bool by_form = is_decomposable(threeform_from_bracket(l)).decomposable;
  if (by_dim != by_form)
    throw std::logic_error("elementary criteria disagree");
  return by_dim;
}

struct CentralReduction {
  // coordinates in the original basis
  std::vector<std::vector<Rational>> central_basis;
  GramMatrix central_gram;
  std::vector<std::vector<Rational>> reduced_basis;
  LieAlgebraDef reduced;
};

// Splits off a nondegenerate central factor: z is a deterministically chosen
// complement of Z(g) cap [g,g] inside Z(g) (lowest-index extension), and the
// reduced algebra lives on the orthogonal of z.
inline CentralReduction reduce_center(const LieAlgebraDef& l) {
  const int n = l.n();
  const GramMatrix& gram = l.gram();
  auto center = l.center_basis();
  auto derived = l.derived_basis();
  if (derived.empty())
    throw std::invalid_argument("central reduction needs a non-abelian algebra");

  // z0 = center cap derived: kernel columns [C | -D]
  std::vector<std::vector<Rational>> z0;
  if (!center.empty() && !derived.empty()) {
    QMatrix m(n, static_cast<int>(center.size() + derived.size()));
    for (size_t c = 0; c < center.size(); ++c)
      for (int r = 0; r < n; ++r) m.at(r, static_cast<int>(c)) = center[c][r];
    for (size_t c = 0; c < derived.size(); ++c)
      for (int r = 0; r < n; ++r)
        m.at(r, static_cast<int>(center.size() + c)) = -derived[c][r];
    for (const auto& k : m.kernel_basis()) {
      std::vector<Rational> v(n, Rational(0));
      for (size_t c = 0; c < center.size(); ++c)
        for (int r = 0; r < n; ++r) v[r] += k[c] * center[c][r];
      bool zero = true;
      for (const auto& x : v) zero = zero && x == 0;
      if (!zero) z0.push_back(std::move(v));
    }
    z0 = LieAlgebraDef::canonical_span(z0, n);
  }

  // complement of z0 in the center, greedily extending by center basis order
  std::vector<std::vector<Rational>> complement;
  {
    std::vector<std::vector<Rational>> span = z0;
    for (const auto& v : center) {
      std::vector<std::vector<Rational>> trial = span;
      trial.push_back(v);
      if (span_rank(trial, n) > span_rank(span, n)) {
        span.push_back(v);
        complement.push_back(v);
      }
    }
  }

  // l = complement^perp under B
  QMatrix perp(static_cast<int>(complement.size()), n);
  for (size_t r = 0; r < complement.size(); ++r)
    for (int c = 0; c < n; ++c) {
      Rational s = 0;
      for (int i = 0; i < n; ++i)
        s += complement[r][i] * gram.matrix().at(i, c);
      perp.at(static_cast<int>(r), c) = s;
    }
  std::vector<std::vector<Rational>> reduced_basis = perp.kernel_basis();

  if (complement.size() + reduced_basis.size() != static_cast<size_t>(n))
    throw std::logic_error("central splitting failed to be direct");

  // restricted forms
  auto restricted_gram = [&gram, n](const std::vector<std::vector<Rational>>& vs) {
    int d = static_cast<int>(vs.size());
    QMatrix g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s = 0;
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) s += vs[i][r] * gram.matrix().at(r, c) * vs[j][c];
        g.at(i, j) = s;
      }
    return g;
  };

  GramMatrix central_gram{restricted_gram(complement)};  // throws if degenerate

  // bracket in the reduced basis
  const int d = static_cast<int>(reduced_basis.size());
  if (d == 0) throw std::logic_error("reduction emptied a non-abelian algebra");
  QMatrix basis_cols(n, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < n; ++r) basis_cols.at(r, c) = reduced_basis[c][r];
  SkewMap br(d, 2);
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) {
      SparseVec xi, xj;
      for (int r = 0; r < n; ++r) {
        if (reduced_basis[i - 1][r] != 0) xi[r + 1] = Scalar(reduced_basis[i - 1][r]);
        if (reduced_basis[j - 1][r] != 0) xj[r + 1] = Scalar(reduced_basis[j - 1][r]);
      }
      SparseVec val = l.bracket_of(xi, xj);
      std::vector<Rational> rhs(n, Rational(0));
      for (const auto& [r, c] : val) rhs[r - 1] = c.as_rational();
      auto sol = basis_cols.solve(rhs);
      if (!sol) throw std::logic_error("reduced part is not a subalgebra");
      SparseVec out;
      for (int r = 1; r <= d; ++r) sv_add(out, r, Scalar((*sol)[r - 1]));
      if (!out.empty()) br.add({i, j}, out, Scalar(1));
    }

  LieAlgebraDef reduced(std::move(br), GramMatrix(restricted_gram(reduced_basis)));
  return CentralReduction{std::move(complement), std::move(central_gram),
                          std::move(reduced_basis), std::move(reduced)};
}

// Invariance of an even-arity skew map with respect to the form, decided by
// three routes that must agree: the defining identity, skew-adjointness of
// the partial maps, and cyclicity of the pairing form.
inline bool is_invariant_form(const SkewMap& f, const GramMatrix& gram) {
  if (f.n() != gram.n()) throw std::invalid_argument("dimension mismatch");
  if (f.arity() < 2 || f.arity() % 2 != 0)
    throw std::invalid_argument("invariance test expects even arity >= 2");
  const int n = f.n();
  const int head = f.arity() - 1;

  std::vector<std::vector<int>> prefixes;
  std::vector<int> idx(head);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == head) {
      prefixes.push_back(idx);
      return;
    }
    for (int v = start; v <= n; ++v) {
      idx[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 1);

  bool by_identity = true;
  for (const auto& pre : prefixes) {
    for (int i = 1; i <= n && by_identity; ++i)
      for (int j = 1; j <= n && by_identity; ++j) {
        std::vector<int> ti = pre, tj = pre;
        ti.push_back(i);
        tj.push_back(j);
        Scalar s(0);
        for (const auto& [r, c] : f.eval(ti)) s += c * Scalar(gram.entry(r, j));
        for (const auto& [r, c] : f.eval(tj)) s += c * Scalar(gram.entry(i, r));
        if (!s.is_zero()) by_identity = false;
      }
    if (!by_identity) break;
  }

  bool by_matrix = true;
  for (const auto& pre : prefixes) {
    QMatrix m(n, n);
    for (int s = 1; s <= n; ++s) {
      std::vector<int> t = pre;
      t.push_back(s);
      for (const auto& [r, c] : f.eval(t)) m.at(r - 1, s - 1) = c.as_rational();
    }
    QMatrix skew = m.transposed().multiply(gram.matrix());
    QMatrix other = gram.matrix().multiply(m);
    for (int r = 0; r < n && by_matrix; ++r)
      for (int c = 0; c < n; ++c)
        if (skew.at(r, c) + other.at(r, c) != 0) {
          by_matrix = false;
          break;
        }
    if (!by_matrix) break;
  }

  bool by_cyclicity = is_cyclic(f, gram);

  if (by_identity != by_matrix || by_matrix != by_cyclicity)
    throw std::logic_error("invariance criteria disagree");
  return by_identity;
}

}  // namespace gla
