#pragma once

// Cochain complexes and exact Betti numbers for the graded structures in
// this library: scalar-coefficient and adjoint complexes of a Lie algebra,
// the differential attached to any even structure map, the cyclic
// subcomplex through the pairing transform, invariants, and the wedge
// product of cyclic cochains.

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gla/derivation.hpp"
#include "gla/exterior.hpp"
#include "gla/linalg.hpp"
#include "gla/multimap.hpp"
#include "gla/quadratic.hpp"
#include "gla/scalar.hpp"

namespace gla {

// ---- coordinate enumerations ------------------------------------------

inline std::vector<Mask> masks_of_degree(int n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

inline std::vector<Rational> form_coordinates(const ExteriorElement& a,
                                              const std::vector<Mask>& basis) {
  std::map<Mask, int> pos;
  for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
  std::vector<Rational> v(basis.size(), Rational(0));
  for (const auto& [m, c] : a.terms()) v[pos.at(m)] = c.as_rational();
  return v;
}

// Basis of the space of skew arity-k maps: pairs (increasing tuple, output
// basis index) in lexicographic order, tuple major.
struct SkewBasisEnum {
  int n = 0;
  int arity = 0;
  std::vector<std::pair<std::vector<int>, int>> items;
  std::map<std::pair<std::vector<int>, int>, int> index;

  int size() const { return static_cast<int>(items.size()); }
};

inline SkewBasisEnum enumerate_skew_basis(int n, int arity) {
  SkewBasisEnum e;
  e.n = n;
  e.arity = arity;
  std::vector<int> idx(arity);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == arity) {
      for (int out = 1; out <= n; ++out) e.items.emplace_back(idx, out);
      return;
    }
    for (int v = start; v <= n; ++v) {
      idx[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 1);
  for (size_t i = 0; i < e.items.size(); ++i) e.index[e.items[i]] = static_cast<int>(i);
  return e;
}

inline std::vector<Rational> skew_coordinates(const SkewMap& f, const SkewBasisEnum& e) {
  std::vector<Rational> v(e.items.size(), Rational(0));
  for (const auto& [u, vec] : f.table())
    for (const auto& [out, c] : vec) v[e.index.at({u, out})] = c.as_rational();
  return v;
}

inline SkewMap skew_from_coordinates(const std::vector<Rational>& v,
                                     const SkewBasisEnum& e) {
  SkewMap f(e.n, e.arity);
  for (size_t i = 0; i < e.items.size(); ++i)
    if (v[i] != 0) f.add(e.items[i].first, e.items[i].second, Scalar(v[i]));
  return f;
}

// ---- differential matrices --------------------------------------------

// Matrix of a Grassmann derivation restricted to one homogeneous level.
inline QMatrix derivation_matrix(const GrassmannDerivation& d, int from_degree) {
  const int n = d.n();
  std::vector<Mask> dom = masks_of_degree(n, from_degree);
  std::vector<Mask> cod = masks_of_degree(n, from_degree + d.degree());
  std::map<Mask, int> row;
  for (size_t i = 0; i < cod.size(); ++i) row[cod[i]] = static_cast<int>(i);
  QMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
  for (size_t c = 0; c < dom.size(); ++c) {
    ExteriorElement img = d.apply(ExteriorElement::monomial(n, dom[c], Scalar(1)));
    for (const auto& [mask, coeff] : img.terms())
      m.at(row.at(mask), static_cast<int>(c)) = coeff.as_rational();
  }
  return m;
}

// Matrix of a linear operation on skew maps between two arities.
inline QMatrix skew_operator_matrix(const std::function<SkewMap(const SkewMap&)>& op,
                                    const SkewBasisEnum& dom, const SkewBasisEnum& cod) {
  QMatrix m(cod.size(), dom.size());
  for (int c = 0; c < dom.size(); ++c) {
    SkewMap basis_map(dom.n, dom.arity);
    basis_map.add(dom.items[c].first, dom.items[c].second, Scalar(1));
    SkewMap img = op(basis_map);
    if (!img.is_zero() && img.arity() != cod.arity)
      throw std::invalid_argument("operator lands in the wrong arity");
    for (const auto& [u, vec] : img.table())
      for (const auto& [out, coeff] : vec)
        m.at(cod.index.at({u, out}), c) = coeff.as_rational();
  }
  return m;
}

// ---- Betti numbers -----------------------------------------------------

struct BettiTable {
  int step = 1;
  std::vector<int> dims;
  std::vector<int> d_ranks;
  std::vector<int> betti;
};

// dims[k] for k = 0..K, mats[k] the differential C^k -> C^(k+step) whenever
// k + step <= K. Verifies the complex property before computing anything.
inline BettiTable betti_from_matrices(const std::vector<int>& dims,
                                      const std::vector<QMatrix>& mats, int step) {
  if (step < 1) throw std::invalid_argument("complex step must be >= 1");
  const int levels = static_cast<int>(dims.size());
  BettiTable t;
  t.step = step;
  t.dims = dims;
  t.d_ranks.assign(levels, 0);
  for (int k = 0; k < levels; ++k) {
    if (k + step >= levels) continue;
    if (static_cast<int>(mats.size()) <= k)
      throw std::invalid_argument("missing differential");
    if (mats[k].cols() != dims[k] || mats[k].rows() != dims[k + step])
      throw std::invalid_argument("differential shape mismatch");
  }
  for (int k = 0; k + 2 * step < levels; ++k)
    if (!mats[k + step].multiply(mats[k]).is_zero())
      throw std::logic_error("differential does not square to zero");
  for (int k = 0; k + step < levels; ++k) t.d_ranks[k] = mats[k].rank();
  t.betti.assign(levels, 0);
  for (int k = 0; k < levels; ++k) {
    int out_rank = (k + step < levels) ? t.d_ranks[k] : 0;
    int in_rank = (k - step >= 0) ? t.d_ranks[k - step] : 0;
    t.betti[k] = dims[k] - out_rank - in_rank;
    if (t.betti[k] < 0) throw std::logic_error("negative Betti number");
  }
  if (step == 1) {
    // consecutive ranks cancel in pairs, so the alternating sums must agree
    long euler_dims = 0, euler_betti = 0;
    for (int k = 0; k < levels; ++k) {
      long s = (k % 2 == 0) ? 1 : -1;
      euler_dims += s * dims[k];
      euler_betti += s * t.betti[k];
    }
    if (euler_dims != euler_betti)
      throw std::logic_error("Euler characteristic mismatch");
  }
  return t;
}

// ---- the standard complexes -------------------------------------------

// Scalar-coefficient complex on the exterior algebra, differential induced
// by the bracket.
inline BettiTable trivial_cohomology(const LieAlgebraDef& l) {
  const int n = l.n();
  GrassmannDerivation d = chevalley_differential(l.bracket());
  std::vector<int> dims;
  std::vector<QMatrix> mats;
  for (int k = 0; k <= n; ++k) {
    dims.push_back(static_cast<int>(masks_of_degree(n, k).size()));
    mats.push_back(derivation_matrix(d, k));
  }
  return betti_from_matrices(dims, mats, 1);
}

// Adjoint-coefficient complex on skew multilinear maps, d = bracket with the
// structure map.
inline BettiTable adjoint_cohomology(const LieAlgebraDef& l, int max_arity) {
  const int n = l.n();
  if (max_arity < 0 || max_arity > n)
    throw std::invalid_argument("arity range out of bounds");
  std::vector<SkewBasisEnum> enums;
  for (int k = 0; k <= max_arity + 1; ++k) enums.push_back(enumerate_skew_basis(n, k));
  std::vector<int> dims;
  std::vector<QMatrix> mats;
  const SkewMap& mu = l.bracket();
  for (int k = 0; k <= max_arity; ++k) {
    dims.push_back(enums[k].size());
    auto op = [&mu](const SkewMap& f) { return nr_bracket(mu, f); };
    mats.push_back(skew_operator_matrix(op, enums[k], enums[k + 1]));
  }
  // helper level so the outgoing rank at max_arity is counted
  dims.push_back(enums[max_arity + 1].size());
  mats.push_back(QMatrix());
  BettiTable t = betti_from_matrices(dims, mats, 1);
  // drop the helper level
  t.dims.pop_back();
  t.d_ranks.pop_back();
  t.betti.pop_back();
  return t;
}

// Complex on the exterior algebra attached to any even structure map with
// vanishing self-bracket: the differential is the induced derivation, raising
// degree by arity - 1. For an ordinary Lie bracket this is the scalar complex.
inline BettiTable twok_complex(const SkewMap& f, int max_degree) {
  if (f.arity() < 2 || f.arity() % 2 != 0)
    throw std::invalid_argument("structure map must have even arity >= 2");
  if (!nr_bracket(f, f).is_zero())
    throw std::invalid_argument("structure map must bracket-commute with itself");
  const int n = f.n();
  if (max_degree < 0 || max_degree > n)
    throw std::invalid_argument("degree range out of bounds");
  const int step = f.arity() - 1;
  GrassmannDerivation d = to_derivation(f);
  std::vector<int> dims;
  std::vector<QMatrix> mats;
  for (int k = 0; k <= max_degree; ++k) {
    dims.push_back(static_cast<int>(masks_of_degree(n, k).size()));
    mats.push_back(derivation_matrix(d, k));
  }
  return betti_from_matrices(dims, mats, step);
}

// Cyclic subcomplex of a quadratic Lie algebra, computed in pairing-form
// coordinates: arity-k cyclic cochains correspond to (k+1)-forms.
inline BettiTable cyclic_cohomology(const LieAlgebraDef& l, int max_arity) {
  const int n = l.n();
  const GramMatrix& gram = l.gram();
  const SkewMap& mu = l.bracket();
  std::vector<int> dims;
  std::vector<QMatrix> mats;
  for (int k = 0; k <= max_arity; ++k) {
    std::vector<Mask> dom = masks_of_degree(n, k + 1);
    std::vector<Mask> cod = masks_of_degree(n, k + 2);
    dims.push_back(static_cast<int>(dom.size()));
    std::map<Mask, int> row;
    for (size_t i = 0; i < cod.size(); ++i) row[cod[i]] = static_cast<int>(i);
    QMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t c = 0; c < dom.size(); ++c) {
      SkewMap cochain =
          theta_inverse(ExteriorElement::monomial(n, dom[c], Scalar(1)), gram);
      SkewMap image = nr_bracket(mu, cochain);
      if (!is_cyclic(image, gram))
        throw std::logic_error("differential left the cyclic subcomplex");
      ExteriorElement img_form = theta_map(image, gram);
      for (const auto& [mask, coeff] : img_form.terms())
        m.at(row.at(mask), static_cast<int>(c)) = coeff.as_rational();
    }
    mats.push_back(std::move(m));
  }
  dims.push_back(static_cast<int>(masks_of_degree(n, max_arity + 2).size()));
  mats.push_back(QMatrix());
  BettiTable t = betti_from_matrices(dims, mats, 1);
  t.dims.pop_back();
  t.d_ranks.pop_back();
  t.betti.pop_back();
  return t;
}

// ---- invariants --------------------------------------------------------

inline SkewMap lie_derivative(const SkewMap& bracket, const SparseVec& x,
                              const SkewMap& f) {
  return nr_bracket(ad_map(bracket, x), f);
}

// Basis of forms killed by every inner derivation of the bracket.
inline std::vector<ExteriorElement> invariant_forms(const LieAlgebraDef& l, int degree) {
  const int n = l.n();
  std::vector<QMatrix> blocks;
  for (int r = 1; r <= n; ++r)
    blocks.push_back(derivation_matrix(theta_derivation(l.bracket(), r), degree));
  QMatrix stacked = vstack(blocks);
  std::vector<Mask> basis = masks_of_degree(n, degree);
  std::vector<ExteriorElement> out;
  for (const auto& v : stacked.kernel_basis()) {
    ExteriorElement e(n);
    for (size_t i = 0; i < basis.size(); ++i)
      if (v[i] != 0) e.add(basis[i], Scalar(v[i]));
    out.push_back(std::move(e));
  }
  return out;
}

// Basis of skew maps killed by every Lie derivative along the basis.
inline std::vector<SkewMap> invariant_skew_maps(const LieAlgebraDef& l, int arity) {
  const int n = l.n();
  SkewBasisEnum dom = enumerate_skew_basis(n, arity);
  std::vector<QMatrix> blocks;
  for (int r = 1; r <= n; ++r) {
    SparseVec x{{r, Scalar(1)}};
    auto op = [&](const SkewMap& f) { return lie_derivative(l.bracket(), x, f); };
    blocks.push_back(skew_operator_matrix(op, dom, dom));
  }
  QMatrix stacked = vstack(blocks);
  std::vector<SkewMap> out;
  for (const auto& v : stacked.kernel_basis())
    out.push_back(skew_from_coordinates(v, dom));
  return out;
}

// For a semisimple quadratic algebra, every pair of invariant forms in the
// given degrees must commute under the super bracket induced by the form.
inline bool poisson_commutativity_check(const LieAlgebraDef& l, int deg1, int deg2) {
  if (!is_semisimple(l))
    throw std::invalid_argument(
        "commutativity of invariants needs a nondegenerate Killing form");
  auto f1 = invariant_forms(l, deg1);
  auto f2 = invariant_forms(l, deg2);
  for (const auto& a : f1)
    for (const auto& b : f2)
      if (!super_poisson(a, b, l.gram()).is_zero()) return false;
  return true;
}

// ---- wedge of cyclic cochains -----------------------------------------

// Multiplication of a skew map by a form on the input side.
inline SkewMap form_times_map(const ExteriorElement& omega, const SkewMap& f) {
  if (omega.n() != f.n()) throw std::invalid_argument("dimension mismatch");
  int extra = omega.is_zero() ? 0 : omega.degree();
  SkewMap out(f.n(), f.arity() + extra);
  for (const auto& [m, c] : omega.terms())
    for (const auto& [u, vec] : f.table()) {
      Mask um = 0;
      for (int g : u) um |= Mask{1} << (g - 1);
      if (m & um) continue;
      int sign = (inversions(m, um) % 2 == 0) ? 1 : -1;
      std::vector<int> key = mask_indices(m | um);
      out.add(key, vec, c * Scalar(sign));
    }
  return out;
}

// Wedge of two cyclic cochains, computed two independent ways that must
// agree: through the form transform, and by the two-sided multiplication
// formula.
inline SkewMap cyclic_wedge(const LieAlgebraDef& l, const SkewMap& c1, const SkewMap& c2) {
  const GramMatrix& gram = l.gram();
  const int k = c1.arity(), kp = c2.arity();
  const int out_arity = k + kp + 1;
  if (c1.is_zero() || c2.is_zero()) return SkewMap(l.n(), out_arity);

  ExteriorElement w = wedge(phi_map(c1, gram), phi_map(c2, gram));
  SkewMap via_transform =
      w.is_zero() ? SkewMap(l.n(), out_arity) : phi_inverse(w, gram);

  SkewMap direct = form_times_map(phi_map(c1, gram), c2);
  SkewMap second = form_times_map(phi_map(c2, gram), c1);
  int sign = ((k + 1) * (kp + 1)) % 2 == 0 ? 1 : -1;
  SkewMap via_products = direct + second * Scalar(sign);

  bool agree = (via_transform.is_zero() && via_products.is_zero()) ||
               via_transform == via_products;
  if (!agree) throw std::logic_error("cyclic wedge routes disagree");
  return via_transform;
}

}  // namespace gla
