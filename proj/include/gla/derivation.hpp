#pragma once

// Graded derivations of the Grassmann algebra, stored by their images on the
// degree-1 generators. A derivation of degree d acts as
//   D = sum_r D(omega_r) ^ iota_r,
// so application never materializes a dense matrix. Includes the passage
// between skew multilinear maps and derivations, the derivation bracket, and
// the Hamiltonian (Poisson-inner) test with its potential.

#include <stdexcept>
#include <vector>

#include "gla/exterior.hpp"
#include "gla/multimap.hpp"
#include "gla/scalar.hpp"

namespace gla {

class GrassmannDerivation {
 public:
  GrassmannDerivation(int n, int degree, std::vector<ExteriorElement> images)
      : n_(n), degree_(degree), images_(std::move(images)) {
    if (n < 1 || n > kMaxGenerators)
      throw std::invalid_argument("generator count must be in [1, 16]");
    // degrees above n - 1 force zero images but stay representable
    if (degree < -1 || degree > kMaxArity)
      throw std::invalid_argument("derivation degree out of range");
    if (static_cast<int>(images_.size()) != n)
      throw std::invalid_argument("need one image per generator");
    for (const auto& img : images_) {
      if (img.n() != n) throw std::invalid_argument("image lives in the wrong algebra");
      if (!img.is_zero() && img.degree() != degree + 1)
        throw std::invalid_argument("generator image has the wrong degree");
    }
  }

  static GrassmannDerivation zero(int n, int degree) {
    return GrassmannDerivation(n, degree, std::vector<ExteriorElement>(n, ExteriorElement(n)));
  }

  int n() const { return n_; }
  int degree() const { return degree_; }
  // 1-based: image of the r-th generator.
  const ExteriorElement& image(int r) const { return images_.at(r - 1); }
  const std::vector<ExteriorElement>& images() const { return images_; }

  bool is_zero() const {
    for (const auto& img : images_)
      if (!img.is_zero()) return false;
    return true;
  }

  bool operator==(const GrassmannDerivation& o) const {
    return n_ == o.n_ && degree_ == o.degree_ && images_ == o.images_;
  }
  bool operator!=(const GrassmannDerivation& o) const { return !(*this == o); }

  GrassmannDerivation operator+(const GrassmannDerivation& o) const {
    if (n_ != o.n_ || degree_ != o.degree_)
      throw std::invalid_argument("derivation shape mismatch");
    std::vector<ExteriorElement> imgs;
    imgs.reserve(n_);
    for (int r = 0; r < n_; ++r) imgs.push_back(images_[r] + o.images_[r]);
    return GrassmannDerivation(n_, degree_, std::move(imgs));
  }

  GrassmannDerivation operator*(const Scalar& s) const {
    std::vector<ExteriorElement> imgs;
    imgs.reserve(n_);
    for (const auto& img : images_) imgs.push_back(img * s);
    return GrassmannDerivation(n_, degree_, imgs);
  }

  GrassmannDerivation operator-(const GrassmannDerivation& o) const {
    return *this + o * Scalar(-1);
  }

  ExteriorElement apply(const ExteriorElement& a) const {
    if (a.n() != n_) throw std::invalid_argument("mixed generator counts");
    ExteriorElement out(n_);
    for (int r = 1; r <= n_; ++r) {
      if (images_[r - 1].is_zero()) continue;
      ExteriorElement part = wedge(images_[r - 1], interior(a, r));
      for (const auto& [m, c] : part.terms()) out.add(m, c);
    }
    return out;
  }

 private:
  int n_;
  int degree_;
  std::vector<ExteriorElement> images_;
};

// [D, D'] = D D' - (-1)^(deg D deg D') D' D, again a derivation.
inline GrassmannDerivation der_bracket(const GrassmannDerivation& d1,
                                       const GrassmannDerivation& d2) {
  if (d1.n() != d2.n()) throw std::invalid_argument("mixed generator counts");
  int sign = (d1.degree() * d2.degree()) % 2 ? -1 : 1;
  std::vector<ExteriorElement> imgs;
  imgs.reserve(d1.n());
  for (int r = 1; r <= d1.n(); ++r)
    imgs.push_back(d1.apply(d2.image(r)) - d2.apply(d1.image(r)) * Scalar(sign));
  int degree = d1.degree() + d2.degree();
  if (degree < -1) {
    // two contractions anticommute to the zero operator
    for (const auto& img : imgs)
      if (!img.is_zero())
        throw std::logic_error("nonzero bracket below the bottom degree");
    return GrassmannDerivation::zero(d1.n(), -1);
  }
  return GrassmannDerivation(d1.n(), degree, std::move(imgs));
}

// The transpose form of a skew map: (tF(omega_r))(Y_1..Y_k) = omega_r(F(Y..)).
inline ExteriorElement transpose_form(const SkewMap& f, int r) {
  ExteriorElement out(f.n());
  for (const auto& [u, vec] : f.table()) {
    Scalar c = sv_coeff(vec, r);
    if (c.is_zero()) continue;
    Mask m = 0;
    for (int g : u) m |= Mask{1} << (g - 1);
    out.add(m, c);
  }
  return out;
}

// Degree-(k-1) derivation attached to an arity-k skew map:
//   D_F(omega_r) = -tF(omega_r).
// For arity 0 this is -iota_X; for a bracket it is the cochain differential.
inline GrassmannDerivation to_derivation(const SkewMap& f) {
  if (f.n() > kMaxGenerators)
    throw std::invalid_argument("dimension exceeds the Grassmann generator cap");
  std::vector<ExteriorElement> imgs;
  imgs.reserve(f.n());
  for (int r = 1; r <= f.n(); ++r) imgs.push_back(-transpose_form(f, r));
  return GrassmannDerivation(f.n(), f.arity() - 1, std::move(imgs));
}

// Inverse of to_derivation on homogeneous derivations of degree >= -1.
inline SkewMap from_derivation(const GrassmannDerivation& d) {
  SkewMap f(d.n(), d.degree() + 1);
  for (int r = 1; r <= d.n(); ++r)
    for (const auto& [m, c] : d.image(r).terms())
      f.add(mask_indices(m), r, -c);
  return f;
}

// ad X as an arity-1 skew map, from a bracket table.
inline SkewMap ad_map(const SkewMap& bracket, const SparseVec& x) {
  if (bracket.arity() != 2) throw std::invalid_argument("bracket must have arity 2");
  SkewMap t(bracket.n(), 1);
  for (int s = 1; s <= bracket.n(); ++s) {
    SparseVec val;
    for (const auto& [i, c] : x) sv_add(val, bracket.eval({i, s}), c);
    t.add({s}, val, Scalar(1));
  }
  return t;
}

// Lie derivative theta_X on the Grassmann algebra (degree 0):
//   theta_X(Omega)(Y_1..Y_p) = -sum_i Omega(Y_1, .., [X, Y_i], .., Y_p).
inline GrassmannDerivation theta_derivation(const SkewMap& bracket, const SparseVec& x) {
  return to_derivation(ad_map(bracket, x));
}

inline GrassmannDerivation theta_derivation(const SkewMap& bracket, int basis_index) {
  return theta_derivation(bracket, SparseVec{{basis_index, Scalar(1)}});
}

// Cochain differential of a bracket (degree 1, squares to zero iff Jacobi).
inline GrassmannDerivation chevalley_differential(const SkewMap& bracket) {
  if (bracket.arity() != 2) throw std::invalid_argument("bracket must have arity 2");
  return to_derivation(bracket);
}

// Inner derivation of the super Poisson bracket: ad_P(Omega) = {Omega, .}.
// Omega must be homogeneous; the result has degree deg(Omega) - 2.
inline GrassmannDerivation poisson_adjoint(const ExteriorElement& omega,
                                           const GramMatrix& gram) {
  int w = omega.degree();
  if (w < 0) return GrassmannDerivation::zero(omega.n(), -1);
  std::vector<ExteriorElement> imgs;
  imgs.reserve(omega.n());
  for (int k = 1; k <= omega.n(); ++k)
    imgs.push_back(super_poisson(omega, ExteriorElement::generator(omega.n(), k), gram));
  return GrassmannDerivation(omega.n(), w - 2 >= -1 ? w - 2 : -1, std::move(imgs));
}

// Index-lowered Poisson-inner criterion: with E_r = sum_k B_rk D(omega_k),
// D lies in ad_P of the Grassmann algebra iff
//   iota_r(E_s) + iota_s(E_r) = 0 for all r, s.
inline bool is_hamiltonian(const GrassmannDerivation& d, const GramMatrix& gram) {
  if (gram.n() != d.n()) throw std::invalid_argument("Gram size mismatch");
  const int n = d.n();
  std::vector<ExteriorElement> lowered;
  lowered.reserve(n);
  for (int r = 1; r <= n; ++r) {
    ExteriorElement e(n);
    for (int k = 1; k <= n; ++k) {
      const Rational& b = gram.entry(r, k);
      if (b == 0) continue;
      ExteriorElement part = d.image(k) * Scalar(b);
      for (const auto& [m, c] : part.terms()) e.add(m, c);
    }
    lowered.push_back(std::move(e));
  }
  for (int r = 1; r <= n; ++r)
    for (int s = r; s <= n; ++s)
      if (!(interior(lowered[s - 1], r) + interior(lowered[r - 1], s)).is_zero())
        return false;
  return true;
}

// Potential of a Hamiltonian derivation of degree w - 2:
//   Omega = 1/(2w) sum_k D(omega_k) ^ phi(X_k),  phi(X_k) = sum_j B_kj omega_j.
// Normalized with zero degree-0 part; throws if D is not Hamiltonian.
inline ExteriorElement hamiltonian_potential(const GrassmannDerivation& d,
                                             const GramMatrix& gram) {
  if (gram.n() != d.n()) throw std::invalid_argument("Gram size mismatch");
  const int n = d.n();
  if (d.is_zero()) return ExteriorElement(n);
  const int w = d.degree() + 2;
  ExteriorElement omega(n);
  for (int k = 1; k <= n; ++k) {
    if (d.image(k).is_zero()) continue;
    ExteriorElement phi_k(n);
    for (int j = 1; j <= n; ++j) phi_k.add(Mask{1} << (j - 1), Scalar(gram.entry(k, j)));
    ExteriorElement part = wedge(d.image(k), phi_k);
    for (const auto& [m, c] : part.terms()) omega.add(m, c);
  }
  omega = omega * (Scalar(1) / Scalar(2 * w));
  for (int r = 1; r <= n; ++r)
    if (super_poisson(omega, ExteriorElement::generator(n, r), gram) != d.image(r))
      throw std::invalid_argument("derivation is not Hamiltonian");
  return omega;
}

}  // namespace gla
