#pragma once

// Polynomial multivector fields on the dual of the base space, in coordinates
// x_1..x_n attached to the chosen basis. A multivector of degree p is a sum
// of terms (monomial coefficient) x (p directions), and acts on p polynomials
// through the determinant of partials. The graded bracket extends the Lie
// bracket of polynomial vector fields.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gla/derivation.hpp"
#include "gla/exterior.hpp"
#include "gla/scalar.hpp"

namespace gla {

constexpr int kPolyDegreeCap = 8;

class Polynomial {
 public:
  explicit Polynomial(int n, int degree_cap = kPolyDegreeCap)
      : n_(n), cap_(degree_cap) {
    if (n < 1 || n > kMaxGenerators)
      throw std::invalid_argument("variable count must be in [1, 16]");
  }

  static Polynomial constant(int n, const Scalar& c) {
    Polynomial p(n);
    p.add(std::vector<int>(n, 0), c);
    return p;
  }

  static Polynomial coordinate(int n, int i) {
    Polynomial p(n);
    std::vector<int> e(n, 0);
    e.at(i - 1) = 1;
    p.add(e, Scalar(1));
    return p;
  }

  int n() const { return n_; }
  int degree_cap() const { return cap_; }
  const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const std::vector<int>& exps, const Scalar& c) {
    if (static_cast<int>(exps.size()) != n_)
      throw std::invalid_argument("exponent vector has wrong length");
    int total = 0;
    for (int e : exps) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      total += e;
    }
    if (total > cap_)
      throw std::length_error("polynomial degree cap (" + std::to_string(cap_) +
                              ") exceeded");
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      terms_.emplace(exps, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool operator==(const Polynomial& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator+(const Polynomial& o) const {
    check_same(o);
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add(e, c);
    return out;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + o * Scalar(-1); }

  Polynomial operator*(const Scalar& s) const {
    Polynomial out(n_, cap_);
    for (const auto& [e, c] : terms_) out.add(e, c * s);
    return out;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_same(o);
    Polynomial out(n_, cap_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        std::vector<int> e = e1;
        for (int i = 0; i < n_; ++i) e[i] += e2[i];
        out.add(e, c1 * c2);
      }
    return out;
  }

  Polynomial partial(int i) const {
    if (i < 1 || i > n_) throw std::invalid_argument("variable index out of range");
    Polynomial out(n_, cap_);
    for (const auto& [e, c] : terms_) {
      if (e[i - 1] == 0) continue;
      std::vector<int> d = e;
      --d[i - 1];
      out.add(d, c * Scalar(e[i - 1]));
    }
    return out;
  }

  Scalar eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != n_)
      throw std::invalid_argument("evaluation point has wrong length");
    Scalar acc(0);
    for (const auto& [e, c] : terms_) {
      Scalar term = c;
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= Scalar(point[i]);
      acc += term;
    }
    return acc;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int t = 0;
      for (int x : e) t += x;
      d = std::max(d, t);
    }
    return d;
  }

  void check_same(const Polynomial& o) const {
    if (n_ != o.n_) throw std::invalid_argument("mixed variable counts");
  }

 private:
  int n_, cap_;
  std::map<std::vector<int>, Scalar> terms_;
};

// Degree-p multivector: terms (exponent vector, direction mask of popcount p).
class PolyMultivector {
 public:
  PolyMultivector(int n, int degree) : n_(n), degree_(degree) {
    if (n < 1 || n > kMaxGenerators)
      throw std::invalid_argument("variable count must be in [1, 16]");
    if (degree < 0 || degree > n)
      throw std::invalid_argument("multivector degree must be in [0, n]");
  }

  int n() const { return n_; }
  int degree() const { return degree_; }
  const std::map<std::pair<std::vector<int>, Mask>, Scalar>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add(const std::vector<int>& exps, Mask directions, const Scalar& c) {
    if (static_cast<int>(exps.size()) != n_)
      throw std::invalid_argument("exponent vector has wrong length");
    int total = 0;
    for (int e : exps) {
      if (e < 0) throw std::invalid_argument("negative exponent");
      total += e;
    }
    if (total > kPolyDegreeCap)
      throw std::length_error("polynomial degree cap (" +
                              std::to_string(kPolyDegreeCap) + ") exceeded");
    if (directions >> n_)
      throw std::invalid_argument("direction uses variables beyond n");
    if (std::popcount(directions) != degree_)
      throw std::invalid_argument("direction count does not match degree");
    if (c.is_zero()) return;
    auto key = std::make_pair(exps, directions);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool operator==(const PolyMultivector& o) const {
    return n_ == o.n_ && degree_ == o.degree_ && terms_ == o.terms_;
  }
  bool operator!=(const PolyMultivector& o) const { return !(*this == o); }

  PolyMultivector operator+(const PolyMultivector& o) const {
    if (n_ != o.n_ || degree_ != o.degree_)
      throw std::invalid_argument("multivector shape mismatch");
    PolyMultivector out = *this;
    for (const auto& [k, c] : o.terms_) out.add(k.first, k.second, c);
    return out;
  }

  PolyMultivector operator*(const Scalar& s) const {
    PolyMultivector out(n_, degree_);
    for (const auto& [k, c] : terms_) out.add(k.first, k.second, c * s);
    return out;
  }

  PolyMultivector operator-(const PolyMultivector& o) const {
    return *this + o * Scalar(-1);
  }

  // Action on degree() polynomials: each term contributes
  //   x^e * det( d f_b / d x_(j_a) ).
  Polynomial eval(const std::vector<Polynomial>& args) const {
    if (static_cast<int>(args.size()) != degree_)
      throw std::invalid_argument("argument count does not match degree");
    for (const auto& f : args)
      if (f.n() != n_) throw std::invalid_argument("mixed variable counts");
    Polynomial out(n_);
    for (const auto& [key, c] : terms_) {
      const auto& [exps, dirs] = key;
      std::vector<int> js = mask_indices(dirs);
      Polynomial det = determinant_of_partials(js, args);
      if (det.is_zero()) continue;
      Polynomial mono(n_);
      mono.add(exps, c);
      out = out + mono * det;
    }
    return out;
  }

 private:
  Polynomial determinant_of_partials(const std::vector<int>& js,
                                     const std::vector<Polynomial>& args) const {
    const int p = static_cast<int>(js.size());
    std::vector<std::vector<Polynomial>> partials(p, std::vector<Polynomial>());
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) partials[a].push_back(args[b].partial(js[a]));
    // permutation expansion; p stays small
    Polynomial det(n_);
    std::vector<int> perm(p);
    for (int i = 0; i < p; ++i) perm[i] = i;
    do {
      int sign = 1;
      for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      Polynomial prod = Polynomial::constant(n_, Scalar(sign));
      for (int a = 0; a < p && !prod.is_zero(); ++a) prod = prod * partials[a][perm[a]];
      det = det + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
  }

  int n_, degree_;
  std::map<std::pair<std::vector<int>, Mask>, Scalar> terms_;
};

// Graded bracket, computed structurally on decomposable terms. With
// p = deg(W) - 1 and q = deg(W') - 1:
//   [P e_J, P' e_J'] = (-1)^(pq) sum_k P (d_k P') e_J' ^ iota_k e_J
//                    -          sum_k P' (d_k P) e_J  ^ iota_k e_J'
// where the wedge and contraction act on direction masks. Inputs of degrees
// p+1 and q+1 yield degree p+q+1; a degree-0 operand behaves as a plain
// polynomial.
inline PolyMultivector schouten_bracket(const PolyMultivector& w1,
                                        const PolyMultivector& w2) {
  if (w1.n() != w2.n()) throw std::invalid_argument("mixed variable counts");
  const int n = w1.n();
  const int p = w1.degree() - 1, q = w2.degree() - 1;
  if (p + q + 1 < 0)
    throw std::invalid_argument("bracket of two degree-0 multivectors");
  PolyMultivector out(n, p + q + 1);
  int pq_sign = ((static_cast<long long>(p) * q) % 2 + 2) % 2 ? -1 : 1;

  auto accumulate = [&out, n](const PolyMultivector& a, const PolyMultivector& b,
                              int base_sign) {
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) {
        const auto& [ea, ja] = ka;
        const auto& [eb, jb] = kb;
        for (Mask rest = ja; rest;) {
          int bit = std::countr_zero(rest);
          rest &= rest - 1;
          int k = bit + 1;
          if (eb[k - 1] == 0) continue;
          Mask ja_cut = ja ^ (Mask{1} << bit);
          if (ja_cut & jb) continue;
          int sign = base_sign;
          if (std::popcount(ja & ((Mask{1} << bit) - 1)) % 2) sign = -sign;  // iota_k
          if (inversions(jb, ja_cut) % 2) sign = -sign;                      // wedge
          std::vector<int> e(n);
          for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
          --e[k - 1];
          out.add(e, jb | ja_cut, Scalar(sign * eb[k - 1]) * ca * cb);
        }
      }
  };

  accumulate(w1, w2, pq_sign);
  accumulate(w2, w1, -1);
  return out;
}

// Multivector attached to a homogeneous derivation: with D = sum_r D_r iota_r,
//   V(D) = -sum_r x_r (x) D_r,
// reading the image forms as direction masks. Degree deg(D) + 1.
inline PolyMultivector v_map(const GrassmannDerivation& d) {
  PolyMultivector out(d.n(), d.degree() + 1);
  for (int r = 1; r <= d.n(); ++r)
    for (const auto& [m, c] : d.image(r).terms()) {
      std::vector<int> e(d.n(), 0);
      e[r - 1] = 1;
      out.add(e, m, -c);
    }
  return out;
}

// Linear bivector of a bracket table (the dual-space Poisson structure).
inline PolyMultivector kks_multivector(const SkewMap& bracket) {
  return v_map(chevalley_differential(bracket));
}

// Generalized Poisson bracket test for even-degree multivectors.
inline bool is_gpb(const PolyMultivector& w) {
  if (w.degree() < 2 || w.degree() % 2 != 0)
    throw std::invalid_argument("generalized Poisson structures have even degree >= 2");
  return schouten_bracket(w, w).is_zero();
}

}  // namespace gla
