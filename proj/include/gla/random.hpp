#pragma once

// Seeded random inputs for property checks. Rational coefficients come from
// a small fixed pool so exact arithmetic keeps small denominators, and every
// draw is deterministic given the seed.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gla/exterior.hpp"
#include "gla/multimap.hpp"
#include "gla/quadratic.hpp"
#include "gla/schouten.hpp"
#include "gla/scalar.hpp"

namespace gla {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  Rational coefficient() {
    static const Rational pool[] = {Rational(-2), Rational(-1), rat(-1, 2),
                                    Rational(0),  rat(1, 2),    Rational(1),
                                    Rational(2)};
    return pool[uniform(0, 6)];
  }

  Rational nonzero_coefficient() {
    Rational c = coefficient();
    while (c == 0) c = coefficient();
    return c;
  }

  SparseVec vector(int n) {
    SparseVec v;
    for (int i = 1; i <= n; ++i) sv_add(v, i, Scalar(coefficient()));
    return v;
  }

  ExteriorElement form(int n, int degree) {
    ExteriorElement a(n);
    for (Mask m = 0; m < (Mask{1} << n); ++m)
      if (std::popcount(m) == degree) a.add(m, Scalar(coefficient()));
    return a;
  }

  ExteriorElement nonzero_form(int n, int degree) {
    for (int tries = 0; tries < 64; ++tries) {
      ExteriorElement a = form(n, degree);
      if (!a.is_zero()) return a;
    }
    throw std::logic_error("failed to draw a nonzero form");
  }

  SkewMap skew_map(int n, int arity) {
    SkewMap f(n, arity);
    std::vector<int> idx(arity);
    auto rec = [&](auto&& self, int pos, int start) -> void {
      if (pos == arity) {
        for (int out = 1; out <= n; ++out) f.add(idx, out, Scalar(coefficient()));
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

  MultiMap multi_map(int n, int arity, int entries) {
    MultiMap f(n, arity);
    for (int e = 0; e < entries; ++e) {
      std::vector<int> key(arity);
      for (int& k : key) k = uniform(1, n);
      f.add(key, uniform(1, n), Scalar(coefficient()));
    }
    return f;
  }

  GramMatrix gram(int n) {
    for (int tries = 0; tries < 1000; ++tries) {
      QMatrix m(n, n);
      for (int i = 0; i < n; ++i) {
        m.at(i, i) = coefficient();
        for (int j = i + 1; j < n; ++j) {
          Rational c = coefficient();
          m.at(i, j) = c;
          m.at(j, i) = c;
        }
      }
      if (m.rank() == n) return GramMatrix(std::move(m));
    }
    throw std::logic_error("failed to draw an invertible Gram matrix");
  }

  // Random cyclic cochain: preimage of a random form under the pairing map.
  SkewMap cyclic_cochain(int n, int arity, const GramMatrix& g) {
    return theta_inverse(nonzero_form(n, arity + 1), g);
  }

  Polynomial polynomial(int n, int max_total_degree, int terms) {
    Polynomial p(n);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(n, 0);
      int total = uniform(0, max_total_degree);
      for (int d = 0; d < total; ++d) ++e[uniform(0, n - 1)];
      p.add(e, Scalar(coefficient()));
    }
    return p;
  }

  PolyMultivector multivector(int n, int degree, int max_total_degree, int terms) {
    PolyMultivector w(n, degree);
    std::vector<Mask> masks;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
      if (std::popcount(m) == degree) masks.push_back(m);
    if (masks.empty()) return w;
    for (int t = 0; t < terms; ++t) {
      std::vector<int> e(n, 0);
      int total = uniform(0, max_total_degree);
      for (int d = 0; d < total; ++d) ++e[uniform(0, n - 1)];
      w.add(e, masks[static_cast<size_t>(uniform(0, static_cast<int>(masks.size()) - 1))],
            Scalar(coefficient()));
    }
    return w;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gla
