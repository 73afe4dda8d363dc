#pragma once

// Dense exact linear algebra over the rationals: rank (fraction-free Bareiss
// elimination on a denominator-cleared integer copy), reduced row echelon
// form, kernel bases, solving, inversion. Sizes here stay in the hundreds, so
// dense is fine; exactness is the point.

#include <optional>
#include <stdexcept>
#include <vector>

#include "gla/scalar.hpp"

namespace gla {

class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rational(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const {
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  QMatrix transposed() const {
    QMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  QMatrix multiply(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    QMatrix p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
      for (int k = 0; k < cols_; ++k) {
        if (at(r, k) == 0) continue;
        for (int c = 0; c < o.cols_; ++c) {
          if (o.at(k, c) == 0) continue;
          p.at(r, c) += at(r, k) * o.at(k, c);
        }
      }
    return p;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (at(r, c) != 0 && v[c] != 0) out[r] += at(r, c) * v[c];
    return out;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  // Fraction-free rank: clear denominators per row, then Bareiss.
  int rank() const {
    std::vector<std::vector<mpz_class>> m(rows_, std::vector<mpz_class>(cols_));
    for (int r = 0; r < rows_; ++r) {
      mpz_class lcm = 1;
      for (int c = 0; c < cols_; ++c)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), at(r, c).get_den().get_mpz_t());
      for (int c = 0; c < cols_; ++c)
        m[r][c] = at(r, c).get_num() * (lcm / at(r, c).get_den());
    }

    int rank = 0;
    mpz_class prev = 1;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
      int pivot = -1;
      for (int r = rank; r < rows_; ++r)
        if (m[r][col] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      std::swap(m[rank], m[pivot]);
      for (int r = rank + 1; r < rows_; ++r) {
        for (int c = col + 1; c < cols_; ++c) {
          mpz_class num = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
          mpz_divexact(m[r][c].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        }
        m[r][col] = 0;
      }
      prev = m[rank][col];
      ++rank;
    }
    return rank;
  }

  // In-place Gauss-Jordan; returns pivot columns.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int pr = -1;
      for (int r = row; r < rows_; ++r)
        if (at(r, col) != 0) {
          pr = r;
          break;
        }
      if (pr < 0) continue;
      if (pr != row)
        for (int c = 0; c < cols_; ++c) std::swap(at(pr, c), at(row, c));
      Rational inv = 1 / at(row, col);
      for (int c = col; c < cols_; ++c) at(row, c) *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == row || at(r, col) == 0) continue;
        Rational f = at(r, col);
        for (int c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  // Basis of the right null space (canonical: one vector per free column).
  std::vector<std::vector<Rational>> kernel_basis() const {
    QMatrix m = *this;
    std::vector<int> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rational> v(cols_, Rational(0));
      v[free] = 1;
      for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // One solution of A x = b, if any.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
    if (static_cast<int>(b.size()) != rows_)
      throw std::invalid_argument("rhs length mismatch");
    QMatrix aug(rows_, cols_ + 1);
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
      aug.at(r, cols_) = b[r];
    }
    std::vector<int> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Rational> x(cols_, Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r)
      x[pivots[r]] = aug.at(static_cast<int>(r), cols_);
    return x;
  }

  std::optional<QMatrix> inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    if (rows_ == 0) return QMatrix(0, 0);
    QMatrix aug(rows_, 2 * cols_);
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
      aug.at(r, cols_ + r) = 1;
    }
    std::vector<int> pivots = aug.rref();
    if (static_cast<int>(pivots.size()) != rows_ || pivots[rows_ - 1] != rows_ - 1)
      return std::nullopt;
    QMatrix inv(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) inv.at(r, c) = aug.at(r, cols_ + c);
    return inv;
  }

 private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

// Stacks matrices vertically (shared column space).
inline QMatrix vstack(const std::vector<QMatrix>& parts) {
  if (parts.empty()) return QMatrix();
  int cols = parts[0].cols();
  int rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += p.rows();
  }
  QMatrix out(rows, cols);
  int r0 = 0;
  for (const auto& p : parts) {
    for (int r = 0; r < p.rows(); ++r)
      for (int c = 0; c < cols; ++c) out.at(r0 + r, c) = p.at(r, c);
    r0 += p.rows();
  }
  return out;
}

// Rank of the span of a list of coordinate vectors.
inline int span_rank(const std::vector<std::vector<Rational>>& vecs, int dim) {
  QMatrix m(static_cast<int>(vecs.size()), dim);
  for (size_t r = 0; r < vecs.size(); ++r) {
    if (static_cast<int>(vecs[r].size()) != dim)
      throw std::invalid_argument("span_rank length mismatch");
    for (int c = 0; c < dim; ++c) m.at(static_cast<int>(r), c) = vecs[r][c];
  }
  return m.rank();
}

}  // namespace gla
