#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

#include "descent/rational.hpp"

// Exact dense linear algebra over the rationals.
//
// Everything here is plain Gaussian elimination without pivoting heuristics:
// over an exact field the only requirement on a pivot is that it is nonzero,
// and taking the first nonzero candidate keeps every routine deterministic.
// Reduced row echelon form is unique, which is what makes the kernel bases
// produced below canonical (each kernel vector has a 1 in "its" free
// coordinate and zeros in the other free coordinates).

namespace descent {

using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

struct RrefResult {
  QMatrix mat;                 // reduced row echelon form
  std::vector<Index> pivots;   // pivot column of each nonzero row, increasing
  Index rank = 0;
};

// Reduced row echelon form: leading entry of every nonzero row is 1, is the
// only nonzero entry in its column, and pivot columns increase top to bottom.
inline RrefResult rref(QMatrix m) {
  const Index rows = m.rows(), cols = m.cols();
  RrefResult out;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i) {
      if (!m(i, c).is_zero()) { piv = i; break; }
    }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    const Rational inv = Rational(1) / m(r, c);
    if (!inv.is_one()) {
      for (Index j = c; j < cols; ++j) m(r, j) *= inv;
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.mat = std::move(m);
  return out;
}

// Canonical basis of the right kernel {v : m v = 0}, one vector per free
// column f: v[f] = 1, v[pivot_i] = -R(i, f), zero elsewhere.  Ordered by
// increasing free column.
inline std::vector<QVector> kernel_basis(const QMatrix& m) {
  const RrefResult R = rref(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Index p : R.pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<QVector> basis;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    QVector v = QVector::Zero(cols);
    v(f) = Rational(1);
    for (Index i = 0; i < R.rank; ++i) v(R.pivots[static_cast<size_t>(i)]) = -R.mat(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Sign of the determinant of a square matrix: +1, -1, or 0.
inline int det_sign(QMatrix m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("det_sign: matrix must be square");
  const Index n = m.rows();
  int sign = 1;
  for (Index c = 0; c < n; ++c) {
    Index piv = -1;
    for (Index i = c; i < n; ++i) {
      if (!m(i, c).is_zero()) { piv = i; break; }
    }
    if (piv < 0) return 0;
    if (piv != c) { m.row(piv).swap(m.row(c)); sign = -sign; }
    if (m(c, c).sign() < 0) sign = -sign;
    for (Index i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const Rational f = m(i, c) / m(c, c);
      for (Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return sign;
}

inline bool exactly_equal(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

inline bool exactly_equal(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline bool is_zero_vector(const QVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

inline QMatrix matrix_from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return QMatrix(0, 0);
  QMatrix m(static_cast<Index>(rows.size()), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("matrix_from_rows: ragged rows");
    m.row(static_cast<Index>(i)) = rows[i].transpose();
  }
  return m;
}

// Incrementally maintained row space in reduced echelon form.  insert()
// returns whether the rank grew; contains() tests membership without
// modifying the span.  Rows are fully reduced against each other, so near
// saturation the stored rows are short.
class RowSpan {
 public:
  explicit RowSpan(Index cols) : cols_(cols) {}

  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }

  // Reduces v against the span in place, eliminating at every pivot column;
  // returns the pivot position of the remainder, or -1 if v reduced to zero.
  Index reduce(QVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("RowSpan: size mismatch");
    Index first = -1;
    size_t k = 0;
    for (Index c = 0; c < cols_; ++c) {
      while (k < rows_.size() && rows_[k].first < c) ++k;
      if (v(c).is_zero()) continue;
      if (k < rows_.size() && rows_[k].first == c) {
        const Rational f = v(c);
        const QVector& row = rows_[k].second;
        for (Index j = c; j < cols_; ++j)
          if (!row(j).is_zero()) v(j) -= f * row(j);
      } else if (first < 0) {
        first = c;  // leading term of the remainder; keep clearing the tail
      }
    }
    return first;
  }

  bool contains(QVector v) const { return reduce(v) < 0; }

  bool insert(QVector v) {
    const Index piv = reduce(v);
    if (piv < 0) return false;
    const Rational inv = Rational(1) / v(piv);
    if (!inv.is_one())
      for (Index j = piv; j < cols_; ++j) v(j) *= inv;
    // Back-eliminate the new pivot from existing rows to stay reduced.
    for (auto& [p, row] : rows_) {
      if (row(piv).is_zero()) continue;
      const Rational f = row(piv);
      for (Index j = piv; j < cols_; ++j)
        if (!v(j).is_zero()) row(j) -= f * v(j);
    }
    auto it = rows_.begin();
    while (it != rows_.end() && it->first < piv) ++it;
    rows_.insert(it, {piv, std::move(v)});
    return true;
  }

  const std::vector<std::pair<Index, QVector>>& rows() const { return rows_; }

 private:
  Index cols_;
  std::vector<std::pair<Index, QVector>> rows_;  // sorted by pivot column
};

inline Index span_rank(const std::vector<QVector>& vectors) {
  if (vectors.empty()) return 0;
  RowSpan span(vectors[0].size());
  for (const auto& v : vectors) span.insert(v);
  return span.rank();
}

inline bool span_contains(const std::vector<QVector>& vectors, const QVector& v) {
  if (vectors.empty()) return is_zero_vector(v);
  RowSpan span(vectors[0].size());
  for (const auto& w : vectors) span.insert(w);
  return span.contains(v);
}

// Coordinates of v in the given basis (columns), or nullopt if v is outside
// the span.  The basis need not be independent-checked by the caller; an
// exact solve decides.
inline std::optional<QVector> coordinates_in(const std::vector<QVector>& basis,
                                             const QVector& v) {
  const Index n = v.size();
  const Index k = static_cast<Index>(basis.size());
  QMatrix aug(n, k + 1);
  for (Index j = 0; j < k; ++j) {
    if (basis[static_cast<size_t>(j)].size() != n)
      throw std::invalid_argument("coordinates_in: size mismatch");
    aug.col(j) = basis[static_cast<size_t>(j)];
  }
  aug.col(k) = v;
  const RrefResult R = rref(std::move(aug));
  QVector coords = QVector::Zero(k);
  for (Index i = 0; i < R.rank; ++i) {
    const Index p = R.pivots[static_cast<size_t>(i)];
    if (p == k) return std::nullopt;  // v independent of the basis
    coords(p) = R.mat(i, k);
  }
  return coords;
}

}  // namespace descent
