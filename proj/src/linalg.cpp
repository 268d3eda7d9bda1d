#include "gradua/linalg.hpp"

#include <algorithm>

namespace gradua {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return QMatrix(0, 0);
  QMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != m.cols())
      throw Error("ragged rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols) {
  if (cols.empty()) return QMatrix(0, 0);
  QMatrix m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[static_cast<size_t>(j)].size()) != m.rows())
      throw Error("ragged columns");
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

QMatrix QMatrix::mul(const QMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix dimension mismatch in mul");
  QMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

QVector QMatrix::apply(const QVector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error("vector length mismatch in apply");
  QVector r(static_cast<size_t>(rows_), Rational(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
  return r;
}

QVector QMatrix::row(int i) const {
  QVector r(static_cast<size_t>(cols_));
  for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = at(i, j);
  return r;
}

QVector QMatrix::column(int j) const {
  QVector c(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) c[static_cast<size_t>(i)] = at(i, j);
  return c;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

int QMatrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  // clear denominators row by row
  std::vector<std::vector<Integer>> m(static_cast<size_t>(rows_),
                                      std::vector<Integer>(static_cast<size_t>(cols_)));
  for (int i = 0; i < rows_; ++i) {
    Integer l = 1;
    for (int j = 0; j < cols_; ++j) {
      Integer den = at(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    for (int j = 0; j < cols_; ++j) {
      Rational s = at(i, j) * Rational(l);
      m[static_cast<size_t>(i)][static_cast<size_t>(j)] = s.get_num();
    }
  }
  // Bareiss fraction-free elimination
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (m[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(r)]);
    for (int i = r + 1; i < rows_; ++i) {
      for (int j = c + 1; j < cols_; ++j) {
        Integer t = m[static_cast<size_t>(r)][static_cast<size_t>(c)] * m[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                    m[static_cast<size_t>(i)][static_cast<size_t>(c)] * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] = t;
      }
      m[static_cast<size_t>(i)][static_cast<size_t>(c)] = 0;
    }
    prev = m[static_cast<size_t>(r)][static_cast<size_t>(c)];
    ++r;
  }
  return r;
}

namespace {

// Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<int> rref_inplace(std::vector<QVector>& rows, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<size_t>(piv)], rows[static_cast<size_t>(r)]);
    Rational inv = 1 / rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    for (int j = c; j < cols; ++j) rows[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r) continue;
      Rational f = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j < cols; ++j)
        rows[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<QVector> QMatrix::kernel() const {
  std::vector<QVector> rows;
  rows.reserve(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) rows.push_back(row(i));
  std::vector<int> pivots = rref_inplace(rows, cols_);
  std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<QVector> basis;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    QVector v(static_cast<size_t>(cols_), Rational(0));
    v[static_cast<size_t>(f)] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -rows[r][static_cast<size_t>(f)];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (rows_ != cols_) throw Error("inverse of a non-square matrix");
  int n = rows_;
  std::vector<QVector> aug;
  aug.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    QVector r(static_cast<size_t>(2 * n), Rational(0));
    for (int j = 0; j < n; ++j) r[static_cast<size_t>(j)] = at(i, j);
    r[static_cast<size_t>(n + i)] = 1;
    aug.push_back(std::move(r));
  }
  std::vector<int> pivots = rref_inplace(aug, 2 * n);
  if (static_cast<int>(pivots.size()) < n || (n > 0 && pivots[static_cast<size_t>(n - 1)] >= n))
    return std::nullopt;
  QMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug[static_cast<size_t>(i)][static_cast<size_t>(n + j)];
  return inv;
}

std::optional<QVector> QMatrix::solve(const QVector& b) const {
  if (static_cast<int>(b.size()) != rows_) throw Error("rhs length mismatch in solve");
  std::vector<QVector> aug;
  aug.reserve(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    QVector r(static_cast<size_t>(cols_ + 1));
    for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = at(i, j);
    r[static_cast<size_t>(cols_)] = b[static_cast<size_t>(i)];
    aug.push_back(std::move(r));
  }
  std::vector<int> pivots = rref_inplace(aug, cols_ + 1);
  for (int c : pivots)
    if (c == cols_) return std::nullopt;  // pivot in the rhs column: inconsistent
  QVector x(static_cast<size_t>(cols_), Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r)
    x[static_cast<size_t>(pivots[r])] = aug[r][static_cast<size_t>(cols_)];
  return x;
}

bool RowSpan::add(QVector v) {
  if (static_cast<int>(v.size()) != cols_) throw Error("vector length mismatch in RowSpan");
  reduce(v);
  int pivot = -1;
  for (int j = 0; j < cols_; ++j)
    if (v[static_cast<size_t>(j)] != 0) {
      pivot = j;
      break;
    }
  if (pivot < 0) return false;
  Rational inv = 1 / v[static_cast<size_t>(pivot)];
  for (auto& x : v) x *= inv;
  // back-substitute into existing rows to keep the reduced form
  for (size_t r = 0; r < rows_.size(); ++r) {
    Rational f = rows_[r][static_cast<size_t>(pivot)];
    if (f == 0) continue;
    for (int j = 0; j < cols_; ++j) rows_[r][static_cast<size_t>(j)] -= f * v[static_cast<size_t>(j)];
  }
  // insert keeping pivots sorted
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<long>(pos), pivot);
  return true;
}

bool RowSpan::contains(QVector v) const {
  reduce(v);
  return is_zero_vector(v);
}

void RowSpan::reduce(QVector& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    Rational f = v[static_cast<size_t>(pivots_[r])];
    if (f == 0) continue;
    for (int j = 0; j < cols_; ++j) v[static_cast<size_t>(j)] -= f * rows_[r][static_cast<size_t>(j)];
  }
}

std::vector<int> RowSpan::complement() const {
  std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
  for (int p : pivots_) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<int> out;
  for (int j = 0; j < cols_; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) out.push_back(j);
  return out;
}

}  // namespace gradua
