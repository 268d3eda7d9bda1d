#ifndef GRADUA_LINALG_HPP
#define GRADUA_LINALG_HPP

#include <optional>
#include <vector>

#include "gradua/rational.hpp"

namespace gradua {

// Dense rational matrix. Everything is exact; there are no thresholds
// anywhere in the pipeline.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Rational(0)) {}
  static QMatrix identity(int n);
  static QMatrix from_rows(const std::vector<QVector>& rows);
  static QMatrix from_columns(const std::vector<QVector>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  QMatrix transpose() const;
  QMatrix mul(const QMatrix& o) const;
  QVector apply(const QVector& v) const;  // matrix * column vector
  QVector row(int i) const;
  QVector column(int j) const;
  bool operator==(const QMatrix&) const = default;
  bool is_zero() const;

  // Rank by fraction-free (Bareiss) elimination on the integer matrix
  // obtained by clearing row denominators.
  int rank() const;

  // Right kernel basis from the reduced row echelon form; free variables in
  // ascending column order, so the basis is deterministic.
  std::vector<QVector> kernel() const;

  std::optional<QMatrix> inverse() const;

  // Solves A x = b exactly; nullopt when inconsistent. Free variables are 0.
  std::optional<QVector> solve(const QVector& b) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Incremental row span in reduced echelon form. add() returns true when the
// vector enlarged the span. Pivot selection is by ascending column, so
// complements chosen against a RowSpan are deterministic.
class RowSpan {
 public:
  explicit RowSpan(int cols) : cols_(cols) {}
  bool add(QVector v);
  bool contains(QVector v) const;
  int dim() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const std::vector<QVector>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  // Indices of standard basis vectors completing the span, ascending.
  std::vector<int> complement() const;

 private:
  void reduce(QVector& v) const;
  int cols_;
  std::vector<QVector> rows_;   // reduced, pivot entries 1
  std::vector<int> pivots_;     // pivot column per row, strictly increasing? no: insertion order keeps sorted
};

// Dense rank-3 tensor of rationals, T[a][b][c] with c the output index.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int na, int nb, int nc)
      : na_(na), nb_(nb), nc_(nc), data_(static_cast<size_t>(na) * nb * nc, Rational(0)) {}
  int na() const { return na_; }
  int nb() const { return nb_; }
  int nc() const { return nc_; }
  Rational& at(int a, int b, int c) {
    return data_[(static_cast<size_t>(a) * nb_ + b) * nc_ + c];
  }
  const Rational& at(int a, int b, int c) const {
    return data_[(static_cast<size_t>(a) * nb_ + b) * nc_ + c];
  }
  bool operator==(const Tensor3&) const = default;

 private:
  int na_ = 0, nb_ = 0, nc_ = 0;
  std::vector<Rational> data_;
};

}  // namespace gradua

#endif
