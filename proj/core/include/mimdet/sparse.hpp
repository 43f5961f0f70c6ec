#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace mimdet {

struct SparseEntry {
  std::size_t col;
  double value;
};

/// Row-indexed sparse matrix (compressed rows). Entries within a row are
/// sorted by column and free of duplicates.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::span<const SparseEntry> row(std::size_t r) const;

  /// Appends the next row. Rows must be pushed in order; zero coefficients
  /// are dropped and duplicate columns are summed.
  void push_row(std::vector<SparseEntry> entries);

  /// Dense value lookup, O(row length).
  double at(std::size_t r, std::size_t c) const;

  /// y = A x. Throws ShapeMismatch on length mismatch.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  bool complete() const noexcept { return row_ptr_.size() == rows_ + 1; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<SparseEntry> entries_;
};

/// Kronecker product A ⊗ B.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

/// [A; B] for matrices with equal column counts.
SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom);

SparseMatrix identity(std::size_t n);

/// p × (p+2) matrix selecting the p interior entries of an extended axis.
SparseMatrix interior_selection(std::size_t p);

/// Coordinate-list text dump: "row col value" per line, 17 significant digits.
void write_coo(std::ostream& out, const SparseMatrix& matrix);

}  // namespace mimdet
