#include "mimdet/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "mimdet/error.hpp"

namespace mimdet {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  row_ptr_.reserve(rows + 1);
}

std::span<const SparseEntry> SparseMatrix::row(std::size_t r) const {
  if (r + 1 >= row_ptr_.size()) {
    throw InvalidArgument("row index out of range");
  }
  return {entries_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
}

void SparseMatrix::push_row(std::vector<SparseEntry> entries) {
  if (complete()) throw InvalidArgument("all rows already pushed");
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
  std::size_t start = entries_.size();
  for (const auto& e : entries) {
    if (e.col >= cols_) throw InvalidArgument("column index out of range");
    if (entries_.size() > start && entries_.back().col == e.col) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  entries_.erase(std::remove_if(entries_.begin() + static_cast<std::ptrdiff_t>(start),
                                entries_.end(),
                                [](const SparseEntry& e) { return e.value == 0.0; }),
                 entries_.end());
  row_ptr_.push_back(entries_.size());
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  for (const auto& e : row(r)) {
    if (e.col == c) return e.value;
  }
  return 0.0;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (!complete()) throw InvalidArgument("matrix is not fully assembled");
  if (x.size() != cols_ || y.size() != rows_) {
    throw ShapeMismatch("mat-vec: expected input length " + std::to_string(cols_) +
                        " and output length " + std::to_string(rows_) + ", got " +
                        std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  const SparseEntry* data = entries_.data();
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      acc += data[p].value * x[data[p].col];
    }
    y[r] = acc;
  }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra) {
    auto arow = a.row(ra);
    for (std::size_t rb = 0; rb < b.rows(); ++rb) {
      auto brow = b.row(rb);
      std::vector<SparseEntry> entries;
      entries.reserve(arow.size() * brow.size());
      for (const auto& ea : arow) {
        for (const auto& eb : brow) {
          entries.push_back({ea.col * b.cols() + eb.col, ea.value * eb.value});
        }
      }
      out.push_row(std::move(entries));
    }
  }
  return out;
}

SparseMatrix vstack(const SparseMatrix& top, const SparseMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw ShapeMismatch("vstack: column counts differ");
  }
  SparseMatrix out(top.rows() + bottom.rows(), top.cols());
  for (const SparseMatrix* m : {&top, &bottom}) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      auto row = m->row(r);
      out.push_row({row.begin(), row.end()});
    }
  }
  return out;
}

SparseMatrix identity(std::size_t n) {
  SparseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.push_row({{i, 1.0}});
  return out;
}

SparseMatrix interior_selection(std::size_t p) {
  SparseMatrix out(p, p + 2);
  for (std::size_t i = 0; i < p; ++i) out.push_row({{i + 1, 1.0}});
  return out;
}

void write_coo(std::ostream& out, const SparseMatrix& matrix) {
  char buf[64];
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (const auto& e : matrix.row(r)) {
      std::snprintf(buf, sizeof(buf), "%.17g", e.value);
      out << r << ' ' << e.col << ' ' << buf << '\n';
    }
  }
}

}  // namespace mimdet
