#include "xfer/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "xfer/parallel.hpp"

namespace xfer {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::span<const Triplet> triplets) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("SparseMatrix: negative dimension");
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("SparseMatrix: triplet index (" +
                                  std::to_string(t.row) + "," + std::to_string(t.col) +
                                  ") out of range for " + std::to_string(rows) + "x" +
                                  std::to_string(cols));
    if (!std::isfinite(t.value))
      throw std::invalid_argument("SparseMatrix: non-finite triplet value");
  }

  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_indices_.reserve(sorted.size());
  m.values_.reserve(sorted.size());

  std::size_t k = 0;
  for (int r = 0; r < rows; ++r) {
    while (k < sorted.size() && sorted[k].row == r) {
      const int c = sorted[k].col;
      double v = 0.0;
      while (k < sorted.size() && sorted[k].row == r && sorted[k].col == c)
        v += sorted[k++].value;
      m.col_indices_.push_back(c);
      m.values_.push_back(v);
    }
    m.row_offsets_[static_cast<std::size_t>(r) + 1] =
        static_cast<std::int64_t>(m.values_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::from_sorted_rows(
    int rows, int cols,
    const std::vector<std::vector<std::pair<int, double>>>& row_data) {
  if (row_data.size() != static_cast<std::size_t>(rows))
    throw std::invalid_argument("SparseMatrix: row_data size mismatch");

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
  std::size_t nnz = 0;
  for (int r = 0; r < rows; ++r) {
    nnz += row_data[static_cast<std::size_t>(r)].size();
    m.row_offsets_[static_cast<std::size_t>(r) + 1] = static_cast<std::int64_t>(nnz);
  }
  m.col_indices_.resize(nnz);
  m.values_.resize(nnz);
  parallel_for(rows, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t r = lo; r < hi; ++r) {
      const auto& row = row_data[static_cast<std::size_t>(r)];
      std::size_t k = static_cast<std::size_t>(m.row_offsets_[static_cast<std::size_t>(r)]);
      int prev = -1;
      for (const auto& [c, v] : row) {
        if (c < 0 || c >= cols || c <= prev)
          throw std::invalid_argument("SparseMatrix: row entries not sorted/unique/in-range");
        prev = c;
        m.col_indices_[k] = c;
        m.values_[k] = v;
        ++k;
      }
    }
  });
  return m;
}

double SparseMatrix::coeff(int i, int j) const {
  const auto begin = col_indices_.begin() + row_offsets_[static_cast<std::size_t>(i)];
  const auto end = col_indices_.begin() + row_offsets_[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

SparseMatrix csr_from_triplets(int rows, int cols, std::span<const Triplet> triplets) {
  return SparseMatrix::from_triplets(rows, cols, triplets);
}

void spmv_into(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
  if (x.size() != static_cast<std::size_t>(A.cols()))
    throw std::invalid_argument("spmv: x has size " + std::to_string(x.size()) +
                                ", matrix has " + std::to_string(A.cols()) + " columns");
  if (y.size() != static_cast<std::size_t>(A.rows()))
    throw std::invalid_argument("spmv: bad output size");

  const auto offsets = A.row_offsets();
  const auto cols = A.col_indices();
  const auto vals = A.values();
  parallel_for(A.rows(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t r = lo; r < hi; ++r) {
      double acc = 0.0;
      for (std::int64_t k = offsets[static_cast<std::size_t>(r)];
           k < offsets[static_cast<std::size_t>(r) + 1]; ++k)
        acc += vals[static_cast<std::size_t>(k)] *
               x[static_cast<std::size_t>(cols[static_cast<std::size_t>(k)])];
      y[static_cast<std::size_t>(r)] = acc;
    }
  });
}

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x) {
  std::vector<double> y(static_cast<std::size_t>(A.rows()));
  spmv_into(A, x, y);
  return y;
}

} // namespace xfer
