#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace xfer {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed sparse row matrix. Column indices are sorted and unique within
/// each row, offsets are monotone, values finite. Immutable after
/// construction; spmv parallelizes over rows.
class SparseMatrix {
public:
  SparseMatrix() = default;

  /// Duplicate (i,j) entries are summed. Out-of-range indices throw.
  static SparseMatrix from_triplets(int rows, int cols,
                                    std::span<const Triplet> triplets);

  /// Direct construction from per-row (col, value) lists; each row must
  /// already be sorted with unique columns (the assembly path).
  static SparseMatrix from_sorted_rows(
      int rows, int cols, const std::vector<std::vector<std::pair<int, double>>>& row_data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::int64_t> row_offsets() const { return row_offsets_; }
  std::span<const std::int32_t> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  /// Entry lookup (binary search within the row); zero if not stored.
  double coeff(int i, int j) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> row_offsets_{0};
  std::vector<std::int32_t> col_indices_;
  std::vector<double> values_;
};

SparseMatrix csr_from_triplets(int rows, int cols, std::span<const Triplet> triplets);

/// y = A x. Dimension mismatch throws.
std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x);
void spmv_into(const SparseMatrix& A, std::span<const double> x, std::span<double> y);

} // namespace xfer
