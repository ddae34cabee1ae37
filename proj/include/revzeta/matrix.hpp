#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "revzeta/errors.hpp"
#include "revzeta/numeric.hpp"

namespace revzeta::exact {

/// Dense matrix of arbitrary-precision integers, row-major.
/// 0x0 matrices are legal values (empty systems use them).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);

  static IntMatrix identity(int n);
  /// Convenience for literals in tests and fixtures.
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool zero_one() const;
  IntMatrix transpose() const;
  Int trace() const;
  /// A^m, m >= 0. A^0 = I.
  IntMatrix pow(unsigned long m) const;

  bool operator==(const IntMatrix& o) const = default;

  std::string shape_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix scalar_mul(const Int& c, const IntMatrix& a);

/// tr(A^m J^e). m = e = 0 gives the dimension.
Int mat_pow_trace(const IntMatrix& A, const IntMatrix& J, unsigned long m,
                  unsigned long e);

/// S[M]: the sum of all entries.
Int entry_sum(const IntMatrix& M);

/// M with off-diagonal entries zeroed.
IntMatrix diag_part(const IntMatrix& M);

/// (M^triangle, S[M]) in one call.
std::pair<IntMatrix, Int> diag_and_entry_sum(const IntMatrix& M);

/// Is J a permutation matrix? If so, fills perm with J(a, perm[a]) = 1.
bool permutation_of(const IntMatrix& J, std::vector<int>& perm);

/// Permutation matrix of perm (perm[a] = image of a).
IntMatrix permutation_matrix(const std::vector<int>& perm);

/// Exact determinant by fraction-free Bareiss elimination.
Int determinant(IntMatrix M);

}  // namespace revzeta::exact
