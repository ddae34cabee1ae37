#include "revzeta/matrix.hpp"

#include <algorithm>
#include <string>

namespace revzeta::exact {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  entries_.assign(static_cast<std::size_t>(rows) * cols, Int(0));
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw DimensionError("ragged row list in matrix literal");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::zero_one() const {
  for (const Int& e : entries_)
    if (e != 0 && e != 1) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Int IntMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of non-square " + shape_string());
  Int s = 0;
  for (int i = 0; i < rows_; ++i) s += at(i, i);
  return s;
}

IntMatrix IntMatrix::pow(unsigned long m) const {
  if (!is_square()) throw DimensionError("power of non-square " + shape_string());
  IntMatrix result = identity(rows_);
  IntMatrix base = *this;
  while (m > 0) {
    if (m & 1) result = result * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return result;
}

std::string IntMatrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matrix product shape mismatch: " + a.shape_string() +
                         " * " + b.shape_string());
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix sum shape mismatch: " + a.shape_string() + " + " +
                         b.shape_string());
  IntMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix difference shape mismatch: " + a.shape_string() +
                         " - " + b.shape_string());
  IntMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

IntMatrix scalar_mul(const Int& c, const IntMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = c * a.at(i, j);
  return r;
}

Int mat_pow_trace(const IntMatrix& A, const IntMatrix& J, unsigned long m,
                  unsigned long e) {
  if (!A.is_square() || !J.is_square() || A.rows() != J.rows())
    throw DimensionError("mat_pow_trace needs equal square shapes, got " +
                         A.shape_string() + " and " + J.shape_string());
  return (A.pow(m) * J.pow(e)).trace();
}

Int entry_sum(const IntMatrix& M) {
  Int s = 0;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) s += M.at(i, j);
  return s;
}

IntMatrix diag_part(const IntMatrix& M) {
  if (!M.is_square())
    throw DimensionError("diagonal part of non-square " + M.shape_string());
  IntMatrix d(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i) d.at(i, i) = M.at(i, i);
  return d;
}

std::pair<IntMatrix, Int> diag_and_entry_sum(const IntMatrix& M) {
  return {diag_part(M), entry_sum(M)};
}

bool permutation_of(const IntMatrix& J, std::vector<int>& perm) {
  if (!J.is_square()) return false;
  int n = J.rows();
  perm.assign(n, -1);
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    int ones = 0;
    for (int j = 0; j < n; ++j) {
      const Int& e = J.at(i, j);
      if (e == 0) continue;
      if (e != 1) return false;
      ++ones;
      perm[i] = j;
    }
    if (ones != 1) return false;
    if (hit[perm[i]]) return false;
    hit[perm[i]] = true;
  }
  return true;
}

IntMatrix permutation_matrix(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  IntMatrix J(n, n);
  for (int i = 0; i < n; ++i) J.at(i, perm[i]) = 1;
  return J;
}

Int determinant(IntMatrix M) {
  if (!M.is_square())
    throw DimensionError("determinant of non-square " + M.shape_string());
  int n = M.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M.at(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (M.at(i, k) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int v = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
        // Bareiss: division by the previous pivot is exact
        M.at(i, j) = v / prev;
      }
    prev = M.at(k, k);
  }
  return sign * M.at(n - 1, n - 1);
}

}  // namespace revzeta::exact
