#ifndef ALPHAFORM_POLYMATRIX_HPP
#define ALPHAFORM_POLYMATRIX_HPP

/// Dense matrices of polynomials and exact determinants.
///
/// det() uses fraction-free Bareiss elimination (every division is exact by
/// construction), with direct Laplace expansion for dimension <= 4.

#include <cassert>
#include <stdexcept>
#include <vector>

#include "mpoly.hpp"

namespace af {

class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, RegistryPtr reg)
      : rows_(rows), cols_(cols), reg_(std::move(reg)),
        data_(static_cast<size_t>(rows) * cols, MPoly::zero(reg_)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const RegistryPtr& registry() const { return reg_; }

  MPoly& at(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  const MPoly& at(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  /// Copy with the given rows and columns deleted (0-based indices).
  PolyMatrix deleted(std::vector<int> rows, std::vector<int> cols) const {
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    PolyMatrix out(rows_ - static_cast<int>(rows.size()),
                   cols_ - static_cast<int>(cols.size()), reg_);
    int ro = 0;
    for (int r = 0; r < rows_; ++r) {
      if (std::binary_search(rows.begin(), rows.end(), r)) continue;
      int co = 0;
      for (int c = 0; c < cols_; ++c) {
        if (std::binary_search(cols.begin(), cols.end(), c)) continue;
        out.at(ro, co) = at(r, c);
        ++co;
      }
      ++ro;
    }
    return out;
  }

 private:
  int rows_, cols_;
  RegistryPtr reg_;
  std::vector<MPoly> data_;
};

/// Laplace expansion along the first row.  Exponential; oracle and small-case
/// path only.
inline MPoly det_laplace(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  int n = m.rows();
  if (n == 0) return MPoly::constant(m.registry(), 1);
  if (n == 1) return m.at(0, 0);
  MPoly acc = MPoly::zero(m.registry());
  for (int c = 0; c < n; ++c) {
    if (m.at(0, c).is_zero()) continue;
    MPoly sub = m.at(0, c) * det_laplace(m.deleted({0}, {c}));
    if (c % 2 == 0) acc += sub;
    else acc -= sub;
  }
  return acc;
}

inline MPoly det_bareiss(PolyMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  int n = m.rows();
  if (n == 0) return MPoly::constant(m.registry(), 1);
  MPoly prev = MPoly::constant(m.registry(), 1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k).is_zero()) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (!m.at(r, k).is_zero()) { p = r; break; }
      if (p < 0) return MPoly::zero(m.registry());
      for (int c = k; c < n; ++c) std::swap(m.at(k, c), m.at(p, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r)
      for (int c = k + 1; c < n; ++c)
        m.at(r, c) = exact_div(m.at(r, c) * m.at(k, k) - m.at(r, k) * m.at(k, c), prev);
    prev = m.at(k, k);
  }
  MPoly d = m.at(n - 1, n - 1);
  if (sign < 0) d = -d;
  return d;
}

inline MPoly det(const PolyMatrix& m) {
  if (m.rows() <= 4) return det_laplace(m);
  return det_bareiss(m);
}

}  // namespace af

#endif
