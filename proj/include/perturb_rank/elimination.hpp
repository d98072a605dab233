#pragma once

#include <cstddef>
#include <vector>

#include "perturb_rank/errors.hpp"
#include "perturb_rank/matrix.hpp"

namespace perturb_rank {

enum class KernelSide { right, left };

template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan reduction to reduced row echelon form over an exact field.
/// Pivots are the first nonzero entry in each column; no tolerance is involved.
template <class F>
Echelon<F> reduced_row_echelon(Matrix<F> m) {
  const F zero(0);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == zero) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const F inv = F(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == zero) continue;
      const F factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Kernel basis from the reduced echelon form; each vector is scaled so that
/// its first nonzero entry equals 1.
template <class F>
std::vector<std::vector<F>> kernel_basis(const Matrix<F>& m, KernelSide side) {
  const Matrix<F> target = side == KernelSide::right ? m : m.transpose();
  const auto ech = reduced_row_echelon(target);
  const std::size_t n = target.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(n, F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    for (const auto& e : v) {
      if (e == F(0)) continue;
      const F scale = F(1) / e;
      for (auto& x : v) x *= scale;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m X = Y column by column, each column x subject to (x, c) = 0.
/// m must have a one-dimensional kernel not annihilated by c.
template <class F>
Matrix<F> solve_constrained_columns(const Matrix<F>& m, const Matrix<F>& y, const std::vector<F>& c) {
  const std::size_t n = m.rows();
  if (!m.is_square() || y.rows() != n || c.size() != n)
    throw DimensionError("solve_constrained: shape mismatch");
  const std::size_t k = y.cols();
  const F zero(0);

  // Consistency of m x = y alone.
  {
    Matrix<F> aug(n, n + k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
      for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = y(i, j);
    }
    const auto ech = reduced_row_echelon(std::move(aug));
    const std::size_t rank_m = [&] {
      std::size_t count = 0;
      for (auto p : ech.pivot_cols) count += p < n ? 1 : 0;
      return count;
    }();
    for (std::size_t r = rank_m; r < n; ++r)
      for (std::size_t j = 0; j < k; ++j)
        if (!(ech.reduced(r, n + j) == zero))
          throw InconsistentSystem("right-hand side is not in the range of the matrix");
  }

  Matrix<F> aug(n + 1, n + k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = y(i, j);
  }
  for (std::size_t j = 0; j < n; ++j) aug(n, j) = c[j];
  const auto ech = reduced_row_echelon(std::move(aug));
  std::size_t rank_constrained = 0;
  for (auto p : ech.pivot_cols) rank_constrained += p < n ? 1 : 0;
  if (rank_constrained < n)
    throw DegenerateConstraint("constraint vector annihilates the kernel direction");
  for (std::size_t j = 0; j < k; ++j)
    if (!(ech.reduced(n, n + j) == zero))
      throw DegenerateConstraint("constraint is incompatible with the system");

  Matrix<F> x(n, k);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < k; ++j) x(ech.pivot_cols[r], j) = ech.reduced(r, n + j);
  return x;
}

}  // namespace perturb_rank
