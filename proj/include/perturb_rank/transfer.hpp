#pragma once

#include <cstddef>
#include <vector>

#include "perturb_rank/elimination.hpp"
#include "perturb_rank/matrix.hpp"

// Field-generic construction of the transfer structure, shared by the exact
// rational route and the parametric rational-function route.

namespace perturb_rank::transfer {

/// v_i = (D_i h1, h1*) for diagonal D_i.
template <class F>
std::vector<F> velocities(const std::vector<std::vector<F>>& diagonals, const std::vector<F>& h1,
                          const std::vector<F>& h1_star) {
  std::vector<F> v;
  v.reserve(diagonals.size());
  for (const auto& d : diagonals) {
    F acc(0);
    for (std::size_t j = 0; j < h1.size(); ++j) acc += d[j] * h1[j] * h1_star[j];
    v.push_back(acc);
  }
  return v;
}

/// Psi_i = D_i - v_i I.
template <class F>
std::vector<Matrix<F>> shifted_transport(const std::vector<std::vector<F>>& diagonals, const std::vector<F>& v) {
  std::vector<Matrix<F>> psi;
  psi.reserve(diagonals.size());
  for (std::size_t i = 0; i < diagonals.size(); ++i) {
    std::vector<F> shifted = diagonals[i];
    for (auto& x : shifted) x -= v[i];
    psi.push_back(Matrix<F>::diagonal(shifted));
  }
  return psi;
}

/// G with A G = I - h1 h1*^T and h1*^T G = 0.
template <class F>
Matrix<F> group_inverse(const Matrix<F>& A, const std::vector<F>& h1, const std::vector<F>& h1_star) {
  const Matrix<F> projector = Matrix<F>::identity(A.rows()) - outer(h1, h1_star);
  return solve_constrained_columns(A, projector, h1_star);
}

/// M_ij = ((Psi_i G Psi_j + Psi_j G Psi_i) h1, h1*) / 2.
template <class F>
Matrix<F> transfer_matrix(const std::vector<Matrix<F>>& psi, const Matrix<F>& G, const std::vector<F>& h1,
                          const std::vector<F>& h1_star) {
  const std::size_t K = psi.size();
  std::vector<std::vector<F>> g_psi_h1;  // G Psi_j h1
  g_psi_h1.reserve(K);
  for (const auto& p : psi) g_psi_h1.push_back(G * (p * h1));
  Matrix<F> M(K, K);
  const F half = F(1) / F(2);
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = i; j < K; ++j) {
      const F value = (inner(psi[i] * g_psi_h1[j], h1_star) + inner(psi[j] * g_psi_h1[i], h1_star)) * half;
      M(i, j) = value;
      M(j, i) = value;
    }
  return M;
}

}  // namespace perturb_rank::transfer
