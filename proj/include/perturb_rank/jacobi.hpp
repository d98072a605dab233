#pragma once

#include <cstddef>
#include <vector>

namespace perturb_rank {

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major k x k, column j pairs with values[j]
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic Jacobi rotations on a symmetric k x k row-major matrix. Stops when the
/// off-diagonal Frobenius norm drops below 1e-12 relative to the full norm, or
/// after 100 sweeps.
SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t k);

}  // namespace perturb_rank
