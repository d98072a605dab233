#include "perturb_rank/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace perturb_rank {
namespace {

constexpr double kOffDiagonalThreshold = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<double>& a, std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) sum += a[i * k + j] * a[i * k + j];
  return std::sqrt(sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t k) {
  if (a.size() != k * k) throw std::invalid_argument("jacobi_eigen: size mismatch");
  std::vector<double> v(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) v[i * k + i] = 1.0;

  double total = 0.0;
  for (double x : a) total += x * x;
  total = std::sqrt(total);

  SymmetricEigen out;
  if (total == 0.0) {
    out.converged = true;
  }
  for (; !out.converged && out.sweeps < kMaxSweeps; ++out.sweeps) {
    if (off_diagonal_norm(a, k) <= kOffDiagonalThreshold * total) {
      out.converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = a[p * k + q];
        if (apq == 0.0) continue;
        const double app = a[p * k + p];
        const double aqq = a[q * k + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < k; ++r) {
          const double arp = a[r * k + p];
          const double arq = a[r * k + q];
          a[r * k + p] = c * arp - s * arq;
          a[r * k + q] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const double apr = a[p * k + r];
          const double aqr = a[q * k + r];
          a[p * k + r] = c * apr - s * aqr;
          a[q * k + r] = s * apr + c * aqr;
        }
        for (std::size_t r = 0; r < k; ++r) {
          const double vrp = v[r * k + p];
          const double vrq = v[r * k + q];
          v[r * k + p] = c * vrp - s * vrq;
          v[r * k + q] = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!out.converged && off_diagonal_norm(a, k) <= kOffDiagonalThreshold * total) out.converged = true;

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * k + x] < a[y * k + y]; });
  out.values.resize(k);
  out.vectors.assign(k * k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    out.values[j] = a[order[j] * k + order[j]];
    for (std::size_t r = 0; r < k; ++r) out.vectors[r * k + j] = v[r * k + order[j]];
  }
  return out;
}

}  // namespace perturb_rank
