#pragma once

#include <cstddef>
#include <vector>

#include "perturb_rank/exact_linalg.hpp"
#include "perturb_rank/model.hpp"

namespace perturb_rank {

/// Exact data of the leading-order asymptotics: velocities v, Psi_i = D_i - v_i I,
/// the constrained pseudo-inverse G of A and the symmetric diffusion matrix M.
struct TransferStructure {
  SpectralData spectral;
  RationalVector v;
  std::vector<RationalMatrix> Psi;
  RationalMatrix G;
  RationalMatrix M;
};

/// Relative thresholds applied to the numeric spectrum of M.
constexpr double kDissipativityTolerance = 1e-9;
constexpr double kNumericRankTolerance = 1e-8;

struct StructureReport {
  std::size_t rank_exact = 0;
  std::vector<double> eigenvalues;  // ascending, length K
  std::size_t predicted_rank = 0;   // min(n - 1, K)
  bool rank_matches_prediction = false;
  bool degenerate = false;  // some Psi_i h1 = 0, or all D_i equal
  std::vector<RationalVector> kernel_directions;
  double max_abs_entry = 0.0;
  std::size_t numeric_rank = 0;  // eigenvalues with |λ| > 1e-8 max|M|
  bool dissipative = true;       // every eigenvalue <= 1e-9 max|M|
  bool jacobi_converged = true;
};

/// Query for the leading-order profile: U ≈ φ0(ζ, t) h1 with ζ_i = (x_i - v_i t) / ε.
struct ProfileQuery {
  double epsilon = 1.0;
  double t = 1.0;
  std::vector<double> x;
  double sigma0 = 1.0;
  double amplitude = 1.0;
};

RationalVector velocities(const SystemSpec& s, const SpectralData& sd);

/// Canonical constrained pseudo-inverse: A G = I - h1 h1*^T and h1*^T G = 0.
RationalMatrix group_inverse(const RationalMatrix& A, const SpectralData& sd);

TransferStructure build_M(const SystemSpec& s, const SpectralData& sd);

/// M computed from an arbitrary particular-solution operator G (any G + h1 c^T).
RationalMatrix transfer_matrix_with(const TransferStructure& ts, const RationalMatrix& G);

StructureReport analyze_structure(const TransferStructure& ts, const SystemSpec& s);

/// Gaussian solution of φ_t + Σ M_ij φ_ζiζj = 0 with initial data
/// amplitude·exp(-|ζ|²/(2σ0²)); evaluated at time q.t >= 0.
/// Throws NotDissipative if M has an eigenvalue above tolerance.
double phi0_eval(const RationalMatrix& M, const ProfileQuery& q, const std::vector<double>& zeta);

/// peak(t)·(2π)^{K/2}·sqrt(det Σ_t), the integral of φ0 over ζ-space.
double phi0_total_mass(const RationalMatrix& M, const ProfileQuery& q);

/// Leading term φ0(ζ, t)·h1 at the physical point q.x. Requires q.t > 0.
std::vector<double> leading_term_eval(const SystemSpec& s, const SpectralData& sd, const TransferStructure& ts,
                                      const ProfileQuery& q);

/// |φ_t + Σ M_ij φ_ζiζj| at (ζ, q.t) by second-order central differences with step h.
double pde_residual(const RationalMatrix& M, const ProfileQuery& q, const std::vector<double>& zeta, double h);

}  // namespace perturb_rank
