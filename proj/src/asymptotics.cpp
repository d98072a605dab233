#include "perturb_rank/asymptotics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "perturb_rank/errors.hpp"
#include "perturb_rank/jacobi.hpp"
#include "perturb_rank/transfer.hpp"

namespace perturb_rank {
namespace {

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(Eigen::Index(i), Eigen::Index(j)) = m(i, j).get_d();
  return out;
}

std::vector<double> row_major(const RationalMatrix& m) {
  std::vector<double> out;
  out.reserve(m.rows() * m.cols());
  for (const auto& e : m.entries()) out.push_back(e.get_d());
  return out;
}

void require_dissipative(const RationalMatrix& M) {
  const double scale = max_abs_entry(M);
  if (scale == 0.0) return;
  const auto eig = jacobi_eigen(row_major(M), M.rows());
  if (eig.values.back() > kDissipativityTolerance * scale)
    throw NotDissipative("M has a positive eigenvalue " + std::to_string(eig.values.back()));
}

// Σ_t = σ0² I - 2 t M
Eigen::LLT<Eigen::MatrixXd> covariance_factor(const Eigen::MatrixXd& M, double sigma0, double t) {
  const Eigen::Index k = M.rows();
  const Eigen::MatrixXd cov = sigma0 * sigma0 * Eigen::MatrixXd::Identity(k, k) - 2.0 * t * M;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw SingularCovariance("covariance σ0²I - 2tM is not positive definite");
  return llt;
}

double log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  double acc = 0.0;
  const Eigen::MatrixXd& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) acc += 2.0 * std::log(l(i, i));
  return acc;
}

double gaussian(const Eigen::MatrixXd& M, double sigma0, double amplitude, double t, const Eigen::VectorXd& zeta) {
  const auto llt = covariance_factor(M, sigma0, t);
  const double k = static_cast<double>(M.rows());
  const double log_ratio = 2.0 * k * std::log(sigma0) - log_det(llt);
  const double quad = zeta.dot(llt.solve(zeta));
  return amplitude * std::exp(0.5 * log_ratio - 0.5 * quad);
}

void check_profile(const RationalMatrix& M, const ProfileQuery& q, const std::vector<double>& zeta) {
  if (!(q.sigma0 > 0.0)) throw InvalidQuery("sigma0 must be positive");
  if (!(q.t >= 0.0)) throw InvalidQuery("t must be non-negative");
  if (!M.is_square() || zeta.size() != M.rows()) throw DimensionError("ζ must have K entries");
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

}  // namespace

RationalVector velocities(const SystemSpec& s, const SpectralData& sd) {
  return transfer::velocities(s.D, sd.h1, sd.h1_star);
}

RationalMatrix group_inverse(const RationalMatrix& A, const SpectralData& sd) {
  return transfer::group_inverse(A, sd.h1, sd.h1_star);
}

TransferStructure build_M(const SystemSpec& s, const SpectralData& sd) {
  TransferStructure ts;
  ts.spectral = sd;
  ts.v = velocities(s, sd);
  ts.Psi = transfer::shifted_transport(s.D, ts.v);
  ts.G = group_inverse(s.A, sd);
  ts.M = transfer::transfer_matrix(ts.Psi, ts.G, sd.h1, sd.h1_star);
  return ts;
}

RationalMatrix transfer_matrix_with(const TransferStructure& ts, const RationalMatrix& G) {
  return transfer::transfer_matrix(ts.Psi, G, ts.spectral.h1, ts.spectral.h1_star);
}

StructureReport analyze_structure(const TransferStructure& ts, const SystemSpec& s) {
  StructureReport r;
  const std::size_t K = ts.M.rows();
  r.rank_exact = rank_exact(ts.M);
  r.predicted_rank = std::min(s.n - 1, s.K);
  r.rank_matches_prediction = r.rank_exact == r.predicted_rank;
  r.kernel_directions = nullspace(ts.M, KernelSide::right);

  for (const auto& psi : ts.Psi)
    if (is_zero_vector(psi * ts.spectral.h1)) r.degenerate = true;
  if (std::all_of(s.D.begin(), s.D.end(), [&](const RationalVector& d) { return d == s.D.front(); }) && s.K > 1)
    r.degenerate = true;

  r.max_abs_entry = max_abs_entry(ts.M);
  const auto eig = jacobi_eigen(row_major(ts.M), K);
  r.eigenvalues = eig.values;
  r.jacobi_converged = eig.converged;
  for (double lambda : r.eigenvalues) {
    if (std::fabs(lambda) > kNumericRankTolerance * r.max_abs_entry) ++r.numeric_rank;
    if (lambda > kDissipativityTolerance * r.max_abs_entry) r.dissipative = false;
  }
  return r;
}

double phi0_eval(const RationalMatrix& M, const ProfileQuery& q, const std::vector<double>& zeta) {
  check_profile(M, q, zeta);
  require_dissipative(M);
  return gaussian(to_eigen(M), q.sigma0, q.amplitude, q.t, to_vector(zeta));
}

double phi0_total_mass(const RationalMatrix& M, const ProfileQuery& q) {
  const std::vector<double> origin(M.rows(), 0.0);
  const double peak = phi0_eval(M, q, origin);
  const auto llt = covariance_factor(to_eigen(M), q.sigma0, q.t);
  const double k = static_cast<double>(M.rows());
  return peak * std::pow(2.0 * std::numbers::pi, k / 2.0) * std::exp(0.5 * log_det(llt));
}

std::vector<double> leading_term_eval(const SystemSpec& s, const SpectralData& sd, const TransferStructure& ts,
                                      const ProfileQuery& q) {
  if (!(q.t > 0.0)) throw InvalidQuery("the leading term is evaluated for t > 0");
  if (!(q.epsilon > 0.0)) throw InvalidQuery("epsilon must be positive");
  if (q.x.size() != s.K) throw DimensionError("x must have K entries");
  std::vector<double> zeta(s.K);
  for (std::size_t i = 0; i < s.K; ++i) zeta[i] = (q.x[i] - ts.v[i].get_d() * q.t) / q.epsilon;
  const double phi = phi0_eval(ts.M, q, zeta);
  std::vector<double> out;
  out.reserve(s.n);
  for (const auto& h : sd.h1) out.push_back(phi * h.get_d());
  return out;
}

double pde_residual(const RationalMatrix& M, const ProfileQuery& q, const std::vector<double>& zeta, double h) {
  check_profile(M, q, zeta);
  if (!(h > 0.0)) throw InvalidQuery("step h must be positive");
  require_dissipative(M);
  const Eigen::MatrixXd m = to_eigen(M);
  const Eigen::Index k = m.rows();
  const Eigen::VectorXd z = to_vector(zeta);
  auto phi = [&](double t, const Eigen::VectorXd& at) { return gaussian(m, q.sigma0, q.amplitude, t, at); };

  const double center = phi(q.t, z);
  double total = (phi(q.t + h, z) - phi(q.t - h, z)) / (2.0 * h);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double mij = m(i, j);
      if (mij == 0.0) continue;
      double second;
      if (i == j) {
        Eigen::VectorXd plus = z, minus = z;
        plus(i) += h;
        minus(i) -= h;
        second = (phi(q.t, plus) - 2.0 * center + phi(q.t, minus)) / (h * h);
        total += mij * second;
      } else {
        Eigen::VectorXd pp = z, pm = z, mp = z, mm = z;
        pp(i) += h, pp(j) += h;
        pm(i) += h, pm(j) -= h;
        mp(i) -= h, mp(j) += h;
        mm(i) -= h, mm(j) -= h;
        second = (phi(q.t, pp) - phi(q.t, pm) - phi(q.t, mp) + phi(q.t, mm)) / (4.0 * h * h);
        total += 2.0 * mij * second;
      }
    }
  }
  return std::fabs(total);
}

}  // namespace perturb_rank
