#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "perturb_rank/matrix.hpp"
#include "perturb_rank/ratfunc.hpp"

namespace perturb_rank {

using SymbolicMatrix = Matrix<RatFunc>;

constexpr std::size_t kSymbolicMaxAxes = 6;

/// Variable layout of the two-equation family
///   A = [[-a, b], [k a, -k b]],  D_i = diag(d{i}_1, d{i}_2):
/// a, b, k first, then d{i}_1, d{i}_2 for axis i = 1..K.
struct SymbolicVariables {
  std::size_t K = 0;
  std::vector<std::string> names;

  explicit SymbolicVariables(std::size_t axes);

  static constexpr std::size_t a = 0;
  static constexpr std::size_t b = 1;
  static constexpr std::size_t k = 2;
  std::size_t d(std::size_t axis, std::size_t component) const { return 3 + 2 * axis + component; }
  std::size_t count() const { return names.size(); }

  /// Point for evaluation: (a, b, k, then per axis the two diagonal entries).
  RationalVector point(const Rational& a_val, const Rational& b_val, const Rational& k_val,
                       const std::vector<RationalVector>& diagonals) const;
};

struct SymbolicStructure {
  SymbolicVariables vars{2};
  SymbolicMatrix A;
  std::vector<RatFunc> h1;
  std::vector<RatFunc> h1_star;
  std::vector<RatFunc> v;
  SymbolicMatrix G;
  SymbolicMatrix M_sym;
  RatFunc c_sym;                  // M_sym[i][j] = -c_sym·Δ_i·Δ_j
  std::vector<RatFunc> Delta_sym; // Δ_i = d{i}_1 - d{i}_2
  RatFunc reference_P;            // ab/(a+bk)^2, the constant quoted for this family
};

/// Runs the transfer construction with rational-function entries for the
/// two-equation family in K spatial variables. Throws SizeLimitExceeded
/// unless 2 <= K <= 6.
SymbolicStructure build_M_parametric(std::size_t K);

/// True iff M_sym + c_sym·Δ·Δ^T is identically zero.
bool verify_rank_one_identity(const SymbolicStructure& ss);

/// The nonzero eigenvalue -c_sym·ΣΔ_i² (the trace) and the multiplicity K-1 of
/// the zero eigenvalue. Throws RankIdentityFailed if the rank-one identity fails.
std::pair<RatFunc, std::size_t> eigen_closed_form_n2(const SymbolicStructure& ss);

}  // namespace perturb_rank
