#include "perturb_rank/symbolic.hpp"

#include "perturb_rank/errors.hpp"
#include "perturb_rank/transfer.hpp"

namespace perturb_rank {

SymbolicVariables::SymbolicVariables(std::size_t axes) : K(axes), names{"a", "b", "k"} {
  for (std::size_t i = 1; i <= axes; ++i) {
    names.push_back("d" + std::to_string(i) + "_1");
    names.push_back("d" + std::to_string(i) + "_2");
  }
}

RationalVector SymbolicVariables::point(const Rational& a_val, const Rational& b_val, const Rational& k_val,
                                        const std::vector<RationalVector>& diagonals) const {
  RationalVector p{a_val, b_val, k_val};
  for (const auto& d : diagonals) {
    p.push_back(d.at(0));
    p.push_back(d.at(1));
  }
  return p;
}

SymbolicStructure build_M_parametric(std::size_t K) {
  if (K < 2 || K > kSymbolicMaxAxes)
    throw SizeLimitExceeded("symbolic construction supports 2 <= K <= " + std::to_string(kSymbolicMaxAxes));

  SymbolicStructure ss;
  ss.vars = SymbolicVariables(K);
  const RatFunc a = MultiPoly::variable(SymbolicVariables::a);
  const RatFunc b = MultiPoly::variable(SymbolicVariables::b);
  const RatFunc k = MultiPoly::variable(SymbolicVariables::k);
  const RatFunc scale = a + b * k;

  ss.A = SymbolicMatrix::from_rows({{-a, b}, {k * a, -k * b}});
  ss.h1 = {b, a};
  ss.h1_star = {k / scale, RatFunc(1) / scale};

  std::vector<std::vector<RatFunc>> diagonals;
  for (std::size_t i = 0; i < K; ++i) {
    const RatFunc d1 = MultiPoly::variable(ss.vars.d(i, 0));
    const RatFunc d2 = MultiPoly::variable(ss.vars.d(i, 1));
    diagonals.push_back({d1, d2});
    ss.Delta_sym.push_back(d1 - d2);
  }

  ss.v = transfer::velocities(diagonals, ss.h1, ss.h1_star);
  const auto psi = transfer::shifted_transport(diagonals, ss.v);
  ss.G = transfer::group_inverse(ss.A, ss.h1, ss.h1_star);
  ss.M_sym = transfer::transfer_matrix(psi, ss.G, ss.h1, ss.h1_star);

  ss.c_sym = -ss.M_sym(0, 0) / (ss.Delta_sym[0] * ss.Delta_sym[0]);
  ss.reference_P = a * b / (scale * scale);
  return ss;
}

bool verify_rank_one_identity(const SymbolicStructure& ss) {
  const std::size_t K = ss.M_sym.rows();
  if (ss.M_sym.cols() != K || ss.Delta_sym.size() != K) return false;
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j)
      if (!(ss.M_sym(i, j) + ss.c_sym * ss.Delta_sym[i] * ss.Delta_sym[j]).is_zero()) return false;
  return true;
}

std::pair<RatFunc, std::size_t> eigen_closed_form_n2(const SymbolicStructure& ss) {
  if (!verify_rank_one_identity(ss)) throw RankIdentityFailed("M_sym is not -c·ΔΔ^T identically");
  const std::size_t K = ss.M_sym.rows();
  RatFunc sum_sq;
  for (const auto& d : ss.Delta_sym) sum_sq += d * d;
  return {-ss.c_sym * sum_sq, K - 1};
}

}  // namespace perturb_rank
