#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "perturb_rank/elimination.hpp"
#include "perturb_rank/matrix.hpp"
#include "perturb_rank/rational.hpp"

namespace perturb_rank {

using RationalMatrix = Matrix<Rational>;

/// Univariate polynomial with exact coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RationalVector coefficients);

  const RationalVector& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const Rational& leading() const { return coefficients_.back(); }
  Rational coefficient(std::size_t power) const;

  Rational evaluate(const Rational& x) const;

  /// Divides by the variable; requires a zero constant term.
  Polynomial divide_by_variable() const;

  std::string to_string(const std::string& var = "λ") const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  RationalVector coefficients_;
};

/// Exact rank by fraction-free (Bareiss) elimination on the row-integerized matrix.
std::size_t rank_exact(const RationalMatrix& m);

/// Exact determinant by fraction-free elimination.
Rational determinant(const RationalMatrix& m);

/// Kernel basis (right kernel of m, or of m^T for KernelSide::left), each vector
/// normalized to first nonzero entry = 1.
std::vector<RationalVector> nullspace(const RationalMatrix& m, KernelSide side);

/// Unique x with m x = y and (x, c) = 0. Throws InconsistentSystem or
/// DegenerateConstraint.
RationalVector solve_constrained(const RationalMatrix& m, const RationalVector& y, const RationalVector& c);

/// Exact inverse; throws DimensionError for singular or non-square input.
RationalMatrix inverse(const RationalMatrix& m);

constexpr std::size_t kCharpolySizeLimit = 32;

/// det(λI - m) by Faddeev-LeVerrier. Throws SizeLimitExceeded above 32x32.
Polynomial charpoly_exact(const RationalMatrix& m);

/// Routh-Hurwitz: true iff every root has strictly negative real part, decided
/// by the signs of the leading principal minors of the Hurwitz matrix.
/// A negative leading coefficient is normalized away. Throws ZeroPolynomial.
bool hurwitz_stable(const Polynomial& p);

/// Leading principal minors of the Hurwitz matrix (after sign normalization).
std::vector<Rational> hurwitz_minors(const Polynomial& p);

RationalVector column_of(const RationalMatrix& m, std::size_t j);

double max_abs_entry(const RationalMatrix& m);

}  // namespace perturb_rank
