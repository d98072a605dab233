#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "perturb_rank/rational.hpp"

namespace perturb_rank {

/// Exponent vector indexed by variable number. Trailing zeros are stripped, so
/// constants have an empty vector and polynomials never need to agree on a
/// variable count.
using Exponents = std::vector<std::uint16_t>;

/// Graded lexicographic order: total degree first, then the first differing
/// exponent (variable 0 most significant).
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients. No zero
/// coefficient is ever stored.
class MultiPoly {
 public:
  using Terms = std::map<Exponents, Rational, GrlexLess>;

  MultiPoly() = default;
  MultiPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(long constant) : MultiPoly(Rational(constant)) {}  // NOLINT

  static MultiPoly variable(std::size_t index, unsigned power = 1);
  static MultiPoly monomial(Exponents exponents, const Rational& coefficient);

  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;

  /// Leading term under grlex. Requires a nonzero polynomial.
  const Exponents& leading_exponents() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool contains(std::size_t var) const { return degree_in(var) > 0; }
  /// Highest variable index with a nonzero exponent; -1 for constants.
  int highest_variable() const;

  /// Coefficients as a polynomial in `var`: out[p] multiplies var^p.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  MultiPoly scaled(const Rational& factor) const;
  MultiPoly pow(unsigned e) const;

  /// Substitutes point[i] for variable i; missing variables are an error.
  Rational evaluate(const RationalVector& point) const;

  /// Human-readable form, terms in descending grlex order: "a^2*b - 3/2*k + 1".
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  Terms terms_;
};

/// q with f = q·g; throws std::domain_error when g does not divide f.
MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g);

/// Pseudo-remainder of f by g as polynomials in `var`: the remainder of
/// lc(g)^(deg f - deg g + 1)·f, which divides exactly.
MultiPoly pseudo_remainder(const MultiPoly& f, const MultiPoly& g, std::size_t var);

/// Greatest common divisor over Q, normalized to leading coefficient 1
/// (0 only when both inputs are 0).
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);

/// gcd of the coefficients of f as a polynomial in `var`.
MultiPoly content_in(const MultiPoly& f, std::size_t var);

/// Positive rational c such that f / c has coprime integer coefficients.
Rational rational_content(const MultiPoly& f);

}  // namespace perturb_rank
