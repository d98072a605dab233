#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "perturb_rank/multipoly.hpp"

namespace perturb_rank {

/// Rational function num/den over Q, always held in canonical form:
/// gcd(num, den) = 1, both with integer coefficients, den primitive with a
/// positive grlex-leading coefficient. Two rational functions are equal iff
/// their canonical forms are identical.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long constant) : num_(constant), den_(1) {}             // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& constant) : num_(constant), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const MultiPoly& poly);                                 // NOLINT(google-explicit-constructor)
  /// Normalizes; throws ZeroDenominator.
  RatFunc(const MultiPoly& num, const MultiPoly& den);

  const MultiPoly& numerator() const { return num_; }
  const MultiPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);
  RatFunc& operator/=(const RatFunc& other);
  RatFunc operator-() const;

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Throws ZeroDenominator when the denominator vanishes at the point.
  Rational evaluate(const RationalVector& point) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  struct Canonical {};
  RatFunc(Canonical, MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {}

  friend RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den);

  MultiPoly num_;
  MultiPoly den_;
};

/// Canonical reduced form of num/den. Throws ZeroDenominator.
RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den);

/// Operator-tree encoding: {"op": "add"|"mul"|"pow"|"div", "args": [...]},
/// leaves {"num": "p/q"} and {"var": name}.
nlohmann::json expression_tree(const MultiPoly& p, const std::vector<std::string>& names);
nlohmann::json expression_tree(const RatFunc& f, const std::vector<std::string>& names);

}  // namespace perturb_rank
