#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace perturb_rank {

/// Exact rational scalar. GMP keeps every value canonical: gcd(|p|, q) = 1,
/// q > 0, and zero is 0/1.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p" or "p/q" (q > 0, optional leading '-'). Non-reduced input such as
/// "2/4" is accepted and canonicalized. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

inline double to_double(const Rational& value) { return value.get_d(); }

Rational dot(const RationalVector& lhs, const RationalVector& rhs);

bool is_zero_vector(const RationalVector& v);

std::vector<double> to_doubles(const RationalVector& v);

}  // namespace perturb_rank
