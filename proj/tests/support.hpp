#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "perturb_rank/exact_linalg.hpp"
#include "perturb_rank/model.hpp"

namespace testsupport {

using perturb_rank::Rational;
using perturb_rank::RationalMatrix;
using perturb_rank::RationalVector;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<RationalVector> out;
  for (const auto& r : rows) {
    RationalVector row;
    for (long x : r) row.emplace_back(x);
    out.push_back(row);
  }
  return RationalMatrix::from_rows(out);
}

// Determinant by permutation expansion over all n! terms.
inline Rational leibniz_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Largest r such that some r x r minor is nonzero.
inline std::size_t minor_rank(const RationalMatrix& m) {
  const std::size_t top = std::min(m.rows(), m.cols());
  for (std::size_t r = top; r > 0; --r) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), r, 0, cur, rs);
    subsets(m.cols(), r, 0, cur, cs);
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        RationalMatrix sub(r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) sub(i, j) = m(ri[i], ci[j]);
        if (leibniz_det(sub) != 0) return r;
      }
  }
  return 0;
}

// Small rationals, with a bias towards zero so rank deficiency shows up often.
inline Rational random_entry(std::mt19937_64& rng, int bound = 4) {
  std::uniform_int_distribution<int> zero(0, 3);
  if (zero(rng) == 0) return 0;
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  return q(num(rng), den(rng));
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound = 4) {
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_entry(rng, bound);
  return m;
}

// Low-rank product B C with inner dimension k.
inline RationalMatrix random_low_rank(std::mt19937_64& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(rng, r, k) * random_matrix(rng, k, c);
}

inline perturb_rank::SystemSpec w1() {
  perturb_rank::SystemSpec s;
  s.n = 2;
  s.K = 2;
  s.A = mat({{-1, 1}, {1, -1}});
  s.D = {{q(1), q(0)}, {q(0), q(1)}};
  s.label = "W1";
  return s;
}

inline std::vector<double> to_double_matrix(const RationalMatrix& m) {
  std::vector<double> out;
  for (const auto& e : m.entries()) out.push_back(e.get_d());
  return out;
}

}  // namespace testsupport
