#include "perturb_rank/exact_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "perturb_rank/errors.hpp"

namespace perturb_rank {
namespace {

using IntegerMatrix = std::vector<std::vector<mpz_class>>;

// Scales each row by the lcm of its denominators. Returns the scale factors.
IntegerMatrix integerize_rows(const RationalMatrix& m, std::vector<mpz_class>* scales) {
  IntegerMatrix out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    if (scales) scales->push_back(l);
  }
  return out;
}

struct BareissResult {
  std::size_t rank = 0;
  mpz_class last_pivot = 1;
  int sign = 1;
};

// In-place fraction-free elimination. Every division by the previous pivot is exact.
BareissResult bareiss(IntegerMatrix& a) {
  BareissResult result;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      result.sign = -result.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  result.rank = r;
  result.last_pivot = prev;
  return result;
}

}  // namespace

Polynomial::Polynomial(RationalVector coefficients) : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && perturb_rank::is_zero(coefficients_.back())) coefficients_.pop_back();
}

Rational Polynomial::coefficient(std::size_t power) const {
  return power < coefficients_.size() ? coefficients_[power] : Rational(0);
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::divide_by_variable() const {
  if (is_zero()) return {};
  if (!perturb_rank::is_zero(coefficients_.front()))
    throw InconsistentSystem("polynomial has a nonzero constant term");
  return Polynomial(RationalVector(coefficients_.begin() + 1, coefficients_.end()));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const Rational& c = coefficients_[static_cast<std::size_t>(d)];
    if (perturb_rank::is_zero(c)) continue;
    const Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1;
    if (!unit || d == 0) out += perturb_rank::to_string(mag);
    if (d > 0) {
      if (!unit) out += "*";
      out += var;
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out;
}

std::size_t rank_exact(const RationalMatrix& m) {
  auto a = integerize_rows(m, nullptr);
  return bareiss(a).rank;
}

Rational determinant(const RationalMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant: matrix is not square");
  if (m.rows() == 0) return 1;
  std::vector<mpz_class> scales;
  auto a = integerize_rows(m, &scales);
  const auto res = bareiss(a);
  if (res.rank < m.rows()) return 0;
  mpz_class scale = 1;
  for (const auto& s : scales) scale *= s;
  Rational det(res.last_pivot * res.sign, scale);
  det.canonicalize();
  return det;
}

std::vector<RationalVector> nullspace(const RationalMatrix& m, KernelSide side) {
  return kernel_basis(m, side);
}

RationalVector solve_constrained(const RationalMatrix& m, const RationalVector& y, const RationalVector& c) {
  return solve_constrained_columns(m, RationalMatrix::column(y), c).col(0);
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto ech = reduced_row_echelon(std::move(aug));
  if (ech.pivot_cols.size() < n || ech.pivot_cols[n - 1] >= n)
    throw DimensionError("inverse: matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

Polynomial charpoly_exact(const RationalMatrix& m) {
  if (!m.is_square()) throw DimensionError("charpoly_exact: matrix is not square");
  const std::size_t n = m.rows();
  if (n > kCharpolySizeLimit)
    throw SizeLimitExceeded("charpoly_exact: size " + std::to_string(n) + " exceeds limit " +
                            std::to_string(kCharpolySizeLimit));
  RationalVector c(n + 1);
  c[n] = 1;
  RationalMatrix acc(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    acc = m * acc;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[n - k + 1];
    const RationalMatrix am = m * acc;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

std::vector<Rational> hurwitz_minors(const Polynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("hurwitz_stable: zero polynomial");
  const int d = p.degree();
  const Rational sign = sgn(p.leading()) < 0 ? -1 : 1;
  // a[i] is the coefficient of λ^(d-i).
  auto a = [&](int i) -> Rational {
    if (i < 0 || i > d) return 0;
    return sign * p.coefficient(static_cast<std::size_t>(d - i));
  };
  std::vector<Rational> minors;
  for (int k = 1; k <= d; ++k) {
    RationalMatrix h(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = a(2 * j - i + 1);
    minors.push_back(determinant(h));
  }
  return minors;
}

bool hurwitz_stable(const Polynomial& p) {
  const auto minors = hurwitz_minors(p);
  return std::all_of(minors.begin(), minors.end(), [](const Rational& x) { return sgn(x) > 0; });
}

RationalVector column_of(const RationalMatrix& m, std::size_t j) { return m.col(j); }

double max_abs_entry(const RationalMatrix& m) {
  double best = 0.0;
  for (const auto& e : m.entries()) best = std::max(best, std::fabs(e.get_d()));
  return best;
}

}  // namespace perturb_rank
