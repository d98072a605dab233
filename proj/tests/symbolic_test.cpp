#include <random>

#include "doctest.h"
#include "perturb_rank/asymptotics.hpp"
#include "perturb_rank/errors.hpp"
#include "perturb_rank/ratfunc.hpp"
#include "perturb_rank/symbolic.hpp"
#include "support.hpp"

using namespace perturb_rank;
using testsupport::q;

namespace {

const MultiPoly a = MultiPoly::variable(0);
const MultiPoly b = MultiPoly::variable(1);
const MultiPoly k = MultiPoly::variable(2);
const std::vector<std::string> names{"a", "b", "k"};

MultiPoly random_poly(std::mt19937_64& rng, std::size_t vars, unsigned max_deg, int terms) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<int> coef(-5, 5);
  MultiPoly p;
  for (int t = 0; t < terms; ++t) {
    Exponents e(vars);
    for (auto& x : e) x = static_cast<std::uint16_t>(deg(rng));
    while (!e.empty() && e.back() == 0) e.pop_back();
    p += MultiPoly::monomial(e, coef(rng));
  }
  return p;
}

Rational random_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 9);
  return q(num(rng), den(rng));
}

Rational random_signed(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  return q(num(rng), den(rng));
}

// Unreduced fraction arithmetic, used as the reference for the canonical forms.
struct RawFraction {
  MultiPoly num, den;
  RawFraction operator+(const RawFraction& o) const { return {num * o.den + o.num * den, den * o.den}; }
  RawFraction operator*(const RawFraction& o) const { return {num * o.num, den * o.den}; }
  RawFraction operator/(const RawFraction& o) const { return {num * o.den, den * o.num}; }
};

}  // namespace

TEST_CASE("polynomial arithmetic") {
  MultiPoly p = (a + b) * (a - b);
  CHECK(p == a * a - b * b);
  CHECK(p.to_string(names) == "a^2 - b^2");
  CHECK((a + 1).pow(2) == a * a + a.scaled(2) + 1);
  CHECK(((a + b) * k - k * a - k * b).is_zero());
  CHECK(MultiPoly(q(3, 2)).is_constant());
  CHECK((a * b * b).degree_in(1) == 2);
  CHECK(a.evaluate({q(2)}) == 2);
  CHECK((a * b + k).evaluate({q(2), q(3), q(-1)}) == 5);
  CHECK_FALSE((a + b).is_monomial());
}

TEST_CASE("exact division and gcd") {
  MultiPoly f = (a + b * k).pow(3) * a;
  CHECK(exact_divide(f, a + b * k) == (a + b * k).pow(2) * a);
  CHECK_THROWS_AS(exact_divide(a + 1, a + b), std::domain_error);
  CHECK(gcd(a * a - b * b, a * a + a * b.scaled(2) + b * b) == a + b);
  CHECK(gcd(a.scaled(6) * b, a.scaled(4) * k) == a);
  CHECK(gcd(a + 1, b + 1) == 1);
  CHECK(gcd(MultiPoly(), a + b) == a + b);
  CHECK(gcd((a + b * k) * (k - 1), (a + b * k).pow(2) * b) == a + b * k);
  CHECK(content_in(a * b + a * k, 0) == b + k);
  CHECK(rational_content(a.scaled(q(2, 3)) + b.scaled(q(4, 9))) == q(2, 9));
  CHECK(pseudo_remainder(a * a - b * b, a - b, 0).is_zero());
  CHECK(pseudo_remainder(a * a + 1, a.scaled(2) + 1, 0) == 5);
  CHECK(pseudo_remainder(a * a * b + k, a * b + 1, 0) == b * b * k + b);
}

TEST_CASE("gcd divides both inputs and absorbs common factors") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    MultiPoly common = random_poly(rng, 3, 3, 4);
    MultiPoly f = random_poly(rng, 3, 2, 3);
    MultiPoly g = random_poly(rng, 3, 2, 3);
    if (common.is_zero() || f.is_zero() || g.is_zero()) continue;
    MultiPoly d = gcd(common * f, common * g);
    CHECK_NOTHROW(exact_divide(common * f, d));
    CHECK_NOTHROW(exact_divide(common * g, d));
    CHECK_NOTHROW(exact_divide(d, common));
    CHECK(gcd(exact_divide(common * f, d), exact_divide(common * g, d)) == 1);
  }
}

TEST_CASE("normalization examples") {
  CHECK(ratfunc_normalize(a * a - b * b, a - b) == RatFunc(a + b));
  CHECK(ratfunc_normalize(a * b, b * a) == RatFunc(1));
  RatFunc r = ratfunc_normalize(a * b * (a + b * k), (a + b * k).pow(3));
  CHECK(r.numerator() == a * b);
  CHECK(r.denominator() == (a + b * k).pow(2));
  RatFunc s = ratfunc_normalize(a.scaled(-2), b.scaled(-4) + 2);
  CHECK(s.denominator() == b.scaled(2) - 1);
  CHECK(s.numerator() == a);
  CHECK(ratfunc_normalize(a.scaled(q(1, 2)), b.scaled(q(1, 3))) == ratfunc_normalize(a.scaled(3), b.scaled(2)));
  CHECK_THROWS_AS(ratfunc_normalize(a, MultiPoly()), ZeroDenominator);
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(), ZeroDenominator);
  CHECK(RatFunc(a, a + b).to_string(names) == "a/(a + b)");
}

TEST_CASE("canonical forms are sound") {
  std::mt19937_64 rng(32);
  int evaluated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    RawFraction raw{MultiPoly(1), MultiPoly(1)};
    RatFunc canon(1);
    for (int step = 0; step < 4; ++step) {
      MultiPoly n = random_poly(rng, 3, 2, 3), d = random_poly(rng, 3, 2, 2);
      if (n.is_zero() || d.is_zero()) continue;
      RawFraction rf{n, d};
      RatFunc cf(n, d);
      switch (step % 3) {
        case 0: raw = raw + rf; canon += cf; break;
        case 1: raw = raw * rf; canon *= cf; break;
        default: raw = raw / rf; canon /= cf; break;
      }
      if (raw.num.is_zero()) break;
    }
    CHECK(canon == RatFunc(raw.num, raw.den));
    for (int p = 0; p < 50; ++p) {
      RationalVector pt{random_signed(rng), random_signed(rng), random_signed(rng)};
      Rational rd = raw.den.evaluate(pt);
      if (is_zero(rd)) continue;
      CHECK(canon.evaluate(pt) == raw.num.evaluate(pt) / rd);
      ++evaluated;
    }
  }
  CHECK(evaluated > 1500);
}

TEST_CASE("equal functions built differently have identical forms") {
  RatFunc x = RatFunc(a) / RatFunc(a + b * k);
  RatFunc y = RatFunc(1) - RatFunc(b * k) / RatFunc(a + b * k);
  CHECK(x == y);
  CHECK(x.numerator() == y.numerator());
  CHECK((x - y).is_zero());
  CHECK(((x * x) / x) == x);
}

TEST_CASE("expression trees") {
  auto tree = expression_tree(RatFunc(a * a, a + b.scaled(2)), names);
  CHECK(tree["op"] == "div");
  CHECK(tree["args"][0]["op"] == "pow");
  CHECK(tree["args"][0]["args"][0]["var"] == "a");
  CHECK(tree["args"][1]["op"] == "add");
  CHECK(expression_tree(MultiPoly(q(-3, 4)), names)["num"] == "-3/4");
}

TEST_CASE("symbolic structure of the two-state family") {
  for (std::size_t K = 2; K <= kSymbolicMaxAxes; ++K) {
    SymbolicStructure ss = build_M_parametric(K);
    CHECK(ss.M_sym.is_symmetric());
    CHECK(verify_rank_one_identity(ss));
    CHECK(ss.c_sym == RatFunc(a * b * k, (a + b * k).pow(3)));
    CHECK(ss.reference_P == RatFunc(a * b, (a + b * k).pow(2)));
    auto [lambda, zeros] = eigen_closed_form_n2(ss);
    CHECK(zeros == K - 1);
    RatFunc trace;
    for (std::size_t i = 0; i < K; ++i) trace += ss.M_sym(i, i);
    CHECK(trace == lambda);
    for (std::size_t i = 0; i < 2; ++i) {
      RatFunc row;
      for (std::size_t j = 0; j < 2; ++j) row += ss.A(i, j) * ss.h1[j];
      CHECK(row.is_zero());
      RatFunc col;
      for (std::size_t j = 0; j < 2; ++j) col += ss.h1_star[j] * ss.A(j, i);
      CHECK(col.is_zero());
    }
    CHECK(ss.h1[0] * ss.h1_star[0] + ss.h1[1] * ss.h1_star[1] == RatFunc(1));
  }
  CHECK_THROWS_AS(build_M_parametric(1), SizeLimitExceeded);
  CHECK_THROWS_AS(build_M_parametric(7), SizeLimitExceeded);
}

TEST_CASE("corrupted structure is detected") {
  SymbolicStructure ss = build_M_parametric(3);
  ss.M_sym(1, 2) = -ss.M_sym(1, 2);
  CHECK_FALSE(verify_rank_one_identity(ss));
  CHECK_THROWS_AS(eigen_closed_form_n2(ss), RankIdentityFailed);
}

TEST_CASE("trace at the canonical point") {
  SymbolicStructure ss = build_M_parametric(2);
  auto [lambda, zeros] = eigen_closed_form_n2(ss);
  // d1 = (1, 0), d2 = (0, 1) gives Δ = (1, -1), the W1 instance.
  RationalVector pt = ss.vars.point(1, 1, 1, {{1, 0}, {0, 1}});
  CHECK(lambda.evaluate(pt) == q(-1, 4));
  CHECK(ss.c_sym.evaluate(pt) == q(1, 8));
}

TEST_CASE("substitution commutes with the numeric construction") {
  std::mt19937_64 rng(33);
  for (std::size_t K = 2; K <= kSymbolicMaxAxes; ++K) {
    SymbolicStructure ss = build_M_parametric(K);
    for (int trial = 0; trial < 100; ++trial) {
      const Rational av = random_positive(rng), bv = random_positive(rng), kv = random_positive(rng);
      SystemSpec s;
      s.n = 2;
      s.K = K;
      s.A = RationalMatrix::from_rows({{-av, bv}, {kv * av, -kv * bv}});
      for (std::size_t i = 0; i < K; ++i) s.D.push_back({random_signed(rng), random_signed(rng)});
      RationalMatrix M = build_M(s, validate_system(s)).M;
      RationalVector pt = ss.vars.point(av, bv, kv, s.D);
      for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j) CHECK(ss.M_sym(i, j).evaluate(pt) == M(i, j));
    }
  }
}
