#include "perturb_rank/ratfunc.hpp"

#include "perturb_rank/errors.hpp"

namespace perturb_rank {

RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw ZeroDenominator("rational function with zero denominator");
  if (num.is_zero()) return RatFunc(RatFunc::Canonical{}, MultiPoly(), MultiPoly(1));

  MultiPoly n = num;
  MultiPoly d = den;
  if (!d.is_constant()) {
    const MultiPoly g = gcd(n, d);
    if (!g.is_constant()) {
      n = exact_divide(n, g);
      d = exact_divide(d, g);
    }
  }
  // num/den = (cn/cd)·N/D with N, D primitive integer polynomials.
  const Rational cn = rational_content(n);
  Rational cd = rational_content(d);
  MultiPoly N = n.scaled(1 / cn);
  MultiPoly D = d.scaled(1 / cd);
  if (sgn(D.leading_coefficient()) < 0) {
    D = -D;
    cd = -cd;
  }
  const Rational ratio = cn / cd;
  return RatFunc(RatFunc::Canonical{}, N.scaled(Rational(ratio.get_num())), D.scaled(Rational(ratio.get_den())));
}

RatFunc::RatFunc(const MultiPoly& poly) : RatFunc(ratfunc_normalize(poly, MultiPoly(1))) {}

RatFunc::RatFunc(const MultiPoly& num, const MultiPoly& den) : RatFunc(ratfunc_normalize(num, den)) {}

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) return *this = ratfunc_normalize(num_ + other.num_, den_);
  const MultiPoly g = gcd(den_, other.den_);
  const MultiPoly left = exact_divide(den_, g);
  const MultiPoly right = exact_divide(other.den_, g);
  return *this = ratfunc_normalize(num_ * right + other.num_ * left, left * other.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& other) { return *this += -other; }

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  if (is_zero() || other.is_zero()) return *this = RatFunc();
  // Cross-cancel first to keep the products small.
  const MultiPoly g1 = gcd(num_, other.den_);
  const MultiPoly g2 = gcd(other.num_, den_);
  const MultiPoly n = exact_divide(num_, g1) * exact_divide(other.num_, g2);
  const MultiPoly d = exact_divide(den_, g2) * exact_divide(other.den_, g1);
  return *this = ratfunc_normalize(n, d);
}

RatFunc& RatFunc::operator/=(const RatFunc& other) {
  if (other.is_zero()) throw ZeroDenominator("division by the zero rational function");
  return *this *= RatFunc(Canonical{}, other.den_, other.num_);
}

RatFunc RatFunc::operator-() const { return RatFunc(Canonical{}, -num_, den_); }

Rational RatFunc::evaluate(const RationalVector& point) const {
  const Rational d = den_.evaluate(point);
  if (perturb_rank::is_zero(d)) throw ZeroDenominator("denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

std::string RatFunc::to_string(const std::vector<std::string>& names) const {
  const std::string n = num_.to_string(names);
  if (den_.is_constant() && den_.constant_value() == 1) return n;
  const std::string num_text = num_.term_count() > 1 ? "(" + n + ")" : n;
  const std::string d = den_.to_string(names);
  return num_text + "/(" + d + ")";
}

nlohmann::json expression_tree(const MultiPoly& p, const std::vector<std::string>& names) {
  using nlohmann::json;
  if (p.is_zero()) return json{{"num", "0"}};
  json sum = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    json factors = json::array();
    if (!(c == 1) || e.empty()) factors.push_back(json{{"num", perturb_rank::to_string(c)}});
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      json var{{"var", i < names.size() ? names[i] : "x" + std::to_string(i)}};
      if (e[i] == 1) {
        factors.push_back(var);
      } else {
        factors.push_back(json{{"op", "pow"}, {"args", json::array({var, json{{"num", std::to_string(e[i])}}})}});
      }
    }
    sum.push_back(factors.size() == 1 ? factors.front() : json{{"op", "mul"}, {"args", factors}});
  }
  return sum.size() == 1 ? sum.front() : nlohmann::json{{"op", "add"}, {"args", sum}};
}

nlohmann::json expression_tree(const RatFunc& f, const std::vector<std::string>& names) {
  const auto& den = f.denominator();
  if (den.is_constant() && den.constant_value() == 1) return expression_tree(f.numerator(), names);
  return nlohmann::json{{"op", "div"},
                        {"args", nlohmann::json::array({expression_tree(f.numerator(), names),
                                                        expression_tree(den, names)})}};
}

}  // namespace perturb_rank
