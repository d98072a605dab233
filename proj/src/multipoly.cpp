#include "perturb_rank/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "perturb_rank/errors.hpp"

namespace perturb_rank {
namespace {

unsigned degree_of(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

std::uint16_t at(const Exponents& e, std::size_t i) { return i < e.size() ? e[i] : 0; }

void strip(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint16_t>(at(a, i) + at(b, i));
  return out;
}

bool divides(const Exponents& d, const Exponents& e) {
  if (d.size() > e.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

Exponents subtract_exponents(const Exponents& e, const Exponents& d) {
  Exponents out(e);
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = static_cast<std::uint16_t>(out[i] - d[i]);
  strip(out);
  return out;
}

MultiPoly monic(const MultiPoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(Rational(1) / f.leading_coefficient());
}

// gcd when one side is a single term: the common monomial factor.
MultiPoly monomial_gcd(const MultiPoly& mono, const MultiPoly& f) {
  Exponents common = mono.leading_exponents();
  for (const auto& [e, c] : f.terms()) {
    common.resize(std::min(common.size(), e.size()));
    for (std::size_t i = 0; i < common.size(); ++i) common[i] = std::min(common[i], e[i]);
  }
  strip(common);
  return MultiPoly::monomial(common, 1);
}

// Primitive in `var`, with coprime integer coefficients.
MultiPoly primitive_part_in(const MultiPoly& f, std::size_t var) {
  const MultiPoly p = exact_divide(f, content_in(f, var));
  return p.scaled(1 / rational_content(p));
}

// Substitutes fixed small integers for every variable except `var`.
MultiPoly specialize_except(const MultiPoly& f, std::size_t var, unsigned shift) {
  MultiPoly out;
  for (const auto& [e, c] : f.terms()) {
    Rational coef = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == var) continue;
      const long value = 2 + static_cast<long>((3 * i + 7 * shift) % 23);
      for (unsigned k = 0; k < e[i]; ++k) coef *= value;
    }
    Exponents x;
    if (at(e, var)) {
      x.assign(var + 1, 0);
      x[var] = e[var];
    }
    out += MultiPoly::monomial(x, coef);
  }
  return out;
}

// True when an evaluation of the other variables proves that f and g, both
// primitive in `var`, share no factor of positive degree in `var`.
bool coprime_by_specialization(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
  auto univariate = [var](const MultiPoly& p) {
    for (const auto& [e, c] : p.terms())
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != var && e[i]) return false;
    return true;
  };
  if (univariate(f) && univariate(g)) return false;
  for (unsigned shift = 0; shift < 3; ++shift) {
    const MultiPoly fs = specialize_except(f, var, shift);
    const MultiPoly gs = specialize_except(g, var, shift);
    if (fs.degree_in(var) != f.degree_in(var) || gs.degree_in(var) != g.degree_in(var)) continue;
    return gcd(fs, gs).is_constant();
  }
  return false;
}

}  // namespace

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = degree_of(a);
  const unsigned db = degree_of(b);
  if (da != db) return da < db;
  const std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    const auto x = at(a, i);
    const auto y = at(b, i);
    if (x != y) return x < y;
  }
  return false;
}

MultiPoly::MultiPoly(const Rational& constant) {
  if (!perturb_rank::is_zero(constant)) terms_.emplace(Exponents{}, constant);
}

MultiPoly MultiPoly::variable(std::size_t index, unsigned power) {
  Exponents e(index + 1, 0);
  e[index] = static_cast<std::uint16_t>(power);
  strip(e);
  return monomial(std::move(e), 1);
}

MultiPoly MultiPoly::monomial(Exponents exponents, const Rational& coefficient) {
  strip(exponents);
  MultiPoly p;
  if (!perturb_rank::is_zero(coefficient)) p.terms_.emplace(std::move(exponents), coefficient);
  return p;
}

bool MultiPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational MultiPoly::constant_value() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned MultiPoly::total_degree() const { return terms_.empty() ? 0 : degree_of(terms_.rbegin()->first); }

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, at(e, var));
  return d;
}

int MultiPoly::highest_variable() const {
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e.size()) - 1);
  return best;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::vector<MultiPoly> out(degree_in(var) + 1);
  for (const auto& [e, c] : terms_) {
    Exponents rest(e);
    const unsigned p = at(e, var);
    if (var < rest.size()) rest[var] = 0;
    strip(rest);
    out[p].add_term(rest, c);
  }
  return out;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (perturb_rank::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (perturb_rank::is_zero(it->second)) terms_.erase(it);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
  return out;
}

MultiPoly MultiPoly::scaled(const Rational& factor) const {
  if (perturb_rank::is_zero(factor)) return {};
  MultiPoly out(*this);
  for (auto& [e, c] : out.terms_) c *= factor;
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1);
  MultiPoly base(*this);
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Rational MultiPoly::evaluate(const RationalVector& point) const {
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    if (e.size() > point.size()) throw std::out_of_range("MultiPoly::evaluate: point has too few coordinates");
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const Rational mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += perturb_rank::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += perturb_rank::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) throw ZeroDenominator("exact_divide: division by zero polynomial");
  MultiPoly quotient;
  MultiPoly rest(f);
  const Exponents& lead = g.leading_exponents();
  const Rational& lc = g.leading_coefficient();
  while (!rest.is_zero()) {
    const Exponents& e = rest.leading_exponents();
    if (!divides(lead, e)) throw std::domain_error("exact_divide: divisor does not divide dividend");
    const MultiPoly t = MultiPoly::monomial(subtract_exponents(e, lead), rest.leading_coefficient() / lc);
    quotient += t;
    rest -= t * g;
  }
  return quotient;
}

MultiPoly pseudo_remainder(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
  const unsigned dg = g.degree_in(var);
  const MultiPoly lg = g.coefficients_in(var).back();
  MultiPoly r(f);
  int steps = static_cast<int>(f.degree_in(var)) - static_cast<int>(dg) + 1;
  if (steps <= 0) return r;
  while (!r.is_zero()) {
    const unsigned dr = r.degree_in(var);
    if (dr < dg) break;
    const MultiPoly lr = r.coefficients_in(var).back();
    r = lg * r - lr * MultiPoly::variable(var, dr - dg) * g;
    --steps;
  }
  return steps > 0 ? lg.pow(static_cast<unsigned>(steps)) * r : r;
}

MultiPoly content_in(const MultiPoly& f, std::size_t var) {
  MultiPoly acc;
  for (const auto& c : f.coefficients_in(var)) {
    if (c.is_zero()) continue;
    acc = gcd(acc, c);
    if (acc.is_constant()) return MultiPoly(1);
  }
  return acc;
}

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return monic(g);
  if (g.is_zero()) return monic(f);
  if (f.is_constant() || g.is_constant()) return MultiPoly(1);
  if (f.is_monomial()) return monomial_gcd(f, g);
  if (g.is_monomial()) return monomial_gcd(g, f);
  if (monic(f) == monic(g)) return monic(f);

  // Common monomial factor first; what remains has no variable dividing it.
  const MultiPoly mf = monomial_gcd(MultiPoly::monomial(f.leading_exponents(), 1), f);
  const MultiPoly mg = monomial_gcd(MultiPoly::monomial(g.leading_exponents(), 1), g);
  if (!mf.is_constant() || !mg.is_constant())
    return monomial_gcd(mf, mg) * gcd(exact_divide(f, mf), exact_divide(g, mg));

  // A variable present on one side only leaves the gcd inside that side's content.
  // Otherwise eliminate the variable of lowest degree.
  const auto vars = static_cast<std::size_t>(std::max(f.highest_variable(), g.highest_variable())) + 1;
  std::size_t var = vars;
  unsigned best = 0;
  for (std::size_t i = 0; i < vars; ++i) {
    const unsigned df = f.degree_in(i), dg = g.degree_in(i);
    if (df == 0 && dg == 0) continue;
    if (df == 0) return gcd(f, content_in(g, i));
    if (dg == 0) return gcd(content_in(f, i), g);
    if (var == vars || std::max(df, dg) < best) {
      var = i;
      best = std::max(df, dg);
    }
  }

  const MultiPoly cf = content_in(f, var);
  const MultiPoly cg = content_in(g, var);
  MultiPoly a = exact_divide(f, cf);
  MultiPoly b = exact_divide(g, cg);
  a = a.scaled(1 / rational_content(a));
  b = b.scaled(1 / rational_content(b));
  const MultiPoly content = gcd(cf, cg);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  if (coprime_by_specialization(a, b, var)) return monic(content);

  // Subresultant remainder sequence in `var`; every division below is exact.
  MultiPoly g_lead(1), h(1);
  while (true) {
    const unsigned delta = a.degree_in(var) - b.degree_in(var);
    MultiPoly r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      b = MultiPoly(1);
      break;
    }
    a = std::move(b);
    b = exact_divide(r, g_lead * h.pow(delta));
    g_lead = a.coefficients_in(var).back();
    if (delta == 0) continue;
    h = exact_divide(g_lead.pow(delta), h.pow(delta - 1));
  }
  if (!b.is_constant()) b = primitive_part_in(b, var);
  return monic(content * b);
}

Rational rational_content(const MultiPoly& f) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& [e, c] : f.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  if (num_gcd == 0) return 1;
  Rational out(num_gcd, den_lcm);
  out.canonicalize();
  return out;
}

}  // namespace perturb_rank
