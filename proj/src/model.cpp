#include "perturb_rank/model.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "perturb_rank/errors.hpp"

namespace perturb_rank {
namespace {

constexpr int kMaxAttempts = 1000;

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint32_t bound) : rng_(seed), bound_(static_cast<long>(bound)) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational positive() { return Rational(integer(1, bound_), integer(1, bound_)); }

  Rational signed_value() { return Rational(integer(-bound_, bound_), integer(1, bound_)); }

 private:
  std::mt19937_64 rng_;
  long bound_;
};

Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

// Positive off-diagonal entries, columns summing to zero.
RationalMatrix markov_generator(Sampler& sampler, std::size_t n) {
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a(i, j) = canonical(sampler.positive());
  for (std::size_t j = 0; j < n; ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) sum += a(i, j);
    a(j, j) = -sum;
  }
  return a;
}

RationalVector distinct_diagonal(Sampler& sampler, std::size_t n) {
  std::set<Rational> seen;
  RationalVector d;
  while (d.size() < n) {
    Rational x = canonical(sampler.signed_value());
    if (seen.insert(x).second) d.push_back(x);
  }
  return d;
}

bool generic_position(const SystemSpec& s, const SpectralData& sd) {
  for (std::size_t j = 0; j < s.n; ++j)
    if (is_zero(sd.h1[j]) || is_zero(sd.h1_star[j])) return false;
  for (const auto& d : s.D) {
    Rational v = 0;
    for (std::size_t j = 0; j < s.n; ++j) v += d[j] * sd.h1[j] * sd.h1_star[j];
    bool annihilated = true;
    for (std::size_t j = 0; j < s.n && annihilated; ++j) annihilated = is_zero((d[j] - v) * sd.h1[j]);
    if (annihilated) return false;
  }
  return true;
}

}  // namespace

void check_well_formed(const SystemSpec& s) {
  if (s.n < 2) throw DimensionError("n must be at least 2");
  if (s.K < 1) throw DimensionError("K must be at least 1");
  if (s.A.rows() != s.n || s.A.cols() != s.n)
    throw DimensionError("A must be " + std::to_string(s.n) + "x" + std::to_string(s.n));
  if (s.D.size() != s.K) throw DimensionError("D must contain K = " + std::to_string(s.K) + " diagonals");
  for (std::size_t i = 0; i < s.K; ++i)
    if (s.D[i].size() != s.n)
      throw DimensionError("D[" + std::to_string(i) + "] must have n = " + std::to_string(s.n) + " entries");
  if (s.H && s.H->size() != s.n) throw DimensionError("H must have n entries");
}

std::string to_string(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::markov_generator:
      return "markov_generator";
    case GeneratorFamily::similarity_transformed:
      return "similarity_transformed";
  }
  return "unknown";
}

GeneratorFamily parse_family(const std::string& name) {
  if (name == "markov_generator") return GeneratorFamily::markov_generator;
  if (name == "similarity_transformed") return GeneratorFamily::similarity_transformed;
  throw ParseError("unknown generator family '" + name + "'");
}

std::pair<RationalVector, RationalVector> null_pair_normalized(const RationalMatrix& A) {
  if (!A.is_square()) throw DimensionError("interaction matrix must be square");
  auto right = nullspace(A, KernelSide::right);
  auto left = nullspace(A, KernelSide::left);
  if (right.size() != 1 || left.size() != 1)
    throw KernelDimensionError("zero eigenvalue is not simple: kernel dimension " + std::to_string(right.size()));
  const Rational pairing = dot(right.front(), left.front());
  if (is_zero(pairing)) throw NonNormalizable("(h1, h1*) = 0: zero eigenvalue is defective");
  RationalVector h1 = std::move(right.front());
  RationalVector h1_star = std::move(left.front());
  for (auto& x : h1_star) x /= pairing;
  return {std::move(h1), std::move(h1_star)};
}

SpectralData validate_system(const SystemSpec& s) {
  check_well_formed(s);
  const auto right = nullspace(s.A, KernelSide::right);
  if (right.size() != 1)
    throw KernelDimensionError("zero eigenvalue is not simple: kernel dimension " + std::to_string(right.size()));
  const Polynomial quotient = charpoly_exact(s.A).divide_by_variable();
  if (is_zero(quotient.coefficient(0)))
    throw KernelDimensionError("zero eigenvalue is not simple: λ^2 divides the characteristic polynomial");
  auto [h1, h1_star] = null_pair_normalized(s.A);
  if (!hurwitz_stable(quotient))
    throw NotStable("nonzero eigenvalues of A are not all in the open left half-plane");
  return SpectralData{std::move(h1), std::move(h1_star), true, true};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t K, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  h = mix(h ^ n);
  h = mix(h ^ (K << 16));
  h = mix(h ^ (index << 32) ^ (index >> 32));
  return h;
}

GeneratedInstance generate_instance_detailed(const GeneratorConfig& cfg) {
  if (cfg.n < 2 || cfg.K < 2 || cfg.entry_bound < 1)
    throw DimensionError("generator config requires n >= 2, K >= 2, entry_bound >= 1");
  Sampler sampler(cfg.seed, cfg.entry_bound);
  const std::size_t n = cfg.n;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    GeneratedInstance out;
    out.base = markov_generator(sampler, n);
    out.transform = RationalMatrix::identity(n);
    out.spec.A = out.base;
    if (cfg.family == GeneratorFamily::similarity_transformed) {
      RationalMatrix t(n, n);
      for (int tries = 0; tries < kMaxAttempts; ++tries) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) t(i, j) = canonical(sampler.signed_value());
        if (!is_zero(determinant(t))) break;
      }
      if (is_zero(determinant(t))) continue;
      out.transform = t;
      out.spec.A = t * out.base * inverse(t);
    }

    out.spec.n = n;
    out.spec.K = cfg.K;
    std::set<RationalVector> seen;
    while (out.spec.D.size() < cfg.K) {
      auto d = distinct_diagonal(sampler, n);
      if (seen.insert(d).second) out.spec.D.push_back(std::move(d));
    }
    out.spec.label = to_string(cfg.family) + " n=" + std::to_string(n) + " K=" + std::to_string(cfg.K) +
                     " seed=" + std::to_string(cfg.seed);

    try {
      const SpectralData sd = validate_system(out.spec);
      if (!generic_position(out.spec, sd)) continue;
    } catch (const Error&) {
      continue;
    }
    return out;
  }
  throw GenerationFailed("no valid instance after " + std::to_string(kMaxAttempts) + " attempts (" +
                         to_string(cfg.family) + ", n=" + std::to_string(cfg.n) + ", K=" + std::to_string(cfg.K) +
                         ")");
}

SystemSpec generate_instance(const GeneratorConfig& cfg) { return generate_instance_detailed(cfg).spec; }

}  // namespace perturb_rank
