#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perturb_rank/exact_linalg.hpp"

namespace perturb_rank {

/// One problem instance: n coupled equations in K spatial variables with
/// diagonal transport matrices D_i and interaction matrix A.
struct SystemSpec {
  std::size_t n = 0;
  std::size_t K = 0;
  std::vector<RationalVector> D;  // K diagonals, each of length n
  RationalMatrix A;
  std::string label;
  /// Direction of the initial splash; recorded and echoed, never used in computation.
  std::optional<RationalVector> H;

  RationalMatrix transport(std::size_t axis) const { return RationalMatrix::diagonal(D.at(axis)); }
};

/// Throws DimensionError unless n >= 2, K >= 1 and all shapes agree.
void check_well_formed(const SystemSpec& s);

struct SpectralData {
  RationalVector h1;       // right kernel of A
  RationalVector h1_star;  // left kernel of A
  bool normalized = false;
  bool stable = false;
};

enum class GeneratorFamily { markov_generator, similarity_transformed };

std::string to_string(GeneratorFamily family);
GeneratorFamily parse_family(const std::string& name);

struct GeneratorConfig {
  std::size_t n = 2;
  std::size_t K = 2;
  std::uint64_t seed = 0;
  GeneratorFamily family = GeneratorFamily::markov_generator;
  std::uint32_t entry_bound = 9;
};

/// Checks that zero is a simple eigenvalue of A and the remaining spectrum is
/// Hurwitz-stable. Returns the kernel pair normalized to (h1, h1_star) = 1.
/// Throws KernelDimensionError, NotStable, NonNormalizable.
SpectralData validate_system(const SystemSpec& s);

/// (h1, h1_star) with h1 in first-nonzero-entry = 1 form and h1_star scaled
/// so that (h1, h1_star) = 1.
std::pair<RationalVector, RationalVector> null_pair_normalized(const RationalMatrix& A);

struct GeneratedInstance {
  SystemSpec spec;
  RationalMatrix base;       // Markov generator A0
  RationalMatrix transform;  // T with A = T A0 T^-1 (identity for markov_generator)
};

/// Deterministic random instance. Retries internally; throws GenerationFailed
/// after a bounded number of rejected draws.
SystemSpec generate_instance(const GeneratorConfig& cfg);

/// Same draw as generate_instance, also exposing A0 and T.
GeneratedInstance generate_instance_detailed(const GeneratorConfig& cfg);

/// Mixes (seed, n, K, index) into an independent per-instance seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t K, std::uint64_t index);

}  // namespace perturb_rank
