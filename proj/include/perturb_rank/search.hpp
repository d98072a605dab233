#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perturb_rank/asymptotics.hpp"
#include "perturb_rank/model.hpp"

namespace perturb_rank {

constexpr std::size_t kCampaignMinDimension = 2;
constexpr std::size_t kCampaignMaxDimension = 8;

struct CampaignConfig {
  std::size_t n_min = 2, n_max = 5;
  std::size_t k_min = 2, k_max = 5;
  std::size_t samples_per_cell = 200;
  std::uint64_t seed = 0;
  /// Instance i of a cell uses families[i % families.size()].
  std::vector<GeneratorFamily> families{GeneratorFamily::markov_generator, GeneratorFamily::similarity_transformed};
  std::size_t worker_count = 1;
  std::uint32_t entry_bound = 9;
};

/// Throws DimensionError on out-of-range values.
void check_campaign_config(const CampaignConfig& cfg);

enum class Verdict { match, degenerate, violation };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::match;
  StructureReport report;
};

/// Verdict for an already analysed instance.
Verdict classify_structure(const TransferStructure& ts, const StructureReport& report);

/// degenerate if some Psi_i h1 = 0; otherwise match iff rank M = min(n-1, K).
/// Requires s to pass validate_system.
Classification classify_instance(const SystemSpec& s);

/// A sampled instance singled out for the record.
struct Finding {
  std::size_t index = 0;
  GeneratorFamily family = GeneratorFamily::markov_generator;
  std::uint64_t instance_seed = 0;
  SystemSpec instance;
  StructureReport report;
};

struct FamilyTally {
  GeneratorFamily family = GeneratorFamily::markov_generator;
  std::size_t samples = 0;
  std::size_t matches = 0;
  std::size_t degenerate = 0;
  std::size_t violations = 0;
  std::size_t non_dissipative = 0;
  std::size_t numeric_rank_mismatches = 0;
  std::size_t violations_in_dissipative = 0;  // rank-law failures where M is negative semidefinite
};

struct CellResult {
  std::size_t n = 0, K = 0;
  std::size_t samples = 0;
  std::size_t matches = 0;
  std::size_t degenerate = 0;
  std::vector<Finding> violations;  // rank law failures, by index

  std::vector<FamilyTally> families;
  std::size_t rank_ceiling_breaches = 0;     // rank M > min(n-1, K)
  std::size_t numeric_rank_mismatches = 0;   // numeric rank != exact rank
  std::size_t non_dissipative = 0;           // eigenvalue above 1e-9 max|M|
  std::vector<Finding> dissipativity_findings;  // first few per cell, by index
  std::vector<Finding> numeric_rank_findings;   // first few per cell, by index
  double max_relative_eigenvalue = 0.0;  // max over instances of λ_max / max|M|
};

enum class CampaignVerdict { all_match, violations_found };

std::string to_string(CampaignVerdict v);

struct SearchReport {
  CampaignConfig config;
  std::vector<CellResult> cells;  // sorted by (n, K)
  double runtime_seconds = 0.0;
  CampaignVerdict verdict = CampaignVerdict::all_match;

  std::size_t total_samples() const;
  std::size_t total_violations() const;
  std::size_t total_non_dissipative() const;
  std::size_t total_numeric_rank_mismatches() const;
  std::size_t total_rank_ceiling_breaches() const;
  /// Sum of one family's tallies over all cells.
  FamilyTally family_totals(GeneratorFamily family) const;
};

/// Dissipativity and numeric-rank findings kept per cell as full instances;
/// the rest are counted.
constexpr std::size_t kFindingsPerCell = 3;

/// Runs every (n, K) cell. Per-instance seeds come from derive_seed(seed, n, K,
/// index), so the report does not depend on worker scheduling. Throws
/// GenerationFailed with cell context.
SearchReport run_campaign(const CampaignConfig& cfg);

}  // namespace perturb_rank
