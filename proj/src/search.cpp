#include "perturb_rank/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "perturb_rank/errors.hpp"

namespace perturb_rank {
namespace {

struct Sample {
  std::size_t n = 0, K = 0, index = 0;
  GeneratorFamily family = GeneratorFamily::markov_generator;
  std::uint64_t seed = 0;
  SystemSpec instance;
  Classification result;
};

Sample evaluate_sample(const CampaignConfig& cfg, std::size_t n, std::size_t K, std::size_t index) {
  Sample s;
  s.n = n;
  s.K = K;
  s.index = index;
  s.family = cfg.families[index % cfg.families.size()];
  s.seed = derive_seed(cfg.seed, n, K, index);
  GeneratorConfig gen{n, K, s.seed, s.family, cfg.entry_bound};
  try {
    s.instance = generate_instance(gen);
  } catch (const GenerationFailed& e) {
    throw GenerationFailed("cell n=" + std::to_string(n) + " K=" + std::to_string(K) + " index " +
                           std::to_string(index) + ": " + e.what());
  }
  s.instance.label += " index=" + std::to_string(index);
  s.result = classify_instance(s.instance);
  return s;
}

}  // namespace

void check_campaign_config(const CampaignConfig& cfg) {
  auto in_range = [](std::size_t x) { return x >= kCampaignMinDimension && x <= kCampaignMaxDimension; };
  if (!in_range(cfg.n_min) || !in_range(cfg.n_max) || !in_range(cfg.k_min) || !in_range(cfg.k_max))
    throw DimensionError("campaign ranges must lie within [2, 8]");
  if (cfg.n_min > cfg.n_max || cfg.k_min > cfg.k_max) throw DimensionError("campaign range has min > max");
  if (cfg.samples_per_cell < 1) throw DimensionError("samples per cell must be at least 1");
  if (cfg.families.empty()) throw DimensionError("at least one generator family is required");
  if (cfg.entry_bound < 1) throw DimensionError("entry bound must be at least 1");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::match:
      return "match";
    case Verdict::degenerate:
      return "degenerate";
    case Verdict::violation:
      return "violation";
  }
  return "unknown";
}

std::string to_string(CampaignVerdict v) {
  return v == CampaignVerdict::all_match ? "all_match" : "violations_found";
}

Verdict classify_structure(const TransferStructure& ts, const StructureReport& report) {
  for (const auto& psi : ts.Psi)
    if (is_zero_vector(psi * ts.spectral.h1)) return Verdict::degenerate;
  return report.rank_matches_prediction ? Verdict::match : Verdict::violation;
}

Classification classify_instance(const SystemSpec& s) {
  const SpectralData sd = validate_system(s);
  const TransferStructure ts = build_M(s, sd);
  Classification c;
  c.report = analyze_structure(ts, s);
  c.verdict = classify_structure(ts, c.report);
  return c;
}

std::size_t SearchReport::total_samples() const {
  std::size_t t = 0;
  for (const auto& c : cells) t += c.samples;
  return t;
}

std::size_t SearchReport::total_violations() const {
  std::size_t t = 0;
  for (const auto& c : cells) t += c.violations.size();
  return t;
}

std::size_t SearchReport::total_non_dissipative() const {
  std::size_t t = 0;
  for (const auto& c : cells) t += c.non_dissipative;
  return t;
}

std::size_t SearchReport::total_numeric_rank_mismatches() const {
  std::size_t t = 0;
  for (const auto& c : cells) t += c.numeric_rank_mismatches;
  return t;
}

std::size_t SearchReport::total_rank_ceiling_breaches() const {
  std::size_t t = 0;
  for (const auto& c : cells) t += c.rank_ceiling_breaches;
  return t;
}

FamilyTally SearchReport::family_totals(GeneratorFamily family) const {
  FamilyTally total{.family = family};
  for (const auto& c : cells)
    for (const auto& t : c.families) {
      if (t.family != family) continue;
      total.samples += t.samples;
      total.matches += t.matches;
      total.degenerate += t.degenerate;
      total.violations += t.violations;
      total.non_dissipative += t.non_dissipative;
      total.numeric_rank_mismatches += t.numeric_rank_mismatches;
      total.violations_in_dissipative += t.violations_in_dissipative;
    }
  return total;
}

SearchReport run_campaign(const CampaignConfig& cfg) {
  check_campaign_config(cfg);
  const auto start = std::chrono::steady_clock::now();

  struct Job {
    std::size_t n, K, index;
  };
  std::vector<Job> jobs;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n)
    for (std::size_t K = cfg.k_min; K <= cfg.k_max; ++K)
      for (std::size_t i = 0; i < cfg.samples_per_cell; ++i) jobs.push_back({n, K, i});

  std::vector<std::optional<Sample>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        results[j] = evaluate_sample(cfg, jobs[j].n, jobs[j].K, jobs[j].index);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.worker_count, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  SearchReport report;
  report.config = cfg;
  CellResult* cell = nullptr;
  for (auto& slot : results) {
    Sample& s = *slot;
    if (!cell || cell->n != s.n || cell->K != s.K) {
      report.cells.push_back(CellResult{});
      cell = &report.cells.back();
      cell->n = s.n;
      cell->K = s.K;
      for (auto f : cfg.families)
        if (std::none_of(cell->families.begin(), cell->families.end(),
                         [&](const FamilyTally& t) { return t.family == f; }))
          cell->families.push_back(FamilyTally{.family = f});
    }
    const StructureReport& r = s.result.report;
    ++cell->samples;
    auto tally = std::find_if(cell->families.begin(), cell->families.end(),
                              [&](const FamilyTally& t) { return t.family == s.family; });
    ++tally->samples;

    switch (s.result.verdict) {
      case Verdict::match:
        ++cell->matches;
        ++tally->matches;
        break;
      case Verdict::degenerate:
        ++cell->degenerate;
        ++tally->degenerate;
        break;
      case Verdict::violation:
        cell->violations.push_back(Finding{s.index, s.family, s.seed, s.instance, r});
        ++tally->violations;
        if (r.dissipative) ++tally->violations_in_dissipative;
        break;
    }
    if (r.rank_exact > r.predicted_rank) ++cell->rank_ceiling_breaches;
    if (r.numeric_rank != r.rank_exact) {
      ++cell->numeric_rank_mismatches;
      ++tally->numeric_rank_mismatches;
      if (cell->numeric_rank_findings.size() < kFindingsPerCell)
        cell->numeric_rank_findings.push_back(Finding{s.index, s.family, s.seed, s.instance, r});
    }
    if (r.max_abs_entry > 0.0)
      cell->max_relative_eigenvalue = std::max(cell->max_relative_eigenvalue, r.eigenvalues.back() / r.max_abs_entry);
    if (!r.dissipative) {
      ++cell->non_dissipative;
      ++tally->non_dissipative;
      if (cell->dissipativity_findings.size() < kFindingsPerCell)
        cell->dissipativity_findings.push_back(Finding{s.index, s.family, s.seed, s.instance, r});
    }
  }

  report.verdict = report.total_violations() == 0 ? CampaignVerdict::all_match : CampaignVerdict::violations_found;
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace perturb_rank
