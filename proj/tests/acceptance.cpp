// Acceptance gate. One PASS/FAIL line per criterion; run with a criterion name
// to evaluate only that one. Exit status is nonzero if any evaluated criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

#include "perturb_rank/asymptotics.hpp"
#include "perturb_rank/cli.hpp"
#include "perturb_rank/io.hpp"
#include "perturb_rank/search.hpp"
#include "perturb_rank/symbolic.hpp"

using namespace perturb_rank;
namespace fs = std::filesystem;

namespace {

// Tolerances and sizes, fixed here and nowhere else.
constexpr double kSymbolicSecondsPerK = 10.0;
constexpr std::size_t kSmallCellsSamples = 400;  // per cell, split evenly over both families
constexpr std::size_t kSmallCellsMinNonDegenerate = 200;
constexpr std::uint64_t kSmallCellsSeed = 1;
constexpr std::size_t kExtendedCellsSamples = 50;
constexpr std::uint64_t kExtendedCellsSeed = 2;
constexpr double kW1EigenTolerance = 1e-10;
constexpr std::size_t kIdentityInstances = 500;
constexpr int kIdentityShifts = 100;
constexpr std::uint64_t kIdentitySeed = 3;
constexpr int kResidualPoints = 20;
constexpr double kRatioLow = 3.2, kRatioHigh = 4.8;
constexpr double kResidualRelative = 1e-5;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x, const char* spec = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

CampaignConfig campaign(std::size_t lo, std::size_t hi, std::size_t samples, std::uint64_t seed) {
  CampaignConfig cfg;
  cfg.n_min = cfg.k_min = lo;
  cfg.n_max = cfg.k_max = hi;
  cfg.samples_per_cell = samples;
  cfg.seed = seed;
  cfg.worker_count = workers();
  return cfg;
}

const SearchReport& small_cells_campaign() {
  static const SearchReport r = run_campaign(campaign(2, 5, kSmallCellsSamples, kSmallCellsSeed));
  return r;
}

const SearchReport& extended_cells_campaign() {
  static const SearchReport r = run_campaign(campaign(2, 8, kExtendedCellsSamples, kExtendedCellsSeed));
  return r;
}

std::string family_breakdown(const SearchReport& r, const std::function<std::size_t(const FamilyTally&)>& field) {
  std::string s;
  for (auto f : r.config.families) s += (s.empty() ? "" : ", ") + to_string(f) + " " + std::to_string(field(r.family_totals(f)));
  return s;
}

std::string violation_cells(const SearchReport& r) {
  std::string s;
  for (const auto& c : r.cells)
    for (const auto& f : c.violations)
      s += " (n=" + std::to_string(c.n) + ",K=" + std::to_string(c.K) + ",i=" + std::to_string(f.index) + "," +
           to_string(f.family) + ",rank " + std::to_string(f.report.rank_exact) + "<" +
           std::to_string(f.report.predicted_rank) + (f.report.dissipative ? "" : ",M not NSD") + ")";
  return s;
}

Outcome symbolic_closed_forms() {
  std::string detail;
  bool pass = true;
  for (std::size_t K = 2; K <= 5; ++K) {
    const auto t0 = std::chrono::steady_clock::now();
    const SymbolicStructure ss = build_M_parametric(K);
    const bool identity = verify_rank_one_identity(ss);
    bool eigen_ok = false;
    if (identity) {
      const auto [lambda, zeros] = eigen_closed_form_n2(ss);
      RatFunc trace, sum_sq;
      for (std::size_t i = 0; i < K; ++i) trace += ss.M_sym(i, i);
      for (const auto& d : ss.Delta_sym) sum_sq += d * d;
      eigen_ok = zeros == K - 1 && lambda == trace && lambda == -ss.c_sym * sum_sq;
    }
    const double secs = seconds_since(t0);
    const bool ok = identity && eigen_ok && secs < kSymbolicSecondsPerK;
    pass = pass && ok;
    detail += " K=" + std::to_string(K) + ":" + (ok ? "ok" : "FAILED") + "(" + fmt(secs, "%.2f") + "s)";
  }
  return {pass, "M = -c·ΔΔ^T identically, eigenvalues {0 x (K-1), -c·ΣΔ²};" + detail};
}

Outcome small_cells() {
  const SearchReport& r = small_cells_campaign();
  std::size_t min_nondegenerate = SIZE_MAX;
  for (const auto& c : r.cells) min_nondegenerate = std::min(min_nondegenerate, c.samples - c.degenerate);
  const bool enough = min_nondegenerate >= kSmallCellsMinNonDegenerate && r.cells.size() == 16;
  const bool pass = enough && r.total_violations() == 0;
  std::string detail = std::to_string(r.cells.size()) + " cells, " + std::to_string(r.total_samples()) +
                       " samples (min non-degenerate per cell " + std::to_string(min_nondegenerate) + "), seed " +
                       std::to_string(kSmallCellsSeed) + "; violations " + std::to_string(r.total_violations()) +
                       " [" + family_breakdown(r, [](const FamilyTally& t) { return t.violations; }) + "]" +
                       violation_cells(r) + "; " + fmt(r.runtime_seconds, "%.1f") + " s";
  return {pass, detail};
}

Outcome extended_cells() {
  const SearchReport& r = extended_cells_campaign();
  const fs::path dir = fs::temp_directory_path() / ("perturb_rank_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::size_t replayed = 0, mismatched = 0;
  for (const auto& c : r.cells)
    for (const auto& f : c.violations) {
      const fs::path file = dir / ("violation_" + std::to_string(c.n) + "_" + std::to_string(c.K) + "_" +
                                   std::to_string(f.index) + ".json");
      write_json(file, instance_to_json(f.instance));
      const Classification again = classify_instance(parse_instance(file));
      const bool same = again.verdict == Verdict::violation &&
                        structure_to_json(again.report).dump() == structure_to_json(f.report).dump();
      ++replayed;
      mismatched += !same;
    }
  fs::remove_all(dir);
  std::size_t under_quota = 0;
  for (const auto& c : r.cells) under_quota += c.samples < kExtendedCellsSamples;
  const bool pass = r.cells.size() == 49 && under_quota == 0 && mismatched == 0;
  return {pass, std::to_string(r.cells.size()) + " cells x " + std::to_string(kExtendedCellsSamples) + ", seed " +
                    std::to_string(kExtendedCellsSeed) + "; violations " + std::to_string(r.total_violations()) +
                    " (expected 0)" + violation_cells(r) + "; replayed from file " + std::to_string(replayed) +
                    ", mismatched " + std::to_string(mismatched) + "; " + fmt(r.runtime_seconds, "%.1f") + " s"};
}

Outcome w1() {
  const fs::path dir = fs::temp_directory_path() / ("perturb_rank_w1_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  SystemSpec s;
  s.n = 2;
  s.K = 2;
  s.label = "W1";
  s.A = RationalMatrix::from_rows({{-1, 1}, {1, -1}});
  s.D = {{1, 0}, {0, 1}};
  write_json(dir / "w1.json", instance_to_json(s));
  const std::string in = (dir / "w1.json").string(), out = (dir / "report.json").string();
  const char* argv[] = {"perturb-rank", "analyze", in.c_str(), "--out", out.c_str()};
  std::ostringstream sink, err;
  const int code = run_command(5, argv, sink, err);
  if (code != kExitOk) {
    fs::remove_all(dir);
    return {false, "analyze exited " + std::to_string(code) + ": " + err.str()};
  }
  std::ifstream rep_in(out);
  const json rep = json::parse(rep_in);
  fs::remove_all(dir);

  const bool v = rep["transfer"]["v"] == json::parse(R"(["1/2","1/2"])");
  const bool G = rep["transfer"]["G"] == json::parse(R"([["-1/4","1/4"],["1/4","-1/4"]])");
  const bool M = rep["transfer"]["M"] == json::parse(R"([["-1/8","1/8"],["1/8","-1/8"]])");
  const bool rank = rep["structure"]["rank_exact"] == 1;
  const auto eig = rep["structure"]["eigenvalues"].get<std::vector<double>>();
  const double e0 = eig.size() == 2 ? std::abs(eig[0] + 0.25) : INFINITY;
  const double e1 = eig.size() == 2 ? std::abs(eig[1]) : INFINITY;
  const bool eig_ok = e0 <= kW1EigenTolerance && e1 <= kW1EigenTolerance;
  return {v && G && M && rank && eig_ok,
          std::string("v ") + (v ? "exact" : "WRONG") + ", G " + (G ? "exact" : "WRONG") + ", M " +
              (M ? "exact" : "WRONG") + ", rank " + rep["structure"]["rank_exact"].dump() + ", eigenvalues " +
              rep["structure"]["eigenvalues"].dump() + " (errors " + fmt(e0) + ", " + fmt(e1) + ")"};
}

Outcome exact_identities() {
  std::mt19937_64 rng(kIdentitySeed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  std::size_t failures = 0, checks = 0;
  for (std::size_t i = 0; i < kIdentityInstances; ++i) {
    const std::size_t n = 2 + i % 7, K = 2 + (i / 7) % 7;
    const auto family = i % 2 ? GeneratorFamily::similarity_transformed : GeneratorFamily::markov_generator;
    const SystemSpec s = generate_instance({n, K, derive_seed(kIdentitySeed, n, K, i), family, 9});
    const SpectralData sd = validate_system(s);
    const TransferStructure ts = build_M(s, sd);
    auto check = [&](bool ok) {
      ++checks;
      failures += !ok;
    };
    check(is_zero_vector(s.A * sd.h1));
    check(is_zero_vector(left_multiply(sd.h1_star, s.A)));
    check(dot(sd.h1, sd.h1_star) == 1);
    for (const auto& psi : ts.Psi) check(is_zero(dot(psi * sd.h1, sd.h1_star)));
    check(s.A * ts.G == RationalMatrix::identity(n) - outer(sd.h1, sd.h1_star));
    check(ts.M == ts.M.transpose());
    for (int t = 0; t < kIdentityShifts; ++t) {
      RationalVector c(n);
      for (auto& e : c) {
        e = Rational(num(rng), den(rng));
        e.canonicalize();
      }
      check(transfer_matrix_with(ts, ts.G + outer(sd.h1, c)) == ts.M);
    }
  }
  return {failures == 0, std::to_string(kIdentityInstances) + " instances (n, K in 2..8, both families), " +
                             std::to_string(kIdentityShifts) + " shifts of G each; " + std::to_string(checks) +
                             " exact checks, " + std::to_string(failures) + " failures"};
}

Outcome dissipativity() {
  const SearchReport& a = small_cells_campaign();
  const SearchReport& b = extended_cells_campaign();
  const std::size_t total = a.total_samples() + b.total_samples();
  const std::size_t bad = a.total_non_dissipative() + b.total_non_dissipative();
  double worst = 0;
  for (const auto* r : {&a, &b})
    for (const auto& c : r->cells) worst = std::max(worst, c.max_relative_eigenvalue);
  auto per_family = [&](GeneratorFamily f) {
    return to_string(f) + " " + std::to_string(a.family_totals(f).non_dissipative + b.family_totals(f).non_dissipative) +
           "/" + std::to_string(a.family_totals(f).samples + b.family_totals(f).samples);
  };
  return {bad == 0, std::to_string(bad) + " of " + std::to_string(total) +
                        " instances have an eigenvalue above 1e-9·max|M| [" +
                        per_family(GeneratorFamily::markov_generator) + ", " +
                        per_family(GeneratorFamily::similarity_transformed) + "]; worst λmax/max|M| = " + fmt(worst)};
}

Outcome parabolic_limit() {
  SystemSpec s;
  s.n = 2;
  s.K = 2;
  s.A = RationalMatrix::from_rows({{-1, 1}, {1, -1}});
  s.D = {{1, 0}, {0, 1}};
  const RationalMatrix M = build_M(s, validate_system(s)).M;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> z(-2.0, 2.0), t(0.2, 3.0);
  double min_ratio = INFINITY, max_ratio = 0, worst_rel = 0;
  int bad = 0;
  std::string outliers;
  for (int i = 0; i < kResidualPoints; ++i) {
    ProfileQuery q;
    q.t = t(rng);
    const std::vector<double> zeta{z(rng), z(rng)};
    const double r1 = pde_residual(M, q, zeta, 1e-2);
    const double r2 = pde_residual(M, q, zeta, 5e-3);
    const double r3 = pde_residual(M, q, zeta, 1e-3);
    const double ratio = r1 / r2;
    const double rel = r3 / phi0_eval(M, q, zeta);
    min_ratio = std::min(min_ratio, ratio);
    max_ratio = std::max(max_ratio, ratio);
    worst_rel = std::max(worst_rel, rel);
    if (!(ratio >= kRatioLow && ratio <= kRatioHigh && rel <= kResidualRelative)) {
      ++bad;
      outliers += " (t=" + fmt(q.t) + ", ζ=(" + fmt(zeta[0]) + "," + fmt(zeta[1]) + "): residual " + fmt(r1) + ", " +
                  fmt(r2) + ", " + fmt(r3) + " at h=1e-2, 5e-3, 1e-3, ratio " + fmt(ratio) + ")";
    }
  }
  return {bad == 0, std::to_string(kResidualPoints) + " points; residual(1e-2)/residual(5e-3) in [" +
                        fmt(min_ratio, "%.3f") + ", " + fmt(max_ratio, "%.3f") + "], max residual(1e-3)/φ = " +
                        fmt(worst_rel) + "; " + std::to_string(bad) + " points out of bounds" + outliers};
}

Outcome rank_agreement() {
  const SearchReport& a = small_cells_campaign();
  const SearchReport& b = extended_cells_campaign();
  const std::size_t bad = a.total_numeric_rank_mismatches() + b.total_numeric_rank_mismatches();
  std::string examples;
  for (const auto* r : {&a, &b})
    for (const auto& c : r->cells)
      for (const auto& f : c.numeric_rank_findings) {
        double smallest = INFINITY;
        for (double e : f.report.eigenvalues)
          if (e != 0.0) smallest = std::min(smallest, std::abs(e));
        examples += " (n=" + std::to_string(c.n) + ",K=" + std::to_string(c.K) + "," + to_string(f.family) +
                    ": exact " + std::to_string(f.report.rank_exact) + ", numeric " +
                    std::to_string(f.report.numeric_rank) + ", min|λ|/max|M| " +
                    fmt(smallest / f.report.max_abs_entry) + ")";
      }
  auto per_family = [&](GeneratorFamily f) {
    return to_string(f) + " " +
           std::to_string(a.family_totals(f).numeric_rank_mismatches + b.family_totals(f).numeric_rank_mismatches);
  };
  return {bad == 0, std::to_string(bad) + " of " + std::to_string(a.total_samples() + b.total_samples()) +
                        " instances disagree [" + per_family(GeneratorFamily::markov_generator) + ", " +
                        per_family(GeneratorFamily::similarity_transformed) + "]" + examples};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"symbolic_closed_forms", symbolic_closed_forms},
      {"rank_law_small_cells", small_cells},
      {"rank_law_extended_cells", extended_cells},
      {"canonical_w1", w1},
      {"exact_identities", exact_identities},
      {"dissipativity", dissipativity},
      {"parabolic_limit", parabolic_limit},
      {"rank_agreement", rank_agreement},
  };
  std::optional<std::string> only;
  if (argc > 1) only = argv[1];
  bool all_pass = true, matched = false;
  for (const auto& [name, run] : criteria) {
    if (only && *only != name) continue;
    matched = true;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  if (!matched) {
    std::cerr << "unknown criterion " << *only << "\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
