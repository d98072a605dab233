#include "perturb_rank/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "perturb_rank/errors.hpp"
#include "perturb_rank/io.hpp"

namespace perturb_rank {
namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string fmt(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

std::string fmt(const RationalMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

std::vector<double> parse_point(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(what + ": malformed number '" + item + "'");
    }
  }
  if (out.size() != expected)
    throw DimensionError(what + ": expected " + std::to_string(expected) + " comma-separated values, got " +
                         std::to_string(out.size()));
  return out;
}

struct AnalyzeArgs {
  std::string instance;
  std::string out;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const SystemSpec s = parse_instance(args.instance);
  const SpectralData sd = validate_system(s);
  const TransferStructure ts = build_M(s, sd);
  const StructureReport r = analyze_structure(ts, s);
  const Verdict verdict = classify_structure(ts, r);

  out << "instance: " << (s.label.empty() ? args.instance : s.label) << " (n=" << s.n << ", K=" << s.K << ")\n";
  out << "h1 = " << fmt(sd.h1) << "   h1* = " << fmt(sd.h1_star) << "   (h1, h1*) = 1   stable: yes\n";
  out << "v = " << fmt(ts.v) << "\n";
  out << "G = " << fmt(ts.G) << "\n";
  out << "M = " << fmt(ts.M) << "\n";
  out << "rank M = " << r.rank_exact << " (predicted min(n-1, K) = " << r.predicted_rank << ")\n";
  out << "eigenvalues of M: " << fmt(r.eigenvalues) << (r.dissipative ? "" : "   [positive eigenvalue]") << "\n";
  out << "kernel directions of M:";
  if (r.kernel_directions.empty()) out << " none";
  for (const auto& k : r.kernel_directions) out << " " << fmt(k);
  out << "\nclassification: " << to_string(verdict) << (r.degenerate ? " (degenerate)" : "") << "\n";

  if (!args.out.empty()) write_json(args.out, analysis_report(s, ts, r, to_string(verdict)));
  return kExitOk;
}

struct SearchArgs {
  CampaignConfig cfg;
  std::string families;
  std::string out;
  std::string artifacts;
};

int run_search(SearchArgs args, std::ostream& out) {
  args.cfg.families.clear();
  std::stringstream ss(args.families);
  std::string name;
  while (std::getline(ss, name, ','))
    if (!name.empty()) args.cfg.families.push_back(parse_family(name));

  const SearchReport report = run_campaign(args.cfg);
  write_json(args.out, search_report_to_json(report));

  const std::filesystem::path artifacts =
      args.artifacts.empty() ? std::filesystem::path(args.out + ".artifacts") : std::filesystem::path(args.artifacts);
  std::size_t written = 0;
  for (const auto& cell : report.cells) {
    const std::string tag = "n" + std::to_string(cell.n) + "_K" + std::to_string(cell.K);
    for (const auto& f : cell.violations) {
      write_json(artifacts / ("violation_" + tag + "_i" + std::to_string(f.index) + ".json"), instance_to_json(f.instance));
      ++written;
    }
    for (const auto& f : cell.dissipativity_findings) {
      write_json(artifacts / ("nondissipative_" + tag + "_i" + std::to_string(f.index) + ".json"),
                 instance_to_json(f.instance));
      ++written;
    }
  }

  out << "cells: " << report.cells.size() << "   samples: " << report.total_samples()
      << "   runtime: " << fmt(report.runtime_seconds) << " s\n";
  for (const auto& c : report.cells) {
    out << "  n=" << c.n << " K=" << c.K << ": " << c.matches << " match, " << c.degenerate << " degenerate, "
        << c.violations.size() << " violations";
    if (c.non_dissipative) out << ", " << c.non_dissipative << " with a positive eigenvalue";
    if (c.numeric_rank_mismatches) out << ", " << c.numeric_rank_mismatches << " numeric-rank mismatches";
    out << "\n";
  }
  for (auto f : report.config.families) {
    const FamilyTally t = report.family_totals(f);
    out << "  " << to_string(f) << ": " << t.samples << " samples, " << t.violations << " violations ("
        << t.violations_in_dissipative << " with M negative semidefinite), " << t.non_dissipative
        << " with a positive eigenvalue, " << t.numeric_rank_mismatches << " numeric-rank mismatches\n";
  }
  out << "verdict: " << to_string(report.verdict) << "\n";
  if (report.total_non_dissipative())
    out << "instances with a positive eigenvalue of M: " << report.total_non_dissipative() << "\n";
  if (written) out << "artifacts: " << written << " instance files in " << artifacts.string() << "\n";
  out << "note: exact checks on sampled instances are evidence for the rank law, not a proof\n";
  return report.verdict == CampaignVerdict::all_match ? kExitOk : kExitViolations;
}

int run_symbolic(std::size_t K, const std::string& out_path, std::ostream& out) {
  const SymbolicStructure ss = build_M_parametric(K);
  const bool identity = verify_rank_one_identity(ss);
  const auto& names = ss.vars.names;
  out << "two-equation family, K=" << K << "\n";
  out << "  A = [[-a, b], [k*a, -k*b]],  D_i = diag(d{i}_1, d{i}_2),  Δ_i = d{i}_1 - d{i}_2\n";
  out << "  c = " << ss.c_sym.to_string(names) << "\n";
  out << "  reference P = " << ss.reference_P.to_string(names) << ",  c/P = " << (ss.c_sym / ss.reference_P).to_string(names)
      << "\n";
  out << "  M = -c·ΔΔ^T identically: " << (identity ? "verified" : "FAILED") << "\n";
  if (!identity) {
    out << "  M[0][0] = " << ss.M_sym(0, 0).to_string(names) << "\n";
    return kExitError;
  }
  const auto [lambda, zero_mult] = eigen_closed_form_n2(ss);
  out << "  eigenvalues: 0 (multiplicity " << zero_mult << "), " << lambda.to_string(names) << " = -c·(";
  for (std::size_t i = 0; i < K; ++i) out << (i ? " + " : "") << "Δ_" << i + 1 << "^2";
  out << ")\n";
  if (!out_path.empty()) write_json(out_path, symbolic_report(ss, identity, lambda, zero_mult));
  return kExitOk;
}

struct ProfileArgs {
  std::string instance;
  double sigma = 1.0, t = 1.0, eps = 1.0, amplitude = 1.0, h = 1e-3;
  std::string point;
};

int run_phi0(const ProfileArgs& args, std::ostream& out) {
  const SystemSpec s = parse_instance(args.instance);
  const SpectralData sd = validate_system(s);
  const TransferStructure ts = build_M(s, sd);
  ProfileQuery q{args.eps, args.t, parse_point(args.point, s.K, "--point"), args.sigma, args.amplitude};
  const auto u = leading_term_eval(s, sd, ts, q);
  std::vector<double> zeta(s.K);
  for (std::size_t i = 0; i < s.K; ++i) zeta[i] = (q.x[i] - ts.v[i].get_d() * q.t) / q.epsilon;
  out << "zeta = " << fmt(zeta) << "\n";
  out << "phi0 = " << fmt(phi0_eval(ts.M, q, zeta)) << "\n";
  out << "U ≈ phi0·h1 = " << fmt(u) << "\n";
  return kExitOk;
}

int run_residual(const ProfileArgs& args, std::ostream& out) {
  const SystemSpec s = parse_instance(args.instance);
  const SpectralData sd = validate_system(s);
  const TransferStructure ts = build_M(s, sd);
  ProfileQuery q{1.0, args.t, {}, args.sigma, args.amplitude};
  const auto zeta = parse_point(args.point, s.K, "--zeta");
  out << "phi0 = " << fmt(phi0_eval(ts.M, q, zeta)) << "\n";
  out << "residual = " << fmt(pde_residual(ts.M, q, zeta, args.h)) << "\n";
  return kExitOk;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank and spectrum of the diffusion matrix in the leading-order asymptotics of singularly "
               "perturbed hyperbolic transfer systems"};
  app.name("perturb-rank");
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Validate an instance and report G, M, rank and spectrum");
  analyze_cmd->add_option("instance", analyze.instance, "Instance file")->required();
  analyze_cmd->add_option("--out", analyze.out, "Write the JSON report here");

  SearchArgs search;
  search.cfg.worker_count = std::max(1u, std::thread::hardware_concurrency());
  search.families = "markov_generator,similarity_transformed";
  auto* search_cmd = app.add_subcommand("search", "Randomized campaign over (n, K) cells");
  search_cmd->add_option("--n-min", search.cfg.n_min)->required();
  search_cmd->add_option("--n-max", search.cfg.n_max)->required();
  search_cmd->add_option("--k-min", search.cfg.k_min)->required();
  search_cmd->add_option("--k-max", search.cfg.k_max)->required();
  search_cmd->add_option("--samples", search.cfg.samples_per_cell, "Instances per cell")->required();
  search_cmd->add_option("--seed", search.cfg.seed, "Campaign seed")->required();
  search_cmd->add_option("--families", search.families, "Comma-separated generator families")->capture_default_str();
  search_cmd->add_option("--workers", search.cfg.worker_count, "Worker threads")->envname("PERTURB_RANK_WORKERS");
  search_cmd->add_option("--entry-bound", search.cfg.entry_bound, "Numerator/denominator magnitude cap")->capture_default_str();
  search_cmd->add_option("--out", search.out, "Write the JSON report here")->required();
  search_cmd->add_option("--artifacts", search.artifacts, "Directory for counterexample instance files");

  std::size_t sym_k = 2;
  std::string sym_out;
  auto* sym_cmd = app.add_subcommand("symbolic", "Parametric two-equation family with rational-function entries");
  sym_cmd->add_option("--k", sym_k, "Number of spatial variables (2..6)")->required();
  sym_cmd->add_option("--out", sym_out, "Write the JSON report here");

  ProfileArgs phi;
  auto* phi_cmd = app.add_subcommand("phi0", "Leading term φ0(ζ, t)·h1 at a physical point");
  phi_cmd->add_option("--instance", phi.instance)->required();
  phi_cmd->add_option("--sigma", phi.sigma, "Initial Gaussian width in ζ")->required();
  phi_cmd->add_option("--t", phi.t)->required();
  phi_cmd->add_option("--eps", phi.eps)->required();
  phi_cmd->add_option("--amplitude", phi.amplitude)->required();
  phi_cmd->add_option("--point", phi.point, "x1,...,xK")->required();

  ProfileArgs res;
  auto* res_cmd = app.add_subcommand("residual", "Finite-difference residual of the limit parabolic equation");
  res_cmd->set_help_flag("--help", "Print this help message and exit");
  res_cmd->add_option("--instance", res.instance)->required();
  res_cmd->add_option("--t", res.t)->required();
  res_cmd->add_option("--zeta", res.point, "z1,...,zK")->required();
  res_cmd->add_option("--h", res.h, "Difference step")->required();
  res_cmd->add_option("--sigma", res.sigma, "Initial Gaussian width in ζ")->capture_default_str();
  res_cmd->add_option("--amplitude", res.amplitude, "Initial amplitude")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "perturb-rank: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze, out);
    if (*search_cmd) return run_search(search, out);
    if (*sym_cmd) return run_symbolic(sym_k, sym_out, out);
    if (*phi_cmd) return run_phi0(phi, out);
    if (*res_cmd) return run_residual(res, out);
  } catch (const Error& e) {
    err << "perturb-rank: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "perturb-rank: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace perturb_rank
