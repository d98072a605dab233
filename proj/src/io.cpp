#include "perturb_rank/io.hpp"

#include <fstream>
#include <sstream>

#include "perturb_rank/errors.hpp"

namespace perturb_rank {
namespace {

Rational rational_field(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a rational string like \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

RationalVector vector_field(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  RationalVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_field(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t count_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(std::string("field '") + key + "': expected a non-negative integer");
  return v.get<std::size_t>();
}

json finding_to_json(const Finding& f) {
  return json{{"index", f.index},
              {"family", to_string(f.family)},
              {"instance_seed", f.instance_seed},
              {"instance", instance_to_json(f.instance)},
              {"structure", structure_to_json(f.report)}};
}

json tally_to_json(const FamilyTally& t) {
  return json{{"family", to_string(t.family)},
              {"samples", t.samples},
              {"matches", t.matches},
              {"degenerate", t.degenerate},
              {"violations", t.violations},
              {"violations_in_dissipative", t.violations_in_dissipative},
              {"non_dissipative", t.non_dissipative},
              {"numeric_rank_mismatches", t.numeric_rank_mismatches}};
}

json ratfunc_json(const RatFunc& f, const std::vector<std::string>& names) {
  return json{{"text", f.to_string(names)}, {"tree", expression_tree(f, names)}};
}

}  // namespace

json to_json(const Rational& q) { return to_string(q); }

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json instance_to_json(const SystemSpec& s) {
  json j{{"format_version", kFormatVersion}, {"n", s.n}, {"K", s.K}, {"A", to_json(s.A)}};
  json d = json::array();
  for (const auto& diag : s.D) d.push_back(to_json(diag));
  j["D"] = d;
  if (s.H) j["H"] = to_json(*s.H);
  j["label"] = s.label;
  return j;
}

SystemSpec instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  if (j.contains("format_version")) {
    const auto& fv = j.at("format_version");
    if (!fv.is_number_integer() || fv.get<int>() != kFormatVersion)
      throw ParseError("unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
  }
  SystemSpec s;
  s.n = count_field(j, "n");
  s.K = count_field(j, "K");
  if (!j.contains("A")) throw ParseError("missing field 'A'");
  const json& a = j.at("A");
  if (!a.is_array()) throw ParseError("A: expected an array of rows");
  if (a.size() != s.n) throw DimensionError("A has " + std::to_string(a.size()) + " rows, expected n = " + std::to_string(s.n));
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    rows.push_back(vector_field(a[i], "A[" + std::to_string(i) + "]"));
    if (rows.back().size() != s.n)
      throw DimensionError("A[" + std::to_string(i) + "] has " + std::to_string(rows.back().size()) +
                           " entries, expected n = " + std::to_string(s.n));
  }
  s.A = RationalMatrix::from_rows(rows);
  if (!j.contains("D")) throw ParseError("missing field 'D'");
  const json& d = j.at("D");
  if (!d.is_array()) throw ParseError("D: expected an array of diagonals");
  for (std::size_t i = 0; i < d.size(); ++i) s.D.push_back(vector_field(d[i], "D[" + std::to_string(i) + "]"));
  if (j.contains("H") && !j.at("H").is_null()) s.H = vector_field(j.at("H"), "H");
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw ParseError("label: expected a string");
    s.label = j.at("label").get<std::string>();
  }
  check_well_formed(s);
  return s;
}

SystemSpec parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

json structure_to_json(const StructureReport& r) {
  json kernel = json::array();
  for (const auto& v : r.kernel_directions) kernel.push_back(to_json(v));
  return json{{"rank_exact", r.rank_exact},
              {"predicted_rank", r.predicted_rank},
              {"rank_matches_prediction", r.rank_matches_prediction},
              {"eigenvalues", r.eigenvalues},
              {"numeric_rank", r.numeric_rank},
              {"max_abs_entry", r.max_abs_entry},
              {"dissipative", r.dissipative},
              {"kernel_directions", kernel},
              {"degenerate", r.degenerate}};
}

json analysis_report(const SystemSpec& s, const TransferStructure& ts, const StructureReport& r,
                     const std::string& classification) {
  json psi = json::array();
  for (const auto& p : ts.Psi) psi.push_back(to_json(p));
  return json{{"format_version", kFormatVersion},
              {"kind", "analysis"},
              {"instance", instance_to_json(s)},
              {"spectral",
               {{"h1", to_json(ts.spectral.h1)},
                {"h1_star", to_json(ts.spectral.h1_star)},
                {"normalized", ts.spectral.normalized},
                {"stable", ts.spectral.stable}}},
              {"transfer", {{"v", to_json(ts.v)}, {"Psi", psi}, {"G", to_json(ts.G)}, {"M", to_json(ts.M)}}},
              {"structure", structure_to_json(r)},
              {"classification", classification}};
}

json symbolic_report(const SymbolicStructure& ss, bool identity_verified, const RatFunc& nonzero_eigenvalue,
                     std::size_t zero_multiplicity) {
  const auto& names = ss.vars.names;
  json m = json::array();
  for (std::size_t i = 0; i < ss.M_sym.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < ss.M_sym.cols(); ++j) row.push_back(ratfunc_json(ss.M_sym(i, j), names));
    m.push_back(row);
  }
  json delta = json::array();
  for (const auto& d : ss.Delta_sym) delta.push_back(ratfunc_json(d, names));
  json v = json::array();
  for (const auto& x : ss.v) v.push_back(ratfunc_json(x, names));
  json h1 = json::array(), h1s = json::array();
  for (const auto& x : ss.h1) h1.push_back(ratfunc_json(x, names));
  for (const auto& x : ss.h1_star) h1s.push_back(ratfunc_json(x, names));
  return json{{"format_version", kFormatVersion},
              {"kind", "symbolic"},
              {"n", 2},
              {"K", ss.M_sym.rows()},
              {"variables", names},
              {"h1", h1},
              {"h1_star", h1s},
              {"v", v},
              {"M", m},
              {"Delta", delta},
              {"c", ratfunc_json(ss.c_sym, names)},
              {"reference_P", ratfunc_json(ss.reference_P, names)},
              {"c_over_reference_P", ratfunc_json(ss.c_sym / ss.reference_P, names)},
              {"rank_one_identity", identity_verified},
              {"eigenvalues",
               {{"nonzero", ratfunc_json(nonzero_eigenvalue, names)}, {"zero_multiplicity", zero_multiplicity}}}};
}

json search_report_to_json(const SearchReport& report, bool include_runtime) {
  const auto& cfg = report.config;
  json families = json::array();
  for (auto f : cfg.families) families.push_back(to_string(f));
  json family_totals = json::array();
  for (auto f : cfg.families) family_totals.push_back(tally_to_json(report.family_totals(f)));
  json cells = json::array();
  for (const auto& c : report.cells) {
    json violations = json::array();
    for (const auto& f : c.violations) violations.push_back(finding_to_json(f));
    json findings = json::array();
    for (const auto& f : c.dissipativity_findings) findings.push_back(finding_to_json(f));
    json numeric = json::array();
    for (const auto& f : c.numeric_rank_findings) numeric.push_back(finding_to_json(f));
    json tallies = json::array();
    for (const auto& t : c.families) tallies.push_back(tally_to_json(t));
    cells.push_back({{"n", c.n},
                     {"K", c.K},
                     {"samples", c.samples},
                     {"matches", c.matches},
                     {"degenerate", c.degenerate},
                     {"violations", violations},
                     {"families", tallies},
                     {"rank_ceiling_breaches", c.rank_ceiling_breaches},
                     {"numeric_rank_mismatches", c.numeric_rank_mismatches},
                     {"non_dissipative", c.non_dissipative},
                     {"max_relative_eigenvalue", c.max_relative_eigenvalue},
                     {"dissipativity_findings", findings},
                     {"numeric_rank_findings", numeric}});
  }
  json j{{"format_version", kFormatVersion},
         {"kind", "search"},
         {"config",
          {{"n_min", cfg.n_min},
           {"n_max", cfg.n_max},
           {"k_min", cfg.k_min},
           {"k_max", cfg.k_max},
           {"samples_per_cell", cfg.samples_per_cell},
           {"seed", cfg.seed},
           {"families", families},
           {"entry_bound", cfg.entry_bound}}},
         {"cells", cells},
         {"totals",
          {{"samples", report.total_samples()},
           {"violations", report.total_violations()},
           {"non_dissipative", report.total_non_dissipative()},
           {"numeric_rank_mismatches", report.total_numeric_rank_mismatches()},
           {"rank_ceiling_breaches", report.total_rank_ceiling_breaches()}}},
         {"family_totals", family_totals},
         {"verdict", to_string(report.verdict)},
         {"note",
          "Exact rank checks on sampled instances. A clean run is evidence for the rank law on these cells, "
          "not a proof."}};
  if (include_runtime) j["runtime_seconds"] = report.runtime_seconds;
  return j;
}

}  // namespace perturb_rank
