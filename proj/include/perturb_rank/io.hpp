#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "perturb_rank/asymptotics.hpp"
#include "perturb_rank/model.hpp"
#include "perturb_rank/search.hpp"
#include "perturb_rank/symbolic.hpp"

namespace perturb_rank {

constexpr int kFormatVersion = 1;

using nlohmann::json;

json to_json(const Rational& q);
json to_json(const RationalVector& v);
json to_json(const RationalMatrix& m);

/// Instance file: {format_version, n, K, A, D, H?, label}; every number a "p/q" string.
json instance_to_json(const SystemSpec& s);

/// Throws ParseError (naming the offending field) or DimensionError.
SystemSpec instance_from_json(const json& j);

/// Reads and validates an instance file. Throws IoError, ParseError, DimensionError.
SystemSpec parse_instance(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const json& j);

json structure_to_json(const StructureReport& r);

/// Full analysis report: instance echo, spectral, transfer, structure, classification.
json analysis_report(const SystemSpec& s, const TransferStructure& ts, const StructureReport& r,
                     const std::string& classification);

json symbolic_report(const SymbolicStructure& ss, bool identity_verified, const RatFunc& nonzero_eigenvalue,
                     std::size_t zero_multiplicity);

/// Campaign report. `include_runtime` false drops the wall-clock field.
json search_report_to_json(const SearchReport& report, bool include_runtime = true);

}  // namespace perturb_rank
