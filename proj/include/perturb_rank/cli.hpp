#pragma once

#include <iosfwd>

namespace perturb_rank {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolations = 2;

/// Entry point of the perturb-rank command line:
///   analyze <instance> [--out report]
///   search --n-min --n-max --k-min --k-max --samples --seed [--families] [--workers] --out [--artifacts]
///   symbolic --k K [--out report]
///   phi0 --instance f --sigma S --t T --eps E --amplitude A --point x1,...,xK
///   residual --instance f --t T --zeta z1,...,zK --h H [--sigma S] [--amplitude A]
/// Returns 0 on success, 1 on errors, 2 when a search finds rank-law violations.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace perturb_rank
