#pragma once

#include <map>
#include <string>
#include <vector>

#include "diffalg/scalar.hpp"

namespace diffalg {

struct GridSummary {
  long long total = 0;      // grid points visited
  long long skipped = 0;    // pruned as non-minimal orbit representatives
  long long pbw_pass = 0;   // points passing the diamond check
  std::map<std::string, long long> per_family;   // family name -> count
  std::map<std::string, long long> per_refined;  // refined type name -> count
  long long inconsistencies = 0;                 // classifier failures on
                                                 // diamond-passing points
  std::vector<std::string> inconsistency_details;
};

// Exhaustive sweep over all three-generator presentations with upper
// coefficients from `uppers`, lower coefficients from `lowers` and x values
// from `xvals` (3 slots each, full product). Every diamond-passing point is
// classified and structure-checked; any failure counts as an inconsistency.
// `threads` > 1 splits the grid with a deterministic ordered merge.
// `prune_symmetry` skips points that are not the lexicographically smallest
// member of their index-relabeling orbit (only relabelings that keep the
// point inside the contract's shape are considered).
GridSummary grid_search(const std::vector<Scalar>& uppers,
                        const std::vector<Scalar>& lowers,
                        const std::vector<Scalar>& xvals, int threads = 1,
                        bool prune_symmetry = false);

// Line-oriented "key: value" rendering with stable ordering.
std::string format_grid_summary(const GridSummary& s);

}  // namespace diffalg
