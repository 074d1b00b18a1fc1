#pragma once

#include <array>
#include <string>
#include <vector>

namespace derange {

/// Root coordinates in R^8 are half-integers, stored exactly as doubled
/// integers: the array holds 2x the real coordinate. All roots have squared
/// length 2, so the stored arrays satisfy sum of squares = 8.
using RootVec = std::array<int, 8>;

struct RootSystem {
    std::string type;  // "E6", "E7" or "E8"
    int rank = 0;
    std::vector<RootVec> simple;  // rank entries
    std::vector<RootVec> roots;   // full system, lexicographically sorted
    /// Expansion of roots[i] over the simple roots; always integral.
    std::vector<std::vector<long>> coefficients;
};

/// Generates the root system by closing the simple roots under the simple
/// reflections, then expands every root over the simple basis by exact
/// rational elimination. The two smaller systems live inside the E8
/// coordinates, spanned by the first 6 or 7 simple roots.
RootSystem build_root_system(const std::string& type);

/// Exhaustive filter for roots whose last simple-root coefficient is
/// positive while the second-to-last vanishes. The expected outcome is that
/// the last simple root is the only such root; the report also records which
/// simple root the match actually equals, so a reader can compare claims
/// about the filter against the computed set.
struct TailFilterReport {
    int rank = 0;
    std::vector<RootVec> matches;
    std::vector<std::vector<long>> match_coefficients;
    bool equals_last_simple = false;  // match set == { simple[rank-1] }
    /// 1-based index of the simple root equal to the unique match; 0 when
    /// the match is not unique or not a simple root.
    int matched_simple_index = 0;
};

TailFilterReport filter_tail_roots(const RootSystem& rs);

}  // namespace derange
