#pragma once

#include <string>
#include <vector>

#include "derange/catalog.hpp"
#include "derange/derangement.hpp"

namespace derange {

/// Outcome of the conjecture harness for one catalog group.
struct HarnessResult {
    std::string name;
    bigint order;
    ConjectureReport report;
};

/// Runs verify_conjecture over every catalog entry whose group order is at
/// most max_order (for coset entries that is the image group), fanning the
/// tasks out to a pool of `jobs` workers. Results come back in catalog
/// order regardless of scheduling; the first worker exception, if any, is
/// rethrown in task order.
std::vector<HarnessResult> conjecture_harness(const std::vector<CatalogEntry>& entries,
                                              long max_order, int jobs, long lattice_cap);

/// Entry point of the command-line tool. Reports go to the output stream
/// (canonical JSON with --json, key: value text otherwise), diagnostics and
/// timing to the error stream. Returns the process exit status: 0 analysis
/// completed (whatever the verdict), 1 invalid input, 2 a cap was exceeded,
/// 3 an internal invariant failed.
int run_cli(int argc, const char* const* argv);

}  // namespace derange
