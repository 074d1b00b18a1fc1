#pragma once

#include <string>
#include <vector>

#include "derange/group.hpp"

namespace derange {

inline constexpr long kDefaultLatticeCap = 400;

/// One subgroup of a fixed parent group. `element_key` lists the positions of
/// the subgroup's elements in the parent's canonical enumeration, sorted
/// ascending; within one lattice it identifies the subgroup exactly.
struct SubgroupRecord {
    PermGroup group;
    bigint order;
    std::vector<int> element_key;
    bool is_maximal = false;
    int conjugacy_class_id = -1;
};

/// Every subgroup of g, each appearing exactly once, sorted by order and then
/// by element key. The list includes the trivial subgroup and g itself.
/// Construction closes the set of cyclic subgroups under pairwise joins with
/// cyclic subgroups; this reaches every subgroup because each one is the join
/// of the cyclic subgroups it contains. Maximality flags and conjugacy class
/// ids are filled in before returning. Throws cap_error when |g| exceeds the
/// cap.
std::vector<SubgroupRecord> all_subgroups(const PermGroup& g, long lattice_cap = kDefaultLatticeCap);

/// The proper subgroups covered only by the whole group in the inclusion
/// order. Taking the completed lattice avoids recomputing it.
std::vector<SubgroupRecord> maximal_subgroups(const std::vector<SubgroupRecord>& lattice);
std::vector<SubgroupRecord> maximal_subgroups(const PermGroup& g, long lattice_cap = kDefaultLatticeCap);

/// Record indices grouped by conjugacy in the parent, indexed by class id;
/// indices within a class ascend.
std::vector<std::vector<int>> subgroup_conjugacy_classes(const std::vector<SubgroupRecord>& lattice);

/// JSON dump: one object per record carrying the subgroup's order (decimal
/// string), generator cycles, maximality flag and conjugacy class id.
std::string lattice_to_json(const std::vector<SubgroupRecord>& lattice);

}  // namespace derange
