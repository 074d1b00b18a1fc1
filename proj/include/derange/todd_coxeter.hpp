#pragma once

#include <vector>

#include "derange/group.hpp"
#include "derange/perm.hpp"
#include "derange/presentation.hpp"

namespace derange {

inline constexpr long kDefaultCosetTableCap = 100000;

enum class TableStatus {
    complete,   // every coset has a defined image under every generator
    collapsed,  // the table closed with a single coset
};

/// A closed coset table. Live cosets are renumbered by creation order, with
/// coset 0 the subgroup itself; rows[c][g] is the coset reached from c by
/// the presentation's generator g.
struct CosetTable {
    TableStatus status = TableStatus::complete;
    long coset_count = 0;
    std::vector<std::vector<int>> rows;
};

struct CosetEnumeration {
    CosetTable table;
    /// Action of each presentation generator on the cosets, aligned with
    /// the presentation's generator list.
    std::vector<Permutation> generator_images;
    /// The image of the presented group acting on the cosets.
    PermGroup group = PermGroup::trivial(1);
};

/// Enumerates the cosets of the subgroup generated by the given words (the
/// trivial subgroup when the list is empty) by relator scanning with
/// immediate coincidence handling. Throws cap_error once more than
/// coset_cap cosets have been defined, which is the expected outcome for a
/// presentation of infinite index.
///
/// The result is validated before returning: the action is transitive, the
/// image order divides evenly into the coset count for the trivial
/// subgroup, and when a full enumeration also fits under the cap the coset
/// count times the subgroup image order must equal the group order.
CosetEnumeration todd_coxeter(const Presentation& pr,
                              const std::vector<std::vector<int>>& subgroup_words = {},
                              long coset_cap = kDefaultCosetTableCap);

}  // namespace derange
