#pragma once

#include <vector>

#include "derange/group.hpp"
#include "derange/perm.hpp"

namespace derange {

inline constexpr long kDefaultCosetCap = 1000000;

/// Orbit of a point, ascending.
std::vector<int> orbit_of(const PermGroup& g, int point);

/// All orbits, ordered by smallest member, each ascending. Partitions the
/// whole domain, including fixed points (as singletons).
std::vector<std::vector<int>> orbit_partition(const PermGroup& g);

/// Result of a primitivity test. When imprimitive, `block` is a nontrivial
/// proper block of the action (the minimal block joining point 0 to the
/// smallest point that yields one).
struct PrimitivityReport {
    bool primitive = false;
    std::vector<int> block;
};

/// Minimal block containing {a, b} for a transitive group, ascending.
std::vector<int> minimal_block(const PermGroup& g, int a, int b);

/// Requires a transitive group. Degrees 1 and 2 are primitive outright.
PrimitivityReport is_primitive(const PermGroup& g);

/// A group together with a labelled partition of its domain into orbits.
/// Keeps the constructing generator list verbatim (duplicates and identities
/// included) so that two actions of the same group can be glued
/// generator-by-generator.
class MultiOrbitAction {
  public:
    /// Validates that the labels are exactly the group's orbits.
    MultiOrbitAction(PermGroup group, std::vector<Permutation> aligned_generators,
                     std::vector<std::vector<int>> orbit_labels);

    /// Computes the orbit labels from the group itself.
    static MultiOrbitAction from_group(PermGroup group);

    const PermGroup& group() const { return group_; }
    const std::vector<Permutation>& aligned_generators() const { return aligned_gens_; }
    const std::vector<std::vector<int>>& orbits() const { return orbits_; }
    int domain_size() const { return group_.degree(); }
    int orbit_count() const { return static_cast<int>(orbits_.size()); }

    /// Restriction of an element to one labelled orbit, renumbered to
    /// 0..|orbit|-1 in ascending point order.
    Permutation restrict_to_orbit(const Permutation& p, int orbit_index) const;

    /// Subgroup of the full-degree group acting trivially on one orbit.
    PermGroup orbit_kernel(int orbit_index) const;

  private:
    PermGroup group_;
    std::vector<Permutation> aligned_gens_;
    std::vector<std::vector<int>> orbits_;
};

/// Glues two actions of the same abstract group along their generator lists
/// (entry i of one action pairs with entry i of the other). Orbit labels are
/// kept, with the second action's points shifted past the first's.
MultiOrbitAction disjoint_union(const MultiOrbitAction& a, const MultiOrbitAction& b);

/// Right-coset action of a group on the cosets of a subgroup. Coset labels
/// are deterministic: cosets sorted by their lexicographically least element,
/// so the subgroup itself is always coset 0.
class CosetAction {
  public:
    /// Requires h <= g (generator membership checked). The subgroup must be
    /// enumerable within the cap; the kernel comes from iterated point
    /// stabilizers of the coset points, not from enumerating g.
    CosetAction(const PermGroup& g, const PermGroup& h, long coset_cap = kDefaultCosetCap);

    int index() const { return index_; }
    const bigint& subgroup_order() const { return subgroup_order_; }
    /// Images of the parent's generators on cosets, aligned with
    /// parent generators() order.
    const std::vector<Permutation>& quotient_images() const { return images_; }
    const PermGroup& image() const { return image_group_; }
    const PermGroup& kernel() const { return kernel_; }
    bool is_faithful() const { return kernel_.is_trivial(); }
    const std::vector<Permutation>& coset_reps() const { return reps_; }

    /// Image of an arbitrary parent element on cosets.
    Permutation image_of(const Permutation& g) const;

  private:
    Permutation canonical_rep(const Permutation& x) const;

    int parent_degree_;
    int index_;
    bigint subgroup_order_;
    std::vector<Permutation> subgroup_elements_;
    std::vector<Permutation> reps_;
    std::vector<Permutation> images_;
    PermGroup image_group_;
    PermGroup kernel_;
};

/// Single-orbit action on the coset domain itself, aligned with the parent's
/// generator list; ready to be glued to other actions of the same parent.
MultiOrbitAction coset_orbit_action(const CosetAction& ca);

/// Direct product acting on the disjoint union of the factors' domains.
PermGroup direct_product(const PermGroup& a, const PermGroup& b);

}  // namespace derange
