#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "derange/action.hpp"
#include "derange/group.hpp"
#include "derange/lattice.hpp"
#include "derange/perm.hpp"

namespace derange {

using bigrational = boost::multiprecision::cpp_rational;

/// Outcome of a derangement search over one action. Witnesses are
/// deterministic: the first qualifying conjugacy class in the fixed class
/// order contributes its lexicographically least member.
struct DerangementReport {
    std::string action;
    bool found = false;
    std::optional<Permutation> witness;
    /// Order of the witness; zero without one.
    bigint witness_order;
    /// The prime-power search tags the prime of the witness order here; the
    /// lifting strategy tags the prime of its first-orbit restriction.
    long witness_prime = 0;
    /// Fixed points of the witness inside each labelled orbit, all zero.
    std::vector<int> orbit_fixed_counts;
    long classes_examined = 0;
    long elements_examined = 0;
    /// The lifting strategy reports false here when its hypotheses fail;
    /// exhaustive searches always leave it true.
    bool applicable = true;
    std::vector<std::string> notes;
};

/// True iff p fixes no point of the action's full domain. Degrees must match.
bool is_derangement(const Permutation& p, const MultiOrbitAction& a);

/// Sweeps conjugacy class representatives for a fixed-point-free element.
/// Fixed counts are constant on classes, so representatives suffice; the
/// sweep rechecks that on one pseudo-random conjugate per class. A verdict of
/// "none" is only returned after every class has been examined.
DerangementReport find_derangement(const MultiOrbitAction& a, long cap = kDefaultEnumerationCap);

/// Same sweep restricted to witnesses of prime-power order. A transitive
/// action of degree above one always has one; failing to find it there is an
/// internal error.
DerangementReport find_prime_power_derangement(const MultiOrbitAction& a,
                                               long cap = kDefaultEnumerationCap);

/// Outcome of testing whether a group is the union of the conjugates of the
/// listed subgroups.
struct CoveringReport {
    std::string group;
    std::vector<std::string> subgroups;
    bool covered = false;
    /// Representative of the first conjugacy class meeting no conjugate of
    /// any listed subgroup; absent when covered.
    std::optional<Permutation> uncovered_witness;
    long classes_examined = 0;
    /// True when the verdict was re-derived from a derangement search over
    /// the glued coset actions.
    bool cross_checked = false;
    std::vector<std::string> notes;
};

/// Tests whether the conjugates of the listed proper subgroups exhaust g.
/// Membership of an element in such a union only depends on its conjugacy
/// class, so one representative per class is checked. With cross_check set,
/// the verdict is also re-derived from find_derangement on the disjoint
/// union of the coset actions of the listed subgroups; a mismatch throws.
CoveringReport is_normal_covering(const PermGroup& g, const std::vector<PermGroup>& subgroups,
                                  long cap = kDefaultEnumerationCap, bool cross_check = true);

/// Exact average number of fixed points over the coset { x*h : x in g }.
/// Requires g transitive on its full domain, in which case the average is
/// exactly one for every h; the computed value is returned so callers can
/// assert that.
bigrational coset_average_fixed_points(const PermGroup& g, const Permutation& h,
                                       long cap = kDefaultEnumerationCap);

/// Derangement search for a two-orbit action that avoids sweeping for a full
/// derangement directly: find an element whose first-orbit restriction is a
/// prime-power-order derangement, then scan its coset modulo the kernel of
/// the first-orbit action for an element also deranging the second orbit.
/// Needs that kernel transitive on the second orbit and no prime divisor of
/// the first orbit's size dividing the second orbit's size minus one; when
/// either hypothesis fails the report says so and claims nothing.
DerangementReport lift_derangement(const MultiOrbitAction& a, long cap = kDefaultEnumerationCap);

/// Outcome of the equal-order covering sweep over one group.
struct ConjectureReport {
    std::string group;
    /// Conjugacy classes of proper subgroups considered.
    long class_count = 0;
    /// Unordered pairs of class representatives with equal order, the
    /// same class paired with itself included.
    long pairs_checked = 0;
    /// True when no pair covers the group.
    bool verified = false;
    std::vector<std::string> counterexamples;
    std::vector<std::string> notes;
};

/// Checks that no two proper subgroups of equal order cover g by conjugates.
/// Sweeps one representative per subgroup conjugacy class; covering is
/// invariant under conjugating either subgroup, so that loses nothing.
ConjectureReport verify_conjecture(const PermGroup& g, long lattice_cap = kDefaultLatticeCap);

}  // namespace derange
