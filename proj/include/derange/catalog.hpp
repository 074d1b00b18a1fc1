#pragma once

#include <functional>
#include <string>
#include <vector>

#include "derange/action.hpp"
#include "derange/group.hpp"
#include "derange/lattice.hpp"

namespace derange {

/// Families with fixed canonical generators:
///   cyclic {n}       the n-cycle on n points, n >= 1
///   dihedral {n}     n-cycle and the reflection fixing point 0, n >= 3
///   symmetric {n}    (0 1) and the n-cycle, n >= 1
///   alternating {n}  consecutive 3-cycles, n >= 3
///   product {n, m}   two cyclic factors side by side on n + m points
///   gl {d, p}        row operations on the p^d - 1 nonzero vectors
///   psl2 {p}         z+1 and -1/z on the p + 1 projective points
/// Each family checks its parameters and asserts the expected order of the
/// realized group before returning.
PermGroup named_group(const std::string& family, const std::vector<long>& parameters);

/// The affine maps of the line over F_p in their two-orbit action: the p
/// affine points glued with the p - 1 nonzero slopes, on which the group
/// acts through its cyclic quotient. Degree 2p - 1, order p(p - 1), and no
/// element is fixed-point-free on the union.
MultiOrbitAction agl1(long p);

/// An order-96 group covered by the conjugates of just two of its
/// subgroups: a maximal one of order 24 and an abelian one of order 8. The
/// group is enumerated from a four-generator presentation and compressed to
/// its faithful action on the 12 cosets of the order-8 subgroup; both
/// records come from the full subgroup lattice of that action. Every
/// structural claim is re-checked at build time and listed in
/// assumptions_checked; violations throw invariant_error.
struct CoveringExample {
    PermGroup group;
    SubgroupRecord h1;
    SubgroupRecord h2;
    std::vector<std::string> assumptions_checked;
};

CoveringExample two_subgroup_covering_example();

/// One catalog action: summary data for manifests plus a factory that
/// realizes the action on demand, so element and class caches live only as
/// long as the caller keeps the realization.
struct CatalogEntry {
    std::string name;
    std::string kind;  // "base" or "coset"
    int degree = 0;
    bigint order;
    std::vector<int> orbit_sizes;
    std::function<MultiOrbitAction()> make;
};

/// The standard battery: cyclic(2..32), dihedral(3..16), symmetric(2..6),
/// alternating(3..7), the two-orbit affine lines for primes up to 31, psl2
/// for p in {5, 7, 11, 13}, the order-96 covering example, affine groups
/// affine(d, p) with full linear part for p^d <= 64 plus the line cases
/// d = 1 up to p = 61, and one coset action per conjugacy class of maximal
/// subgroups of every transitive base group of order at most 200.
std::vector<CatalogEntry> default_catalog();

/// JSON manifest of names, kinds, degrees, orders and orbit sizes;
/// byte-identical across runs.
std::string catalog_manifest_json(const std::vector<CatalogEntry>& entries);

}  // namespace derange
