#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "derange/perm.hpp"

namespace derange {

inline constexpr long kDefaultEnumerationCap = 1000000;

/// Conjugation-orbit partition of a group's elements. Classes are ordered by
/// ascending (element order, lexicographically least member) and each class
/// representative is the lexicographically least member of its class.
struct ConjugacyClassTable {
    std::vector<Permutation> representatives;
    std::vector<bigint> sizes;
    std::vector<bigint> rep_orders;
    std::unordered_map<Permutation, int, PermHash> class_of;

    int class_count() const { return static_cast<int>(representatives.size()); }
};

/// A permutation group with a deterministic stabilizer-chain certificate
/// (base, transversals, strong generators). Logically immutable after
/// construction; element and class caches are built on first use behind a
/// mutex, so shared instances are safe to read concurrently.
class PermGroup {
  public:
    /// Builds the chain by deterministic Schreier-Sims. Base points are the
    /// prescribed ones first (in the given order, kept even when the whole
    /// group fixes them), then smallest moved points as needed. The same
    /// degree, generator list and prescription always yield the same chain.
    PermGroup(int degree, std::vector<Permutation> generators,
              std::vector<int> prescribed_base = {});

    /// Trivial group of the given degree.
    static PermGroup trivial(int degree);

    int degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return gens_; }
    const bigint& order() const { return order_; }
    bool is_trivial() const { return order_ == 1; }
    const std::vector<int>& base() const { return base_; }

    /// True iff p sifts to the identity through the chain.
    bool contains(const Permutation& p) const;

    /// Subgroup fixing every listed point individually; computed by reading
    /// the strong generators off a chain based at those points.
    PermGroup pointwise_stabilizer(const std::vector<int>& points) const;
    PermGroup point_stabilizer(int point) const;

    /// All elements, each exactly once, in deterministic chain order.
    /// Throws cap_error when the order exceeds the cap.
    std::vector<Permutation> elements(long cap = kDefaultEnumerationCap) const;

    /// Elements sorted by image list; this is the group's fixed enumeration
    /// order. Cached after the first call.
    const std::vector<Permutation>& canonical_elements(long cap = kDefaultEnumerationCap) const;

    /// Position of an element in canonical_elements(); -1 if absent.
    int canonical_index(const Permutation& p, long cap = kDefaultEnumerationCap) const;

    /// Conjugation-orbit partition; cached after the first call.
    const ConjugacyClassTable& conjugacy_classes(long cap = kDefaultEnumerationCap) const;

    bool is_abelian() const;
    bool is_transitive() const;

    /// Points moved by at least one generator, ascending.
    std::vector<int> support() const;

  private:
    struct Level {
        int point = 0;
        std::vector<Permutation> gens;  // strong generators living at this level
        std::vector<int> orbit;         // BFS discovery order, orbit[0] == point
        std::unordered_map<int, Permutation> transversal;  // gamma -> u with u(point) == gamma
    };

    struct CacheBox {
        std::mutex mutex;
        std::optional<std::vector<Permutation>> canonical;
        std::optional<std::unordered_map<Permutation, int, PermHash>> index;
        std::optional<ConjugacyClassTable> classes;
    };

    void rebuild_orbit(Level& lvl) const;
    // Sifts p through levels [start, end); returns the residue and the level
    // index where sifting stopped (levels_.size() when it ran through).
    std::pair<Permutation, std::size_t> strip(const Permutation& p, std::size_t start) const;
    void schreier_sims(const std::vector<int>& prescribed);
    const std::vector<Permutation>& canonical_locked(long cap) const;
    const std::unordered_map<Permutation, int, PermHash>& index_locked(long cap) const;

    int degree_;
    std::vector<Permutation> gens_;
    std::vector<int> base_;
    std::vector<Level> levels_;
    bigint order_;
    mutable std::shared_ptr<CacheBox> cache_;
};

/// True iff every generator of g conjugates every generator of h back into h.
/// When h is known to be a subgroup of g this is exactly normality of h in g.
bool is_normal_subgroup(const PermGroup& g, const PermGroup& h);

}  // namespace derange
