#include "derange/todd_coxeter.hpp"

#include <algorithm>
#include <utility>

#include "derange/errors.hpp"

namespace derange {

namespace {

// Coset enumeration state. Columns come in pairs: column 2k is generator
// k+1 and column 2k+1 its inverse, so flipping the low bit inverts. Dead
// cosets are tracked through a union-find whose representative is always
// the smallest merged index, which keeps coset 0 alive throughout.
class Enumerator {
  public:
    Enumerator(int generator_count, long cap)
        : columns_(2 * generator_count), cap_(cap) {
        table_.push_back(std::vector<int>(static_cast<std::size_t>(columns_), -1));
        parent_.push_back(0);
    }

    long size() const { return static_cast<long>(table_.size()); }

    long rep(long a) {
        while (parent_[static_cast<std::size_t>(a)] != a) {
            long up = parent_[static_cast<std::size_t>(a)];
            parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(up)];
            a = parent_[static_cast<std::size_t>(a)];
        }
        return a;
    }

    bool alive(long a) { return rep(a) == a; }

    int& entry(long coset, int column) {
        return table_[static_cast<std::size_t>(coset)][static_cast<std::size_t>(column)];
    }

    static int column_of(int letter) {
        return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
    }

    void link(long a, int column, long b) {
        entry(a, column) = static_cast<int>(b);
        entry(b, column ^ 1) = static_cast<int>(a);
    }

    long define(long from, int column) {
        if (size() >= cap_)
            throw cap_error("coset table exceeded the cap of " + std::to_string(cap_) +
                            " cosets");
        long fresh = size();
        table_.push_back(std::vector<int>(static_cast<std::size_t>(columns_), -1));
        parent_.push_back(fresh);
        link(from, column, fresh);
        return fresh;
    }

    // Traces the word forward from alpha and backward from alpha; a meeting
    // in the middle forces the last link, a crossing forces a coincidence,
    // and an undefined forward step defines a new coset. Every call leaves
    // the scan of this word at alpha complete.
    void scan_and_fill(long alpha, const std::vector<int>& word) {
        long f = alpha;
        long b = alpha;
        long i = 0;
        long j = static_cast<long>(word.size()) - 1;
        while (true) {
            while (i <= j && entry(f, column_of(word[static_cast<std::size_t>(i)])) >= 0) {
                f = entry(f, column_of(word[static_cast<std::size_t>(i)]));
                ++i;
            }
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i &&
                   entry(b, column_of(word[static_cast<std::size_t>(j)]) ^ 1) >= 0) {
                b = entry(b, column_of(word[static_cast<std::size_t>(j)]) ^ 1);
                --j;
            }
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (j == i) {
                link(f, column_of(word[static_cast<std::size_t>(i)]), b);
                return;
            }
            define(f, column_of(word[static_cast<std::size_t>(i)]));
        }
    }

    void fill_row(long alpha) {
        for (int c = 0; c < columns_; ++c) {
            if (!alive(alpha)) return;
            if (entry(alpha, c) < 0) define(alpha, c);
        }
    }

    // Renumbers live cosets by creation order and resolves every entry
    // through its representative.
    CosetEnumeration finish() {
        std::vector<long> new_index(table_.size(), -1);
        std::vector<long> live;
        for (long a = 0; a < size(); ++a) {
            if (!alive(a)) continue;
            new_index[static_cast<std::size_t>(a)] = static_cast<long>(live.size());
            live.push_back(a);
        }
        CosetEnumeration result;
        result.table.coset_count = static_cast<long>(live.size());
        result.table.status =
            live.size() == 1 ? TableStatus::collapsed : TableStatus::complete;
        result.table.rows.reserve(live.size());
        int gens = columns_ / 2;
        for (long a : live) {
            std::vector<int> row(static_cast<std::size_t>(gens));
            for (int g = 0; g < gens; ++g) {
                int target = entry(a, 2 * g);
                if (target < 0)
                    throw invariant_error("coset table closed with an undefined entry");
                row[static_cast<std::size_t>(g)] =
                    static_cast<int>(new_index[static_cast<std::size_t>(rep(target))]);
            }
            result.table.rows.push_back(std::move(row));
        }
        int degree = static_cast<int>(live.size());
        for (int g = 0; g < gens; ++g) {
            std::vector<int> images(static_cast<std::size_t>(degree));
            for (int c = 0; c < degree; ++c)
                images[static_cast<std::size_t>(c)] =
                    result.table.rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)];
            result.generator_images.push_back(Permutation(std::move(images)));
        }
        result.group = PermGroup(degree, result.generator_images);
        return result;
    }

  private:
    void merge(long a, long b, std::vector<long>& queue) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        long keep = std::min(a, b);
        long drop = std::max(a, b);
        parent_[static_cast<std::size_t>(drop)] = keep;
        queue.push_back(drop);
    }

    // Processes a forced equality of cosets. Each dead coset's row is
    // detached and its edges re-installed through representatives, queueing
    // any further equalities this exposes.
    void coincidence(long a, long b) {
        std::vector<long> queue;
        merge(a, b, queue);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            long dead = queue[qi];
            std::vector<int> row = table_[static_cast<std::size_t>(dead)];
            for (int c = 0; c < columns_; ++c) entry(dead, c) = -1;
            for (int c = 0; c < columns_; ++c) {
                long target = row[static_cast<std::size_t>(c)];
                if (target < 0) continue;
                if (entry(target, c ^ 1) == static_cast<int>(dead)) entry(target, c ^ 1) = -1;
                long mu = rep(dead);
                long nu = rep(target);
                if (entry(mu, c) >= 0)
                    merge(nu, entry(mu, c), queue);
                else if (entry(nu, c ^ 1) >= 0)
                    merge(mu, entry(nu, c ^ 1), queue);
                else
                    link(mu, c, nu);
            }
        }
    }

    int columns_;
    long cap_;
    std::vector<std::vector<int>> table_;
    std::vector<long> parent_;
};

CosetEnumeration enumerate(const Presentation& pr,
                           const std::vector<std::vector<int>>& subgroup_words, long cap) {
    Enumerator en(static_cast<int>(pr.generators.size()), cap);
    for (const auto& w : subgroup_words) en.scan_and_fill(0, w);
    for (long alpha = 0; alpha < en.size(); ++alpha) {
        if (!en.alive(alpha)) continue;
        for (const auto& r : pr.relators) {
            en.scan_and_fill(alpha, r);
            if (!en.alive(alpha)) break;
        }
        if (!en.alive(alpha)) continue;
        en.fill_row(alpha);
    }
    return en.finish();
}

}  // namespace

CosetEnumeration todd_coxeter(const Presentation& pr,
                              const std::vector<std::vector<int>>& subgroup_words,
                              long coset_cap) {
    if (pr.generators.empty()) throw input_error("presentation has no generators");
    if (coset_cap < 1) throw input_error("coset cap must be positive");
    for (const auto& w : subgroup_words)
        for (int letter : w) {
            int index = letter > 0 ? letter - 1 : -letter - 1;
            if (index >= static_cast<int>(pr.generators.size()))
                throw input_error("subgroup word refers to an unknown generator");
        }

    CosetEnumeration result = enumerate(pr, subgroup_words, coset_cap);

    if (result.table.coset_count > 1 && !result.group.is_transitive())
        throw invariant_error("coset action is not transitive");
    if (subgroup_words.empty()) {
        if (result.group.order() != bigint(result.table.coset_count))
            throw invariant_error("full enumeration is not regular");
        return result;
    }
    if (result.group.order() % bigint(result.table.coset_count) != 0)
        throw invariant_error("coset count does not divide the image order");

    // When a full enumeration also fits under the cap, check the index
    // against the subgroup's order inside the regular action.
    try {
        CosetEnumeration regular = enumerate(pr, {}, coset_cap);
        if (regular.group.order() != bigint(regular.table.coset_count))
            throw invariant_error("full enumeration is not regular");
        std::vector<Permutation> sub_gens;
        for (const auto& w : subgroup_words)
            sub_gens.push_back(evaluate_word(w, regular.generator_images,
                                             static_cast<int>(regular.table.coset_count)));
        PermGroup sub(static_cast<int>(regular.table.coset_count), sub_gens);
        if (regular.group.order() != bigint(result.table.coset_count) * sub.order())
            throw invariant_error("coset count disagrees with the subgroup index");
    } catch (const cap_error&) {
        // The group is too large to enumerate fully; skip the index check.
    }
    return result;
}

}  // namespace derange
