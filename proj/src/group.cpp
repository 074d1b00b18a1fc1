#include "derange/group.hpp"

#include <algorithm>
#include <stdexcept>

#include "derange/errors.hpp"

namespace derange {

PermGroup::PermGroup(int degree, std::vector<Permutation> generators,
                     std::vector<int> prescribed_base)
    : degree_(degree), order_(1), cache_(std::make_shared<CacheBox>()) {
    if (degree < 0)
        throw input_error("group degree must be nonnegative");
    for (const auto& g : generators) {
        if (g.degree() != degree)
            throw input_error("generator degree does not match group degree");
        if (g.is_identity())
            continue;
        if (std::find(gens_.begin(), gens_.end(), g) == gens_.end())
            gens_.push_back(g);
    }
    for (int pt : prescribed_base) {
        if (pt < 0 || pt >= degree)
            throw input_error("prescribed base point out of range");
    }
    schreier_sims(prescribed_base);
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

void PermGroup::rebuild_orbit(Level& lvl) const {
    lvl.orbit.clear();
    lvl.transversal.clear();
    lvl.orbit.push_back(lvl.point);
    lvl.transversal.emplace(lvl.point, Permutation::identity(degree_));
    for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
        int gamma = lvl.orbit[i];
        for (const auto& x : lvl.gens) {
            int delta = x(gamma);
            if (!lvl.transversal.count(delta)) {
                lvl.orbit.push_back(delta);
                lvl.transversal.emplace(delta, compose(lvl.transversal.at(gamma), x));
            }
        }
    }
}

std::pair<Permutation, std::size_t> PermGroup::strip(const Permutation& p,
                                                     std::size_t start) const {
    Permutation h = p;
    for (std::size_t l = start; l < levels_.size(); ++l) {
        int gamma = h(levels_[l].point);
        auto it = levels_[l].transversal.find(gamma);
        if (it == levels_[l].transversal.end())
            return {h, l};
        h = compose(h, it->second.inverse());
    }
    return {h, levels_.size()};
}

void PermGroup::schreier_sims(const std::vector<int>& prescribed) {
    base_.clear();
    for (int pt : prescribed) {
        if (std::find(base_.begin(), base_.end(), pt) == base_.end())
            base_.push_back(pt);
    }
    // Every generator has to move some base point.
    for (const auto& g : gens_) {
        bool moves = false;
        for (int pt : base_)
            if (g(pt) != pt) { moves = true; break; }
        if (!moves) {
            for (int pt = 0; pt < degree_; ++pt) {
                if (g(pt) != pt) { base_.push_back(pt); break; }
            }
        }
    }
    levels_.clear();
    for (std::size_t i = 0; i < base_.size(); ++i) {
        Level lvl;
        lvl.point = base_[i];
        for (const auto& g : gens_) {
            bool fixes_prefix = true;
            for (std::size_t j = 0; j < i; ++j)
                if (g(base_[j]) != base_[j]) { fixes_prefix = false; break; }
            if (fixes_prefix)
                lvl.gens.push_back(g);
        }
        levels_.push_back(std::move(lvl));
    }

    // Verify each level's Schreier generators bottom-up; a nontrivial sift
    // residue becomes a new strong generator and sends the scan back down.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
        Level& lvl = levels_[static_cast<std::size_t>(i)];
        rebuild_orbit(lvl);
        bool clean = true;
        for (std::size_t oi = 0; clean && oi < lvl.orbit.size(); ++oi) {
            int beta = lvl.orbit[oi];
            const Permutation& u_beta = lvl.transversal.at(beta);
            for (const auto& x : lvl.gens) {
                const Permutation& u_img = lvl.transversal.at(x(beta));
                Permutation g = compose(compose(u_beta, x), u_img.inverse());
                if (g.is_identity())
                    continue;
                auto [h, j] = strip(g, static_cast<std::size_t>(i) + 1);
                if (h.is_identity())
                    continue;
                if (j == levels_.size()) {
                    // The residue fixes the whole base; extend it.
                    for (int pt = 0; pt < degree_; ++pt) {
                        if (h(pt) != pt) {
                            base_.push_back(pt);
                            Level fresh;
                            fresh.point = pt;
                            levels_.push_back(std::move(fresh));
                            break;
                        }
                    }
                }
                for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l)
                    levels_[l].gens.push_back(h);
                i = static_cast<std::ptrdiff_t>(j);
                clean = false;
                break;
            }
        }
        if (clean)
            --i;
    }

    order_ = 1;
    for (const auto& lvl : levels_)
        order_ *= static_cast<long>(lvl.orbit.size());
}

bool PermGroup::contains(const Permutation& p) const {
    if (p.degree() != degree_)
        throw input_error("membership test needs matching degree");
    auto [h, j] = strip(p, 0);
    (void)j;
    return h.is_identity();
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& points) const {
    for (int pt : points)
        if (pt < 0 || pt >= degree_)
            throw input_error("stabilizer point out of range");
    // Stabilize one point at a time. Points already fixed by the current
    // group cost nothing, so the number of chain computations is bounded by
    // the number of times the order can drop, not by the size of the point
    // set. That keeps large fixed blocks (e.g. kernels of actions glued onto
    // wide domains) cheap.
    PermGroup current = *this;
    for (int pt : points) {
        bool moved = false;
        for (const auto& g : current.gens_)
            if (g(pt) != pt) {
                moved = true;
                break;
            }
        if (!moved)
            continue;
        PermGroup based(degree_, current.gens_, {pt});
        std::vector<Permutation> sub_gens;
        if (based.levels_.size() > 1)
            sub_gens = based.levels_[1].gens;
        current = PermGroup(degree_, sub_gens);
    }
    return current;
}

PermGroup PermGroup::point_stabilizer(int point) const {
    return pointwise_stabilizer({point});
}

std::vector<Permutation> PermGroup::elements(long cap) const {
    if (order_ > cap)
        throw cap_error("group order " + order_.str() + " exceeds enumeration cap " +
                        std::to_string(cap));
    std::vector<Permutation> acc{Permutation::identity(degree_)};
    for (std::size_t li = levels_.size(); li-- > 0;) {
        const Level& lvl = levels_[li];
        if (lvl.orbit.size() == 1)
            continue;
        std::vector<Permutation> next;
        next.reserve(acc.size() * lvl.orbit.size());
        for (int gamma : lvl.orbit) {
            const Permutation& u = lvl.transversal.at(gamma);
            for (const auto& h : acc)
                next.push_back(compose(h, u));
        }
        acc = std::move(next);
    }
    return acc;
}

const std::vector<Permutation>& PermGroup::canonical_locked(long cap) const {
    if (!cache_->canonical) {
        auto elems = elements(cap);
        std::sort(elems.begin(), elems.end());
        cache_->canonical = std::move(elems);
    }
    return *cache_->canonical;
}

const std::unordered_map<Permutation, int, PermHash>& PermGroup::index_locked(long cap) const {
    if (!cache_->index) {
        const auto& elems = canonical_locked(cap);
        std::unordered_map<Permutation, int, PermHash> idx;
        idx.reserve(elems.size());
        for (std::size_t k = 0; k < elems.size(); ++k)
            idx.emplace(elems[k], static_cast<int>(k));
        cache_->index = std::move(idx);
    }
    return *cache_->index;
}

const std::vector<Permutation>& PermGroup::canonical_elements(long cap) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return canonical_locked(cap);
}

int PermGroup::canonical_index(const Permutation& p, long cap) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto& idx = index_locked(cap);
    auto it = idx.find(p);
    return it == idx.end() ? -1 : it->second;
}

const ConjugacyClassTable& PermGroup::conjugacy_classes(long cap) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (cache_->classes)
        return *cache_->classes;
    const auto& elems = canonical_locked(cap);
    const auto& index = index_locked(cap);
    std::vector<char> seen(elems.size(), 0);
    struct RawClass {
        int seed;
        std::vector<int> members;
        bigint order;
    };
    std::vector<RawClass> raw;
    for (std::size_t s = 0; s < elems.size(); ++s) {
        if (seen[s])
            continue;
        RawClass cls;
        cls.seed = static_cast<int>(s);
        cls.members.push_back(static_cast<int>(s));
        seen[s] = 1;
        for (std::size_t qi = 0; qi < cls.members.size(); ++qi) {
            const Permutation& x = elems[static_cast<std::size_t>(cls.members[qi])];
            for (const auto& g : gens_) {
                int j = index.at(conjugate(x, g));
                if (!seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = 1;
                    cls.members.push_back(j);
                }
            }
        }
        cls.order = elems[s].order();
        raw.push_back(std::move(cls));
    }
    // Seeds appear in ascending element order, so a stable sort on the
    // representative's order keeps the lexicographic tie-break.
    std::stable_sort(raw.begin(), raw.end(),
                     [](const RawClass& a, const RawClass& b) { return a.order < b.order; });
    ConjugacyClassTable table;
    for (std::size_t c = 0; c < raw.size(); ++c) {
        table.representatives.push_back(elems[static_cast<std::size_t>(raw[c].seed)]);
        table.sizes.push_back(static_cast<long>(raw[c].members.size()));
        table.rep_orders.push_back(raw[c].order);
        for (int m : raw[c].members)
            table.class_of.emplace(elems[static_cast<std::size_t>(m)], static_cast<int>(c));
    }
    cache_->classes = std::move(table);
    return *cache_->classes;
}

bool PermGroup::is_abelian() const {
    for (std::size_t a = 0; a < gens_.size(); ++a)
        for (std::size_t b = a + 1; b < gens_.size(); ++b)
            if (compose(gens_[a], gens_[b]) != compose(gens_[b], gens_[a]))
                return false;
    return true;
}

bool PermGroup::is_transitive() const {
    if (degree_ <= 1)
        return true;
    std::vector<char> seen(static_cast<std::size_t>(degree_), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (const auto& g : gens_) {
            int img = g(queue[qi]);
            if (!seen[static_cast<std::size_t>(img)]) {
                seen[static_cast<std::size_t>(img)] = 1;
                queue.push_back(img);
                ++count;
            }
        }
    }
    return count == static_cast<std::size_t>(degree_);
}

std::vector<int> PermGroup::support() const {
    std::vector<int> moved;
    for (int pt = 0; pt < degree_; ++pt) {
        for (const auto& g : gens_) {
            if (g(pt) != pt) {
                moved.push_back(pt);
                break;
            }
        }
    }
    return moved;
}

bool is_normal_subgroup(const PermGroup& g, const PermGroup& h) {
    for (const auto& hg : h.generators())
        if (!g.contains(hg))
            return false;
    for (const auto& gg : g.generators())
        for (const auto& hg : h.generators())
            if (!h.contains(conjugate(hg, gg)))
                return false;
    return true;
}

}  // namespace derange
