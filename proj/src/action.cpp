#include "derange/action.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "derange/errors.hpp"

namespace derange {

std::vector<int> orbit_of(const PermGroup& g, int point) {
    if (point < 0 || point >= g.degree())
        throw input_error("orbit point out of range");
    std::vector<char> seen(static_cast<std::size_t>(g.degree()), 0);
    std::vector<int> queue{point};
    seen[static_cast<std::size_t>(point)] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        for (const auto& s : g.generators()) {
            int img = s(queue[qi]);
            if (!seen[static_cast<std::size_t>(img)]) {
                seen[static_cast<std::size_t>(img)] = 1;
                queue.push_back(img);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

std::vector<std::vector<int>> orbit_partition(const PermGroup& g) {
    std::vector<char> placed(static_cast<std::size_t>(g.degree()), 0);
    std::vector<std::vector<int>> orbits;
    for (int pt = 0; pt < g.degree(); ++pt) {
        if (placed[static_cast<std::size_t>(pt)])
            continue;
        auto orb = orbit_of(g, pt);
        for (int q : orb)
            placed[static_cast<std::size_t>(q)] = 1;
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

std::vector<int> minimal_block(const PermGroup& g, int a, int b) {
    int n = g.degree();
    if (a < 0 || a >= n || b < 0 || b >= n || a == b)
        throw input_error("block seed points must be distinct domain points");
    // Union-find closure of the seed identification under all generators.
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    std::vector<std::pair<int, int>> agenda;
    auto merge = [&](int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry)
            return;
        if (rx > ry)
            std::swap(rx, ry);
        parent[static_cast<std::size_t>(ry)] = rx;
        agenda.emplace_back(x, y);
    };
    merge(a, b);
    for (std::size_t qi = 0; qi < agenda.size(); ++qi) {
        auto [x, y] = agenda[qi];
        for (const auto& s : g.generators())
            merge(s(x), s(y));
    }
    std::vector<int> block;
    int ra = find(a);
    for (int pt = 0; pt < n; ++pt)
        if (find(pt) == ra)
            block.push_back(pt);
    return block;
}

PrimitivityReport is_primitive(const PermGroup& g) {
    if (!g.is_transitive())
        throw input_error("primitivity is defined for transitive groups only");
    PrimitivityReport report;
    int n = g.degree();
    if (n <= 2) {
        report.primitive = true;
        return report;
    }
    for (int omega = 1; omega < n; ++omega) {
        auto block = minimal_block(g, 0, omega);
        if (static_cast<int>(block.size()) < n) {
            report.primitive = false;
            report.block = std::move(block);
            return report;
        }
    }
    report.primitive = true;
    return report;
}

namespace {

std::vector<std::vector<int>> canonical_labels(std::vector<std::vector<int>> labels) {
    for (auto& orb : labels)
        std::sort(orb.begin(), orb.end());
    std::sort(labels.begin(), labels.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return labels;
}

}  // namespace

MultiOrbitAction::MultiOrbitAction(PermGroup group, std::vector<Permutation> aligned_generators,
                                   std::vector<std::vector<int>> orbit_labels)
    : group_(std::move(group)),
      aligned_gens_(std::move(aligned_generators)),
      orbits_(canonical_labels(std::move(orbit_labels))) {
    for (const auto& p : aligned_gens_)
        if (p.degree() != group_.degree())
            throw input_error("aligned generator degree mismatch");
    if (orbits_ != orbit_partition(group_))
        throw input_error("orbit labels do not match the group's orbits");
}

MultiOrbitAction MultiOrbitAction::from_group(PermGroup group) {
    auto orbits = orbit_partition(group);
    auto gens = group.generators();
    return MultiOrbitAction(std::move(group), std::move(gens), std::move(orbits));
}

Permutation MultiOrbitAction::restrict_to_orbit(const Permutation& p, int orbit_index) const {
    if (orbit_index < 0 || orbit_index >= orbit_count())
        throw input_error("orbit index out of range");
    const auto& orb = orbits_[static_cast<std::size_t>(orbit_index)];
    std::unordered_map<int, int> pos;
    for (std::size_t i = 0; i < orb.size(); ++i)
        pos.emplace(orb[i], static_cast<int>(i));
    std::vector<int> images(orb.size());
    for (std::size_t i = 0; i < orb.size(); ++i) {
        auto it = pos.find(p(orb[i]));
        if (it == pos.end())
            throw input_error("element does not preserve the labelled orbit");
        images[i] = it->second;
    }
    return Permutation(std::move(images));
}

PermGroup MultiOrbitAction::orbit_kernel(int orbit_index) const {
    if (orbit_index < 0 || orbit_index >= orbit_count())
        throw input_error("orbit index out of range");
    return group_.pointwise_stabilizer(orbits_[static_cast<std::size_t>(orbit_index)]);
}

MultiOrbitAction disjoint_union(const MultiOrbitAction& a, const MultiOrbitAction& b) {
    if (a.aligned_generators().size() != b.aligned_generators().size())
        throw input_error("disjoint union needs generator-aligned actions");
    int da = a.domain_size();
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i < a.aligned_generators().size(); ++i) {
        const auto& pa = a.aligned_generators()[i].images();
        const auto& pb = b.aligned_generators()[i].images();
        std::vector<int> images(pa.begin(), pa.end());
        for (int v : pb)
            images.push_back(v + da);
        gens.emplace_back(std::move(images));
    }
    std::vector<std::vector<int>> labels = a.orbits();
    for (const auto& orb : b.orbits()) {
        std::vector<int> shifted;
        for (int pt : orb)
            shifted.push_back(pt + da);
        labels.push_back(std::move(shifted));
    }
    PermGroup combined(da + b.domain_size(), gens);
    return MultiOrbitAction(std::move(combined), std::move(gens), std::move(labels));
}

Permutation CosetAction::canonical_rep(const Permutation& x) const {
    // The identity is in the subgroup, so x itself is a candidate.
    Permutation best = x;
    for (const auto& h : subgroup_elements_) {
        Permutation candidate = compose(h, x);
        if (candidate < best)
            best = std::move(candidate);
    }
    return best;
}

CosetAction::CosetAction(const PermGroup& g, const PermGroup& h, long coset_cap)
    : parent_degree_(g.degree()),
      index_(0),
      subgroup_order_(h.order()),
      image_group_(PermGroup::trivial(0)),
      kernel_(PermGroup::trivial(0)) {
    if (h.degree() != g.degree())
        throw input_error("subgroup degree does not match group degree");
    for (const auto& hg : h.generators())
        if (!g.contains(hg))
            throw input_error("coset action requires a subgroup of the group");
    bigint index_big = g.order() / h.order();
    if (index_big * h.order() != g.order())
        throw invariant_error("subgroup order does not divide group order");
    if (index_big > coset_cap)
        throw cap_error("coset index " + index_big.str() + " exceeds cap " +
                        std::to_string(coset_cap));
    index_ = static_cast<int>(static_cast<long>(index_big));
    subgroup_elements_ = h.canonical_elements();

    // BFS over cosets, each keyed by its lexicographically least element.
    std::unordered_map<Permutation, int, PermHash> discovery;
    std::vector<Permutation> bfs_reps;
    Permutation start = Permutation::identity(parent_degree_);
    discovery.emplace(start, 0);
    bfs_reps.push_back(start);
    for (std::size_t qi = 0; qi < bfs_reps.size(); ++qi) {
        Permutation rep = bfs_reps[qi];
        for (const auto& s : g.generators()) {
            Permutation next = canonical_rep(compose(rep, s));
            if (!discovery.count(next)) {
                discovery.emplace(next, static_cast<int>(bfs_reps.size()));
                bfs_reps.push_back(std::move(next));
            }
        }
    }
    if (static_cast<int>(bfs_reps.size()) != index_)
        throw invariant_error("coset walk found " + std::to_string(bfs_reps.size()) +
                              " cosets, expected " + std::to_string(index_));

    reps_ = bfs_reps;
    std::sort(reps_.begin(), reps_.end());
    std::unordered_map<Permutation, int, PermHash> label_of;
    for (std::size_t i = 0; i < reps_.size(); ++i)
        label_of.emplace(reps_[i], static_cast<int>(i));

    for (const auto& s : g.generators()) {
        std::vector<int> images(static_cast<std::size_t>(index_));
        for (int c = 0; c < index_; ++c)
            images[static_cast<std::size_t>(c)] =
                label_of.at(canonical_rep(compose(reps_[static_cast<std::size_t>(c)], s)));
        images_.emplace_back(std::move(images));
    }
    image_group_ = PermGroup(index_, images_);

    // Kernel: stabilize every coset point of the glued (domain + cosets)
    // action, then restrict the survivors back to the original domain.
    std::vector<Permutation> glued;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        std::vector<int> images(g.generators()[i].images());
        for (int v : images_[i].images())
            images.push_back(v + parent_degree_);
        glued.emplace_back(std::move(images));
    }
    PermGroup glued_group(parent_degree_ + index_, glued);
    std::vector<int> coset_points(static_cast<std::size_t>(index_));
    std::iota(coset_points.begin(), coset_points.end(), parent_degree_);
    PermGroup fixing = glued_group.pointwise_stabilizer(coset_points);
    std::vector<Permutation> kernel_gens;
    for (const auto& k : fixing.generators()) {
        std::vector<int> images(k.images().begin(), k.images().begin() + parent_degree_);
        kernel_gens.emplace_back(std::move(images));
    }
    kernel_ = PermGroup(parent_degree_, kernel_gens);
}

Permutation CosetAction::image_of(const Permutation& g) const {
    std::unordered_map<Permutation, int, PermHash> label_of;
    for (std::size_t i = 0; i < reps_.size(); ++i)
        label_of.emplace(reps_[i], static_cast<int>(i));
    std::vector<int> images(static_cast<std::size_t>(index_));
    for (int c = 0; c < index_; ++c) {
        auto it = label_of.find(canonical_rep(compose(reps_[static_cast<std::size_t>(c)], g)));
        if (it == label_of.end())
            throw input_error("element does not act on these cosets");
        images[static_cast<std::size_t>(c)] = it->second;
    }
    return Permutation(std::move(images));
}

MultiOrbitAction coset_orbit_action(const CosetAction& ca) {
    PermGroup group(ca.index(), ca.quotient_images());
    std::vector<int> all(static_cast<std::size_t>(ca.index()));
    std::iota(all.begin(), all.end(), 0);
    return MultiOrbitAction(std::move(group), ca.quotient_images(), {all});
}

PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
    std::vector<Permutation> gens;
    for (const auto& p : a.generators()) {
        std::vector<int> images(p.images());
        for (int v = 0; v < b.degree(); ++v)
            images.push_back(a.degree() + v);
        gens.emplace_back(std::move(images));
    }
    for (const auto& p : b.generators()) {
        std::vector<int> images(static_cast<std::size_t>(a.degree()));
        std::iota(images.begin(), images.end(), 0);
        for (int v : p.images())
            images.push_back(a.degree() + v);
        gens.emplace_back(std::move(images));
    }
    return PermGroup(a.degree() + b.degree(), gens);
}

}  // namespace derange
