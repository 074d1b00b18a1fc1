#include "derange/lattice.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <set>
#include <utility>

#include "derange/errors.hpp"
#include "derange/perm.hpp"

namespace derange {

namespace {

// Closure of a seed set under the index multiplication table, sorted. A
// nonempty subset of a finite group closed under products is a subgroup, so
// no separate inverse step is needed.
std::vector<int> close_under_products(const std::vector<int>& seed,
                                      const std::vector<std::vector<int>>& mult) {
    std::vector<char> in(mult.size(), 0);
    std::vector<int> members;
    std::vector<int> work;
    for (int s : seed) {
        if (!in[static_cast<std::size_t>(s)]) {
            in[static_cast<std::size_t>(s)] = 1;
            members.push_back(s);
            work.push_back(s);
        }
    }
    while (!work.empty()) {
        int x = work.back();
        work.pop_back();
        for (std::size_t i = 0; i < members.size(); ++i) {
            int y = members[i];
            for (int z : {mult[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)],
                          mult[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)]}) {
                if (!in[static_cast<std::size_t>(z)]) {
                    in[static_cast<std::size_t>(z)] = 1;
                    members.push_back(z);
                    work.push_back(z);
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

// Small generating set for the subgroup with the given element key: walk the
// key ascending and keep every element not already generated.
std::vector<int> greedy_generators(const std::vector<int>& key,
                                   const std::vector<std::vector<int>>& mult, int identity_index) {
    std::vector<int> gens;
    std::vector<int> have{identity_index};
    for (int e : key) {
        if (std::binary_search(have.begin(), have.end(), e))
            continue;
        gens.push_back(e);
        std::vector<int> seed = gens;
        seed.push_back(identity_index);
        have = close_under_products(seed, mult);
        if (have == key)
            break;
    }
    return gens;
}

}  // namespace

std::vector<SubgroupRecord> all_subgroups(const PermGroup& g, long lattice_cap) {
    if (lattice_cap < 1)
        throw input_error("lattice cap must be positive");
    if (g.order() > lattice_cap)
        throw cap_error("group order " + g.order().str() + " exceeds the subgroup lattice cap " +
                        std::to_string(lattice_cap));
    const auto& els = g.canonical_elements(lattice_cap);
    const int n = static_cast<int>(els.size());
    const int id_index = g.canonical_index(Permutation::identity(g.degree()));

    std::vector<std::vector<int>> mult(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int k = g.canonical_index(compose(els[static_cast<std::size_t>(i)],
                                              els[static_cast<std::size_t>(j)]));
            mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = k;
        }
    }

    std::set<std::vector<int>> keys;
    std::vector<std::vector<int>> cyclics;
    std::vector<std::vector<int>> worklist;
    for (int i = 0; i < n; ++i) {
        auto key = close_under_products({i}, mult);
        if (keys.insert(key).second) {
            cyclics.push_back(key);
            worklist.push_back(key);
        }
    }
    while (!worklist.empty()) {
        auto a = std::move(worklist.back());
        worklist.pop_back();
        for (const auto& c : cyclics) {
            if (std::includes(a.begin(), a.end(), c.begin(), c.end()))
                continue;
            std::vector<int> seed = a;
            seed.insert(seed.end(), c.begin(), c.end());
            auto key = close_under_products(seed, mult);
            if (keys.insert(key).second)
                worklist.push_back(key);
        }
    }

    std::vector<std::vector<int>> sorted_keys(keys.begin(), keys.end());
    std::sort(sorted_keys.begin(), sorted_keys.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size())
                      return a.size() < b.size();
                  return a < b;
              });

    std::vector<SubgroupRecord> records;
    records.reserve(sorted_keys.size());
    std::map<std::vector<int>, int> index_of;
    for (const auto& key : sorted_keys) {
        std::vector<Permutation> gen_perms;
        for (int idx : greedy_generators(key, mult, id_index))
            gen_perms.push_back(els[static_cast<std::size_t>(idx)]);
        PermGroup sub(g.degree(), std::move(gen_perms));
        if (sub.order() != key.size())
            throw invariant_error("subgroup record order disagrees with its element key");
        index_of.emplace(key, static_cast<int>(records.size()));
        records.push_back(SubgroupRecord{std::move(sub), bigint(key.size()), key, false, -1});
    }

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& key_i = records[i].element_key;
        if (static_cast<int>(key_i.size()) == n)
            continue;  // the whole group is not a proper subgroup of itself
        bool maximal = true;
        for (std::size_t j = 0; j < records.size() && maximal; ++j) {
            const auto& key_j = records[j].element_key;
            if (key_j.size() <= key_i.size() || static_cast<int>(key_j.size()) == n)
                continue;
            if (key_j.size() % key_i.size() != 0)
                continue;
            if (std::includes(key_j.begin(), key_j.end(), key_i.begin(), key_i.end()))
                maximal = false;
        }
        records[i].is_maximal = maximal;
    }

    // Conjugation maps one parent generator at a time; orbits of keys under
    // these maps are exactly the conjugacy classes of subgroups.
    std::vector<std::vector<int>> conj(g.generators().size(),
                                       std::vector<int>(static_cast<std::size_t>(n)));
    for (std::size_t c = 0; c < g.generators().size(); ++c) {
        for (int i = 0; i < n; ++i) {
            conj[c][static_cast<std::size_t>(i)] =
                g.canonical_index(conjugate(els[static_cast<std::size_t>(i)], g.generators()[c]));
        }
    }
    int next_class = 0;
    for (std::size_t start = 0; start < records.size(); ++start) {
        if (records[start].conjugacy_class_id != -1)
            continue;
        int cid = next_class++;
        std::vector<int> frontier{static_cast<int>(start)};
        records[start].conjugacy_class_id = cid;
        while (!frontier.empty()) {
            int at = frontier.back();
            frontier.pop_back();
            for (const auto& cmap : conj) {
                std::vector<int> image;
                image.reserve(records[static_cast<std::size_t>(at)].element_key.size());
                for (int e : records[static_cast<std::size_t>(at)].element_key)
                    image.push_back(cmap[static_cast<std::size_t>(e)]);
                std::sort(image.begin(), image.end());
                auto it = index_of.find(image);
                if (it == index_of.end())
                    throw invariant_error("conjugate of a lattice subgroup is missing from the lattice");
                auto& rec = records[static_cast<std::size_t>(it->second)];
                if (rec.conjugacy_class_id == -1) {
                    rec.conjugacy_class_id = cid;
                    frontier.push_back(it->second);
                } else if (rec.conjugacy_class_id != cid) {
                    throw invariant_error("subgroup conjugation orbits overlap");
                }
            }
        }
    }

    return records;
}

std::vector<SubgroupRecord> maximal_subgroups(const std::vector<SubgroupRecord>& lattice) {
    std::vector<SubgroupRecord> out;
    for (const auto& rec : lattice)
        if (rec.is_maximal)
            out.push_back(rec);
    return out;
}

std::vector<SubgroupRecord> maximal_subgroups(const PermGroup& g, long lattice_cap) {
    return maximal_subgroups(all_subgroups(g, lattice_cap));
}

std::vector<std::vector<int>> subgroup_conjugacy_classes(const std::vector<SubgroupRecord>& lattice) {
    int classes = 0;
    for (const auto& rec : lattice)
        classes = std::max(classes, rec.conjugacy_class_id + 1);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(classes));
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        int cid = lattice[i].conjugacy_class_id;
        if (cid < 0)
            throw input_error("lattice record is missing its conjugacy class id");
        out[static_cast<std::size_t>(cid)].push_back(static_cast<int>(i));
    }
    return out;
}

std::string lattice_to_json(const std::vector<SubgroupRecord>& lattice) {
    nlohmann::json subgroups = nlohmann::json::array();
    for (const auto& rec : lattice) {
        nlohmann::json cycles = nlohmann::json::array();
        for (const auto& gen : rec.group.generators())
            cycles.push_back(format_cycles(gen));
        subgroups.push_back({{"class", rec.conjugacy_class_id},
                             {"generators", cycles},
                             {"maximal", rec.is_maximal},
                             {"order", rec.order.str()}});
    }
    nlohmann::json out{{"subgroup_count", lattice.size()}, {"subgroups", subgroups}};
    return out.dump();
}

}  // namespace derange
