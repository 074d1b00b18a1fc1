#include "derange/catalog.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <numeric>
#include <utility>

#include "derange/affine.hpp"
#include "derange/derangement.hpp"
#include "derange/errors.hpp"
#include "derange/matfp.hpp"
#include "derange/numeric.hpp"
#include "derange/presentation.hpp"
#include "derange/todd_coxeter.hpp"

namespace derange {

namespace {

long pow_mod(long base, long exp, long mod) {
    long result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

// Smallest primitive root modulo an odd prime.
long primitive_root_mod(long p) {
    std::vector<long> prime_divisors;
    long m = p - 1;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d != 0) continue;
        prime_divisors.push_back(d);
        while (m % d == 0) m /= d;
    }
    if (m > 1) prime_divisors.push_back(m);
    for (long r = 2; r < p; ++r) {
        bool generates = true;
        for (long q : prime_divisors)
            if (pow_mod(r, (p - 1) / q, p) == 1) {
                generates = false;
                break;
            }
        if (generates) return r;
    }
    throw invariant_error("no primitive root modulo " + std::to_string(p));
}

void require_param_count(const std::string& family, const std::vector<long>& parameters,
                         std::size_t count) {
    if (parameters.size() != count)
        throw input_error("family '" + family + "' takes " + std::to_string(count) +
                          " parameter(s), got " + std::to_string(parameters.size()));
}

Permutation full_cycle(int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = (i + 1) % n;
    return Permutation(std::move(images));
}

PermGroup checked(PermGroup g, const bigint& expected_order, const std::string& family) {
    if (g.order() != expected_order)
        throw invariant_error("family '" + family + "' realized the wrong order");
    return g;
}

bigint factorial(long n) {
    bigint f = 1;
    for (long k = 2; k <= n; ++k) f *= k;
    return f;
}

PermGroup psl2_group(long p) {
    if (!is_prime(p)) throw input_error("psl2 needs a prime parameter");
    int degree = static_cast<int>(p) + 1;  // field points 0..p-1, then infinity
    int inf = static_cast<int>(p);
    std::vector<int> t(static_cast<std::size_t>(degree));
    std::vector<int> s(static_cast<std::size_t>(degree));
    for (long z = 0; z < p; ++z) t[static_cast<std::size_t>(z)] = static_cast<int>((z + 1) % p);
    t[static_cast<std::size_t>(inf)] = inf;
    s[0] = inf;
    s[static_cast<std::size_t>(inf)] = 0;
    for (long z = 1; z < p; ++z) {
        long inverse = pow_mod(z, p - 2, p);
        s[static_cast<std::size_t>(z)] = static_cast<int>((p - inverse) % p);
    }
    PermGroup g(degree, {Permutation(std::move(t)), Permutation(std::move(s))});
    bigint expected = bigint(p) * (bigint(p) * p - 1) / (p == 2 ? 1 : 2);
    return checked(std::move(g), expected, "psl2");
}

PermGroup gl_group(long d, long p) {
    if (d < 1) throw input_error("gl needs dimension at least 1");
    if (!is_prime(p)) throw input_error("gl needs a prime parameter");
    auto field = GF::make(p);
    long points = 1;
    for (long k = 0; k < d; ++k) {
        points *= p;
        if (points > 1000000) throw input_error("gl domain is too large");
    }
    std::vector<Permutation> gens;
    for (const MatrixFp& m : gl_generators(field, static_cast<int>(d)))
        gens.push_back(matrix_permutation_nonzero(m));
    PermGroup g(static_cast<int>(points) - 1, gens);
    return checked(std::move(g), gl_order(p, static_cast<int>(d)), "gl");
}

const SubgroupRecord& find_record(const std::vector<SubgroupRecord>& lattice,
                                  const PermGroup& parent, const PermGroup& sub) {
    std::vector<int> key;
    for (const Permutation& e : sub.elements()) key.push_back(parent.canonical_index(e));
    std::sort(key.begin(), key.end());
    for (const SubgroupRecord& rec : lattice)
        if (rec.element_key == key) return rec;
    throw invariant_error("subgroup is missing from the lattice");
}

std::map<long, long> order_profile(const PermGroup& g) {
    std::map<long, long> profile;
    for (const Permutation& e : g.elements())
        ++profile[static_cast<long>(e.order())];
    return profile;
}

}  // namespace

PermGroup named_group(const std::string& family, const std::vector<long>& parameters) {
    if (family == "cyclic") {
        require_param_count(family, parameters, 1);
        long n = parameters[0];
        if (n < 1) throw input_error("cyclic needs n >= 1");
        std::vector<Permutation> gens;
        if (n > 1) gens.push_back(full_cycle(static_cast<int>(n)));
        return checked(PermGroup(static_cast<int>(n), gens), n, family);
    }
    if (family == "dihedral") {
        require_param_count(family, parameters, 1);
        long n = parameters[0];
        if (n < 3) throw input_error("dihedral needs n >= 3");
        std::vector<int> reflection(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i)
            reflection[static_cast<std::size_t>(i)] = static_cast<int>((n - i) % n);
        return checked(PermGroup(static_cast<int>(n),
                                 {full_cycle(static_cast<int>(n)), Permutation(reflection)}),
                       2 * n, family);
    }
    if (family == "symmetric") {
        require_param_count(family, parameters, 1);
        long n = parameters[0];
        if (n < 1) throw input_error("symmetric needs n >= 1");
        std::vector<Permutation> gens;
        if (n >= 2) {
            std::vector<int> swap01(static_cast<std::size_t>(n));
            std::iota(swap01.begin(), swap01.end(), 0);
            swap01[0] = 1;
            swap01[1] = 0;
            gens.push_back(Permutation(swap01));
            if (n >= 3) gens.push_back(full_cycle(static_cast<int>(n)));
        }
        return checked(PermGroup(static_cast<int>(n), gens), factorial(n), family);
    }
    if (family == "alternating") {
        require_param_count(family, parameters, 1);
        long n = parameters[0];
        if (n < 3) throw input_error("alternating needs n >= 3");
        std::vector<Permutation> gens;
        for (long i = 0; i + 2 < n; ++i) {
            std::vector<int> images(static_cast<std::size_t>(n));
            std::iota(images.begin(), images.end(), 0);
            images[static_cast<std::size_t>(i)] = static_cast<int>(i + 1);
            images[static_cast<std::size_t>(i + 1)] = static_cast<int>(i + 2);
            images[static_cast<std::size_t>(i + 2)] = static_cast<int>(i);
            gens.push_back(Permutation(std::move(images)));
        }
        return checked(PermGroup(static_cast<int>(n), gens), factorial(n) / 2, family);
    }
    if (family == "product") {
        require_param_count(family, parameters, 2);
        long n = parameters[0];
        long m = parameters[1];
        if (n < 1 || m < 1) throw input_error("product needs factors >= 1");
        PermGroup left = named_group("cyclic", {n});
        PermGroup right = named_group("cyclic", {m});
        return checked(direct_product(left, right), bigint(n) * m, family);
    }
    if (family == "gl") {
        require_param_count(family, parameters, 2);
        return gl_group(parameters[0], parameters[1]);
    }
    if (family == "psl2") {
        require_param_count(family, parameters, 1);
        return psl2_group(parameters[0]);
    }
    throw input_error("unknown group family '" + family + "'");
}

MultiOrbitAction agl1(long p) {
    if (!is_prime(p)) throw input_error("the affine line needs a prime parameter");
    if (p > 100000) throw input_error("the affine line parameter is too large");
    int n = static_cast<int>(p);
    int degree = 2 * n - 1;
    // Affine points carry labels 0..p-1; the nonzero residue h sits at label
    // p + h - 1 and the group acts on those through its cyclic quotient.
    std::vector<int> shift(static_cast<std::size_t>(degree));
    std::vector<int> scale(static_cast<std::size_t>(degree));
    for (int v = 0; v < n; ++v) shift[static_cast<std::size_t>(v)] = (v + 1) % n;
    for (int h = 1; h < n; ++h) shift[static_cast<std::size_t>(n + h - 1)] = n + h - 1;
    long r = p == 2 ? 1 : primitive_root_mod(p);
    for (int v = 0; v < n; ++v)
        scale[static_cast<std::size_t>(v)] = static_cast<int>(v * r % p);
    for (int h = 1; h < n; ++h)
        scale[static_cast<std::size_t>(n + h - 1)] = static_cast<int>(n + h * r % p - 1);
    PermGroup g(degree, {Permutation(std::move(shift)), Permutation(std::move(scale))});
    if (g.order() != bigint(p) * (p - 1))
        throw invariant_error("the affine line realized the wrong order");
    MultiOrbitAction action = MultiOrbitAction::from_group(std::move(g));
    if (action.orbit_count() != 2 ||
        action.orbits()[0].size() != static_cast<std::size_t>(p) ||
        action.orbits()[1].size() != static_cast<std::size_t>(p - 1))
        throw invariant_error("the affine line realized the wrong orbits");
    return action;
}

CoveringExample two_subgroup_covering_example() {
    Presentation pr = parse_presentation(
        "gens: x, y, z, t;"
        "rels: x^4, y^4, z^2, t^3, [x, z], [y, z], [x, y] = z, x^t = y, y^t = (x*y)^-1");
    CosetEnumeration reg = todd_coxeter(pr);
    std::vector<std::string> assumptions;
    if (reg.table.coset_count != 96)
        throw invariant_error("the presentation does not close at 96 cosets");
    assumptions.push_back("the presentation closes at 96 cosets and acts regularly");

    int n = static_cast<int>(reg.table.coset_count);
    auto image_of = [&](const char* word) {
        return evaluate_word(parse_word(word, pr), reg.generator_images, n);
    };
    std::vector<Permutation> h1_gens{image_of("x^2"), image_of("y^2"), image_of("z"),
                                     image_of("t")};
    std::vector<Permutation> h2_gens{image_of("x"), image_of("y^2")};

    // Compress from the regular action to the 12 cosets of the order-8
    // subgroup; this stays faithful exactly when that subgroup has trivial
    // core, which is re-checked here.
    CosetAction compress(reg.group, PermGroup(n, h2_gens));
    if (!compress.is_faithful())
        throw invariant_error("the coset action on the order-8 subgroup is not faithful");
    if (compress.index() != 12)
        throw invariant_error("the order-8 subgroup does not have index 12");
    assumptions.push_back("the action on the 12 cosets of the order-8 subgroup is faithful");

    const PermGroup& g = compress.image();
    auto compress_all = [&](const std::vector<Permutation>& gens) {
        std::vector<Permutation> out;
        for (const Permutation& e : gens) out.push_back(compress.image_of(e));
        return out;
    };
    PermGroup h1(g.degree(), compress_all(h1_gens));
    PermGroup h2(g.degree(), compress_all(h2_gens));

    std::vector<SubgroupRecord> lattice = all_subgroups(g);
    SubgroupRecord h1_record = find_record(lattice, g, h1);
    SubgroupRecord h2_record = find_record(lattice, g, h2);

    if (h1_record.order != 24 || !h1_record.is_maximal)
        throw invariant_error("the order-24 subgroup is not maximal of order 24");
    assumptions.push_back("the first subgroup has order 24 and is maximal");

    std::map<long, long> h2_profile = order_profile(h2_record.group);
    if (h2_record.order != 8 || !h2_record.group.is_abelian() ||
        h2_profile != std::map<long, long>{{1, 1}, {2, 3}, {4, 4}})
        throw invariant_error("the order-8 subgroup is not abelian of type (4, 2)");
    assumptions.push_back("the second subgroup is abelian of order 8 and type (4, 2)");

    PermGroup normal_eight(g.degree(),
                           {compress.image_of(image_of("x^2")), compress.image_of(image_of("y^2")),
                            compress.image_of(image_of("z"))});
    if (normal_eight.order() != 8 || !is_normal_subgroup(g, normal_eight))
        throw invariant_error("the squares and the commutator do not span a normal order-8 subgroup");
    CosetAction quotient(g, normal_eight);
    std::map<long, long> q_profile = order_profile(quotient.image());
    if (quotient.index() != 12 || q_profile != std::map<long, long>{{1, 1}, {2, 3}, {3, 8}})
        throw invariant_error("the quotient by the order-8 normal subgroup is not of the expected shape");
    assumptions.push_back(
        "the squares and the commutator span a normal order-8 subgroup whose quotient has "
        "order profile 1:1, 2:3, 3:8");

    CoveringReport covering = is_normal_covering(g, {h1_record.group, h2_record.group});
    if (!covering.covered)
        throw invariant_error("the two subgroups do not cover the group");
    assumptions.push_back("every element lies in a conjugate of one of the two subgroups");

    return CoveringExample{g, std::move(h1_record), std::move(h2_record), std::move(assumptions)};
}

std::vector<CatalogEntry> default_catalog() {
    std::vector<CatalogEntry> entries;
    constexpr long kCosetHostOrderCap = 200;

    // Base entries realize their action once for the manifest data; coset
    // entries are added right away for transitive hosts of modest order, one
    // per conjugacy class of maximal subgroups.
    auto add_base = [&](const std::string& name, std::function<MultiOrbitAction()> make) {
        MultiOrbitAction probe = make();
        CatalogEntry entry;
        entry.name = name;
        entry.kind = "base";
        entry.degree = probe.domain_size();
        entry.order = probe.group().order();
        for (const auto& orbit : probe.orbits())
            entry.orbit_sizes.push_back(static_cast<int>(orbit.size()));
        entry.make = std::move(make);
        entries.push_back(std::move(entry));

        const PermGroup& g = probe.group();
        if (!g.is_transitive() || g.order() > kCosetHostOrderCap || g.degree() < 2) return;
        std::vector<SubgroupRecord> lattice = all_subgroups(g);
        std::vector<int> seen_classes;
        for (const SubgroupRecord& rec : lattice) {
            if (!rec.is_maximal) continue;
            if (std::find(seen_classes.begin(), seen_classes.end(), rec.conjugacy_class_id) !=
                seen_classes.end())
                continue;
            seen_classes.push_back(rec.conjugacy_class_id);
            CosetAction ca(g, rec.group);
            CatalogEntry coset;
            coset.name = name + " / maximal class " + std::to_string(rec.conjugacy_class_id) +
                         " (order " + rec.order.str() + ")";
            coset.kind = "coset";
            coset.degree = ca.index();
            coset.order = ca.image().order();
            coset.orbit_sizes = {ca.index()};
            std::vector<std::vector<int>> parent_images;
            for (const Permutation& p : g.generators()) parent_images.push_back(p.images());
            std::vector<std::vector<int>> sub_images;
            for (const Permutation& p : rec.group.generators()) sub_images.push_back(p.images());
            int degree = g.degree();
            coset.make = [degree, parent_images, sub_images]() {
                std::vector<Permutation> parent_gens;
                for (const auto& im : parent_images) parent_gens.push_back(Permutation(im));
                std::vector<Permutation> sub_gens;
                for (const auto& im : sub_images) sub_gens.push_back(Permutation(im));
                PermGroup parent(degree, parent_gens);
                return coset_orbit_action(CosetAction(parent, PermGroup(degree, sub_gens)));
            };
            entries.push_back(std::move(coset));
        }
    };

    auto group_action = [](std::function<PermGroup()> make_group) {
        return [make_group]() { return MultiOrbitAction::from_group(make_group()); };
    };

    for (long m = 2; m <= 32; ++m)
        add_base("cyclic(" + std::to_string(m) + ")",
                 group_action([m]() { return named_group("cyclic", {m}); }));
    for (long m = 3; m <= 16; ++m)
        add_base("dihedral(" + std::to_string(m) + ")",
                 group_action([m]() { return named_group("dihedral", {m}); }));
    for (long m = 2; m <= 6; ++m)
        add_base("symmetric(" + std::to_string(m) + ")",
                 group_action([m]() { return named_group("symmetric", {m}); }));
    for (long m = 3; m <= 7; ++m)
        add_base("alternating(" + std::to_string(m) + ")",
                 group_action([m]() { return named_group("alternating", {m}); }));
    for (long p = 2; p <= 31; ++p)
        if (is_prime(p)) add_base("affine_line(" + std::to_string(p) + ")", [p]() { return agl1(p); });
    for (long p : {5L, 7L, 11L, 13L})
        add_base("psl2(" + std::to_string(p) + ")",
                 group_action([p]() { return named_group("psl2", {p}); }));
    add_base("covering_example_96",
             group_action([]() { return two_subgroup_covering_example().group; }));

    auto affine_maker = [](long d, long p) {
        return [d, p]() {
            auto field = GF::make(p);
            AffineRealization realization =
                affine_group(field, static_cast<int>(d), gl_generators(field, static_cast<int>(d)));
            return MultiOrbitAction::from_group(realization.group);
        };
    };
    for (long p = 2; p <= 61; ++p)
        if (is_prime(p)) add_base("affine(1," + std::to_string(p) + ")", affine_maker(1, p));
    for (auto [d, p] : {std::pair<long, long>{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 5}, {2, 7}})
        add_base("affine(" + std::to_string(d) + "," + std::to_string(p) + ")", affine_maker(d, p));

    return entries;
}

std::string catalog_manifest_json(const std::vector<CatalogEntry>& entries) {
    nlohmann::json list = nlohmann::json::array();
    for (const CatalogEntry& entry : entries) {
        nlohmann::json item;
        item["name"] = entry.name;
        item["kind"] = entry.kind;
        item["degree"] = entry.degree;
        item["order"] = entry.order.str();
        item["orbit_sizes"] = entry.orbit_sizes;
        list.push_back(std::move(item));
    }
    nlohmann::json out;
    out["entry_count"] = entries.size();
    out["entries"] = std::move(list);
    return out.dump();
}

}  // namespace derange
