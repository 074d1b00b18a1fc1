#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "derange/errors.hpp"
#include "derange/group.hpp"
#include "derange/perm.hpp"
#include "test_util.hpp"

using namespace derange;

namespace {

PermGroup make(int degree, std::initializer_list<const char*> cycles) {
    std::vector<Permutation> gens;
    for (const char* c : cycles)
        gens.push_back(parse_cycles(c, degree));
    return PermGroup(degree, gens);
}

std::vector<Permutation> gens_of(int degree, std::initializer_list<const char*> cycles) {
    std::vector<Permutation> gens;
    for (const char* c : cycles)
        gens.push_back(parse_cycles(c, degree));
    return gens;
}

}  // namespace

TEST_CASE("chain order and membership match multiplication closure") {
    struct Case {
        int degree;
        std::vector<Permutation> gens;
    };
    std::vector<Case> cases = {
        {3, gens_of(3, {"(1 2)", "(1 2 3)"})},                  // S3
        {6, gens_of(6, {"(1 2 3 4 5 6)"})},                     // C6
        {4, gens_of(4, {"(1 2 3 4)", "(1 3)"})},                // D4
        {4, gens_of(4, {"(1 2 3)", "(2 3 4)"})},                // A4
        {5, gens_of(5, {"(1 2)", "(1 2 3 4 5)"})},              // S5
        {8, gens_of(8, {"(1 2 3 4)(5 8 6 7)", "(1 5 3 6)(2 7 4 8)"})},  // quaternion
        {7, gens_of(7, {"(1 2 3)", "(4 5)", "(6 7)"})},         // intransitive
        {5, gens_of(5, {})},                                    // trivial
    };
    for (const auto& c : cases) {
        PermGroup g(c.degree, c.gens);
        auto brute = testutil::closure(c.degree, c.gens);
        REQUIRE(g.order() == static_cast<long>(brute.size()));
        REQUIRE(g.canonical_elements() == brute);
        for (const auto& p : testutil::all_perms(c.degree)) {
            bool in_brute = std::binary_search(brute.begin(), brute.end(), p);
            REQUIRE(g.contains(p) == in_brute);
        }
    }
}

TEST_CASE("quaternion group has the right element order profile") {
    PermGroup q8 = make(8, {"(1 2 3 4)(5 8 6 7)", "(1 5 3 6)(2 7 4 8)"});
    REQUIRE(q8.order() == 8);
    std::map<long, int> order_counts;
    for (const auto& e : q8.canonical_elements())
        order_counts[static_cast<long>(e.order())]++;
    REQUIRE(order_counts == std::map<long, int>{{1, 1}, {2, 1}, {4, 6}});
}

TEST_CASE("construction is deterministic") {
    auto gens = gens_of(5, {"(1 2)", "(1 2 3 4 5)"});
    PermGroup a(5, gens);
    PermGroup b(5, gens);
    REQUIRE(a.base() == b.base());
    REQUIRE(a.generators() == b.generators());
    REQUIRE(a.canonical_elements() == b.canonical_elements());
}

TEST_CASE("point stabilizers via prescribed base") {
    PermGroup s4 = make(4, {"(1 2)", "(1 2 3 4)"});
    PermGroup stab0 = s4.point_stabilizer(0);
    REQUIRE(stab0.order() == 6);
    REQUIRE(stab0.contains(parse_cycles("(2 3)", 4)));
    REQUIRE(stab0.contains(parse_cycles("(2 3 4)", 4)));
    REQUIRE_FALSE(stab0.contains(parse_cycles("(1 2)", 4)));

    PermGroup stab01 = s4.pointwise_stabilizer({0, 1});
    REQUIRE(stab01.order() == 2);
    REQUIRE(stab01.contains(parse_cycles("(3 4)", 4)));

    // Orbit-stabilizer: |G| = |orbit| * |stabilizer|.
    for (const auto* g : {&s4}) {
        for (int pt = 0; pt < g->degree(); ++pt) {
            std::size_t orbit_size = 0;
            std::vector<char> seen(static_cast<std::size_t>(g->degree()), 0);
            std::vector<int> queue{pt};
            seen[static_cast<std::size_t>(pt)] = 1;
            orbit_size = 1;
            for (std::size_t qi = 0; qi < queue.size(); ++qi)
                for (const auto& s : g->generators()) {
                    int img = s(queue[qi]);
                    if (!seen[static_cast<std::size_t>(img)]) {
                        seen[static_cast<std::size_t>(img)] = 1;
                        queue.push_back(img);
                        ++orbit_size;
                    }
                }
            REQUIRE(g->order() == g->point_stabilizer(pt).order() * static_cast<long>(orbit_size));
        }
    }
}

TEST_CASE("pointwise stabilizer fixes exactly the requested points") {
    PermGroup s6 = make(6, {"(1 2)", "(1 2 3 4 5 6)"});
    PermGroup fix = s6.pointwise_stabilizer({1, 3});
    REQUIRE(fix.order() == 24);  // symmetric group on the other four points
    for (const auto& e : fix.canonical_elements()) {
        REQUIRE(e(1) == 1);
        REQUIRE(e(3) == 3);
    }
}

TEST_CASE("enumeration cap is loud") {
    PermGroup s6 = make(6, {"(1 2)", "(1 2 3 4 5 6)"});
    REQUIRE_THROWS_AS(s6.elements(100), cap_error);
    REQUIRE_THROWS_AS(s6.canonical_elements(100), cap_error);
}

TEST_CASE("conjugacy classes of S4 in canonical order") {
    PermGroup s4 = make(4, {"(1 2)", "(1 2 3 4)"});
    const auto& table = s4.conjugacy_classes();
    REQUIRE(table.class_count() == 5);
    REQUIRE(table.sizes == std::vector<bigint>{1, 6, 3, 8, 6});
    REQUIRE(table.rep_orders == std::vector<bigint>{1, 2, 2, 3, 4});
    REQUIRE(table.representatives[0] == Permutation::identity(4));
    REQUIRE(table.representatives[1] == parse_cycles("(3 4)", 4));
    REQUIRE(table.representatives[2] == parse_cycles("(1 2)(3 4)", 4));
    REQUIRE(table.representatives[3] == parse_cycles("(2 3 4)", 4));
    REQUIRE(table.representatives[4] == parse_cycles("(1 2 3 4)", 4));

    // Each representative is the least member of its class, and class_of is
    // consistent with brute-force conjugation.
    const auto& elems = s4.canonical_elements();
    bigint total = 0;
    for (int c = 0; c < table.class_count(); ++c)
        total += table.sizes[static_cast<std::size_t>(c)];
    REQUIRE(total == s4.order());
    for (const auto& x : elems) {
        int c = table.class_of.at(x);
        REQUIRE_FALSE(x < table.representatives[static_cast<std::size_t>(c)]);
        for (const auto& y : elems)
            REQUIRE(table.class_of.at(conjugate(x, y)) == c);
    }
}

TEST_CASE("fixed point count is constant on conjugacy classes") {
    PermGroup a4 = make(4, {"(1 2 3)", "(2 3 4)"});
    const auto& table = a4.conjugacy_classes();
    for (const auto& x : a4.canonical_elements()) {
        int c = table.class_of.at(x);
        REQUIRE(x.fixed_point_count() ==
                table.representatives[static_cast<std::size_t>(c)].fixed_point_count());
    }
}

TEST_CASE("cyclic group classes are singletons ordered by element order") {
    PermGroup c6 = make(6, {"(1 2 3 4 5 6)"});
    const auto& table = c6.conjugacy_classes();
    REQUIRE(table.class_count() == 6);
    REQUIRE(table.rep_orders == std::vector<bigint>{1, 2, 3, 3, 6, 6});
    for (const auto& s : table.sizes)
        REQUIRE(s == 1);
}

TEST_CASE("normality checks") {
    PermGroup s4 = make(4, {"(1 2)", "(1 2 3 4)"});
    PermGroup a4 = make(4, {"(1 2 3)", "(2 3 4)"});
    PermGroup v4 = make(4, {"(1 2)(3 4)", "(1 3)(2 4)"});
    PermGroup s3_in_s4 = make(4, {"(2 3)", "(2 3 4)"});
    REQUIRE(is_normal_subgroup(s4, a4));
    REQUIRE(is_normal_subgroup(s4, v4));
    REQUIRE(is_normal_subgroup(a4, v4));
    REQUIRE_FALSE(is_normal_subgroup(s4, s3_in_s4));
}

TEST_CASE("basic predicates") {
    REQUIRE(make(6, {"(1 2 3 4 5 6)"}).is_abelian());
    REQUIRE_FALSE(make(3, {"(1 2)", "(1 2 3)"}).is_abelian());
    REQUIRE(make(4, {"(1 2)", "(1 2 3 4)"}).is_transitive());
    REQUIRE_FALSE(make(4, {"(2 3)", "(2 3 4)"}).is_transitive());
    REQUIRE(make(4, {"(2 3)", "(2 3 4)"}).support() == std::vector<int>{1, 2, 3});
    REQUIRE(PermGroup::trivial(5).order() == 1);
    REQUIRE(PermGroup::trivial(5).canonical_elements() ==
            std::vector<Permutation>{Permutation::identity(5)});
}

TEST_CASE("generator degree mismatches are rejected") {
    REQUIRE_THROWS_AS(PermGroup(4, {parse_cycles("(1 2 3 4 5)", 5)}), input_error);
    PermGroup s4 = make(4, {"(1 2)", "(1 2 3 4)"});
    REQUIRE_THROWS_AS(s4.contains(parse_cycles("(1 2)", 5)), input_error);
}
