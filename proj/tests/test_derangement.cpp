#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <vector>

#include "derange/action.hpp"
#include "derange/derangement.hpp"
#include "derange/errors.hpp"
#include "derange/lattice.hpp"
#include "derange/matfp.hpp"
#include "derange/perm.hpp"
#include "test_util.hpp"

using derange::bigrational;
using derange::compose;
using derange::conjugate;
using derange::CosetAction;
using derange::coset_average_fixed_points;
using derange::coset_orbit_action;
using derange::DerangementReport;
using derange::disjoint_union;
using derange::find_derangement;
using derange::find_prime_power_derangement;
using derange::GF;
using derange::gl_generators;
using derange::is_derangement;
using derange::is_normal_covering;
using derange::lift_derangement;
using derange::matrix_permutation_nonzero;
using derange::MatrixFp;
using derange::MultiOrbitAction;
using derange::parse_cycles;
using derange::Permutation;
using derange::PermGroup;
using derange::verify_conjecture;

namespace {

PermGroup from_cycles(int degree, const std::vector<std::string>& cycle_strings) {
    std::vector<Permutation> gens;
    for (const auto& s : cycle_strings)
        gens.push_back(parse_cycles(s, degree));
    return PermGroup(degree, gens);
}

// The one-dimensional affine group over F_p on p points glued to its action
// on the cosets of the translation subgroup: a translation followed by
// multiplication by a primitive root acts as a (p-1)-cycle on the second
// orbit through the quotient by the translations.
MultiOrbitAction affine_line_two_orbit(int p, int primitive_root) {
    std::vector<int> t_images, m_images;
    for (int i = 0; i < p; ++i) {
        t_images.push_back((i + 1) % p);
        m_images.push_back(static_cast<int>((static_cast<long>(primitive_root) * i) % p));
    }
    for (int i = 0; i < p - 1; ++i)
        t_images.push_back(p + i);
    for (int i = 0; i < p - 1; ++i)
        m_images.push_back(p + (i + 1) % (p - 1));
    PermGroup g(2 * p - 1, {Permutation(t_images), Permutation(m_images)});
    return MultiOrbitAction::from_group(g);
}

// GL_3(2) acting on the eight cosets of an order-21 subgroup; the stabilizer
// has odd order so involutions derange everything.
PermGroup gl32_on_eight() {
    auto f2 = GF::make(2);
    std::vector<Permutation> nat;
    for (const auto& m : gl_generators(f2, 3))
        nat.push_back(matrix_permutation_nonzero(m));
    PermGroup g7(7, nat);
    MatrixFp singer(f2, 3);
    singer.set(1, 0, 1);
    singer.set(2, 1, 1);
    singer.set(0, 2, 1);
    singer.set(1, 2, 1);
    MatrixFp frob(f2, 3);
    frob.set(0, 0, 1);
    frob.set(2, 1, 1);
    frob.set(1, 2, 1);
    frob.set(2, 2, 1);
    PermGroup h21(7, {matrix_permutation_nonzero(singer), matrix_permutation_nonzero(frob)});
    return CosetAction(g7, h21).image();
}

// Brute-force covering oracle: every element must be conjugate into some
// listed subgroup, tested element by element.
bool covered_by_exhaustion(const PermGroup& g, const std::vector<PermGroup>& subs) {
    auto all = g.elements();
    std::vector<std::set<Permutation>> members;
    for (const auto& h : subs) {
        auto els = h.elements();
        members.emplace_back(els.begin(), els.end());
    }
    for (const auto& x : all) {
        bool hit = false;
        for (const auto& c : all) {
            auto moved = conjugate(x, c);
            for (const auto& set : members) {
                if (set.count(moved)) {
                    hit = true;
                    break;
                }
            }
            if (hit)
                break;
        }
        if (!hit)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("derangement predicate") {
    auto s5 = MultiOrbitAction::from_group(from_cycles(5, {"(1 2)", "(1 2 3 4 5)"}));
    CHECK_FALSE(is_derangement(Permutation::identity(5), s5));
    CHECK(is_derangement(parse_cycles("(1 2 3 4 5)", 5), s5));
    CHECK_FALSE(is_derangement(parse_cycles("(1 2 3 4)", 5), s5));
    CHECK_THROWS_AS(is_derangement(Permutation::identity(4), s5), derange::input_error);
}

TEST_CASE("the affine line with its quotient orbit has no derangement") {
    for (int p : {5, 7}) {
        INFO("p = " << p);
        auto action = affine_line_two_orbit(p, p == 5 ? 2 : 3);
        REQUIRE(action.group().order() == p * (p - 1));
        REQUIRE(action.orbit_count() == 2);

        // Element by element: multiplications fix a point of the line,
        // translations act trivially on the quotient orbit.
        for (const auto& x : action.group().elements())
            CHECK_FALSE(is_derangement(x, action));

        auto report = find_derangement(action);
        CHECK_FALSE(report.found);
        CHECK_FALSE(report.witness.has_value());
        CHECK(report.classes_examined ==
              action.group().conjugacy_classes().class_count());
    }
}

TEST_CASE("derangement search on the natural symmetric group") {
    auto report = find_derangement(MultiOrbitAction::from_group(
        from_cycles(5, {"(1 2)", "(1 2 3 4 5)"})));
    REQUIRE(report.found);
    REQUIRE(report.witness.has_value());
    // First qualifying class is the 5-cycles; its least member starts the
    // obvious cycle.
    CHECK(*report.witness == parse_cycles("(1 2 3 4 5)", 5));
    CHECK(report.witness_order == 5);
    CHECK(report.orbit_fixed_counts == std::vector<int>{0});
    CHECK(report.witness_prime == 0);
}

TEST_CASE("natural points plus cosets of the eight-element stabilizer cover S4") {
    auto s4 = from_cycles(4, {"(1 2)", "(1 2 3 4)"});
    auto d4 = from_cycles(4, {"(1 2 3 4)", "(1 3)"});
    auto glued = disjoint_union(MultiOrbitAction::from_group(s4),
                                coset_orbit_action(CosetAction(s4, d4)));
    REQUIRE(glued.domain_size() == 7);
    auto report = find_derangement(glued);
    CHECK_FALSE(report.found);
}

TEST_CASE("prime-power derangement search") {
    SECTION("natural S4 finds the double transposition first") {
        auto report = find_prime_power_derangement(
            MultiOrbitAction::from_group(from_cycles(4, {"(1 2)", "(1 2 3 4)"})));
        REQUIRE(report.found);
        CHECK(*report.witness == parse_cycles("(1 2)(3 4)", 4));
        CHECK(report.witness_order == 2);
        CHECK(report.witness_prime == 2);
    }
    SECTION("regular C6 skips the order-6 elements") {
        auto report = find_prime_power_derangement(
            MultiOrbitAction::from_group(from_cycles(6, {"(1 2 3 4 5 6)"})));
        REQUIRE(report.found);
        CHECK(*report.witness == parse_cycles("(1 4)(2 5)(3 6)", 6));
        CHECK(report.witness_order == 2);
        CHECK(report.witness_prime == 2);
    }
    SECTION("odd stabilizer order forces an involution witness") {
        auto g8 = gl32_on_eight();
        REQUIRE(g8.order() == 168);
        auto report = find_prime_power_derangement(MultiOrbitAction::from_group(g8));
        REQUIRE(report.found);
        CHECK(report.witness->fixed_point_count() == 0);
        CHECK(report.witness_order == 2);
        CHECK(report.witness_prime == 2);
    }
    SECTION("every transitive sample action yields a witness") {
        std::vector<PermGroup> samples;
        samples.push_back(from_cycles(3, {"(1 2)", "(1 2 3)"}));
        samples.push_back(from_cycles(4, {"(1 2 3)", "(2 3 4)"}));
        samples.push_back(from_cycles(4, {"(1 2 3 4)", "(1 3)"}));
        samples.push_back(from_cycles(6, {"(1 2 3 4 5 6)"}));
        samples.push_back(from_cycles(7, {"(1 2 3 4 5 6 7)", "(1 3 2 6 4 5)"}));
        for (const auto& g : samples) {
            INFO("degree " << g.degree());
            auto full = find_derangement(MultiOrbitAction::from_group(g));
            auto prime = find_prime_power_derangement(MultiOrbitAction::from_group(g));
            CHECK(full.found);
            CHECK(prime.found);
            long p = 0;
            REQUIRE(prime.witness->has_prime_power_order(&p));
            CHECK(p == prime.witness_prime);
        }
    }
    SECTION("a one-point transitive domain is rejected") {
        CHECK_THROWS_AS(
            find_prime_power_derangement(MultiOrbitAction::from_group(PermGroup::trivial(1))),
            derange::input_error);
    }
}

TEST_CASE("normal covering of S4 by the point stabilizer and the dihedral subgroup") {
    auto s4 = from_cycles(4, {"(1 2)", "(1 2 3 4)"});
    auto s3 = from_cycles(4, {"(1 2)", "(1 2 3)"});
    auto d4 = from_cycles(4, {"(1 2 3 4)", "(1 3)"});

    auto both = is_normal_covering(s4, {s3, d4});
    CHECK(both.covered);
    CHECK(both.cross_checked);
    CHECK_FALSE(both.uncovered_witness.has_value());
    CHECK(covered_by_exhaustion(s4, {s3, d4}));

    auto only_s3 = is_normal_covering(s4, {s3});
    CHECK_FALSE(only_s3.covered);
    REQUIRE(only_s3.uncovered_witness.has_value());
    // Double transpositions fix nothing, so they avoid every point
    // stabilizer; theirs is the first uncovered class.
    CHECK(*only_s3.uncovered_witness == parse_cycles("(1 2)(3 4)", 4));
    CHECK_FALSE(covered_by_exhaustion(s4, {s3}));

    auto only_d4 = is_normal_covering(s4, {d4});
    CHECK_FALSE(only_d4.covered);
    CHECK_FALSE(covered_by_exhaustion(s4, {d4}));
}

TEST_CASE("covering verdicts match the exhaustive oracle across subgroup pairs") {
    auto s4 = from_cycles(4, {"(1 2)", "(1 2 3 4)"});
    auto lattice = derange::all_subgroups(s4);
    // All unordered pairs of nontrivial proper subgroups of order above two;
    // small ones keep the oracle cheap while exercising both verdicts.
    std::vector<int> chosen;
    for (std::size_t i = 0; i < lattice.size(); ++i)
        if (lattice[i].order >= 3 && lattice[i].order < 24)
            chosen.push_back(static_cast<int>(i));
    int covered_count = 0;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        for (std::size_t b = a; b < chosen.size(); ++b) {
            const auto& first = lattice[static_cast<std::size_t>(chosen[a])].group;
            const auto& second = lattice[static_cast<std::size_t>(chosen[b])].group;
            auto report = is_normal_covering(s4, {first, second});
            bool expect = covered_by_exhaustion(s4, {first, second});
            CHECK(report.covered == expect);
            if (report.covered)
                ++covered_count;
        }
    }
    // The point-stabilizer with dihedral pairs are among the covering ones.
    CHECK(covered_count > 0);
}

TEST_CASE("alternating group is covered by its Klein four and three-cycle subgroups") {
    auto a4 = from_cycles(4, {"(1 2 3)", "(2 3 4)"});
    auto v4 = from_cycles(4, {"(1 2)(3 4)", "(1 3)(2 4)"});
    auto c3 = from_cycles(4, {"(1 2 3)"});
    auto report = is_normal_covering(a4, {v4, c3});
    CHECK(report.covered);
    CHECK(covered_by_exhaustion(a4, {v4, c3}));
}

TEST_CASE("covering input validation") {
    auto s4 = from_cycles(4, {"(1 2)", "(1 2 3 4)"});
    auto a4 = from_cycles(4, {"(1 2 3)", "(2 3 4)"});
    auto s3 = from_cycles(4, {"(1 2)", "(1 2 3)"});
    CHECK_THROWS_AS(is_normal_covering(s4, {}), derange::input_error);
    CHECK_THROWS_AS(is_normal_covering(s4, {s4}), derange::input_error);
    CHECK_THROWS_AS(is_normal_covering(a4, {s3}), derange::input_error);
    CHECK_THROWS_AS(is_normal_covering(s4, {from_cycles(3, {"(1 2)"})}), derange::input_error);
}

TEST_CASE("coset averages of fixed points are exactly one") {
    SECTION("identity coset is the plain orbit-counting average") {
        auto s4 = from_cycles(4, {"(1 2)", "(1 2 3 4)"});
        CHECK(coset_average_fixed_points(s4, Permutation::identity(4)) == bigrational(1));
    }
    SECTION("regular C3 against every permutation of three points") {
        auto c3 = from_cycles(3, {"(1 2 3)"});
        for (const auto& h : testutil::all_perms(3))
            CHECK(coset_average_fixed_points(c3, h) == bigrational(1));
    }
    SECTION("natural S4 against every permutation of four points") {
        auto s4 = from_cycles(4, {"(1 2)", "(1 2 3 4)"});
        for (const auto& h : testutil::all_perms(4))
            CHECK(coset_average_fixed_points(s4, h) == bigrational(1));
    }
    SECTION("regular C6 against every permutation of six points") {
        auto c6 = from_cycles(6, {"(1 2 3 4 5 6)"});
        for (const auto& h : testutil::all_perms(6))
            CHECK(coset_average_fixed_points(c6, h) == bigrational(1));
    }
    SECTION("transitive coset image of GL_3(2)") {
        auto g8 = gl32_on_eight();
        CHECK(coset_average_fixed_points(g8, Permutation::identity(8)) == bigrational(1));
        CHECK(coset_average_fixed_points(g8, parse_cycles("(1 2)", 8)) == bigrational(1));
    }
    SECTION("intransitive groups are rejected") {
        auto c2 = from_cycles(4, {"(1 2)"});
        CHECK_THROWS_AS(coset_average_fixed_points(c2, Permutation::identity(4)),
                        derange::input_error);
    }
}

TEST_CASE("derangement lifting through a transitive kernel") {
    SECTION("product of coprime cycles on two orbits") {
        auto g = from_cycles(8, {"(1 2 3)", "(4 5 6 7 8)"});
        auto action = MultiOrbitAction::from_group(g);
        REQUIRE(action.orbit_count() == 2);
        auto lifted = lift_derangement(action);
        REQUIRE(lifted.applicable);
        REQUIRE(lifted.found);
        CHECK(lifted.witness->fixed_point_count() == 0);
        CHECK(lifted.witness_prime == 3);
        CHECK(lifted.orbit_fixed_counts == std::vector<int>{0, 0});
        // The exhaustive search agrees and, on this instance, lands on the
        // same element.
        auto direct = find_derangement(action);
        REQUIRE(direct.found);
        CHECK(*lifted.witness == *direct.witness);
    }
    SECTION("non-abelian first orbit") {
        auto g = from_cycles(8, {"(1 2 3)", "(1 2)", "(4 5 6 7 8)"});
        REQUIRE(g.order() == 30);
        auto lifted = lift_derangement(MultiOrbitAction::from_group(g));
        REQUIRE(lifted.applicable);
        REQUIRE(lifted.found);
        CHECK(lifted.witness->fixed_point_count() == 0);
        CHECK(lifted.witness_prime == 3);
    }
    SECTION("faithful first orbit leaves a trivial kernel") {
        auto lifted = lift_derangement(affine_line_two_orbit(5, 2));
        CHECK_FALSE(lifted.applicable);
        CHECK_FALSE(lifted.found);
        CHECK_FALSE(lifted.witness.has_value());
        REQUIRE(lifted.notes.size() == 1);
        CHECK(lifted.notes[0].find("kernel") != std::string::npos);
    }
    SECTION("shared prime between the orbit sizes") {
        auto g = from_cycles(5, {"(1 2)", "(3 4 5)"});
        auto lifted = lift_derangement(MultiOrbitAction::from_group(g));
        CHECK_FALSE(lifted.applicable);
        CHECK_FALSE(lifted.found);
        REQUIRE_FALSE(lifted.notes.empty());
        CHECK(lifted.notes[0].find("prime 2") != std::string::npos);
    }
    SECTION("orbit count must be two") {
        auto s4 = MultiOrbitAction::from_group(from_cycles(4, {"(1 2)", "(1 2 3 4)"}));
        CHECK_THROWS_AS(lift_derangement(s4), derange::input_error);
        auto three = MultiOrbitAction::from_group(from_cycles(6, {"(1 2)", "(3 4)", "(5 6)"}));
        CHECK_THROWS_AS(lift_derangement(three), derange::input_error);
    }
}

TEST_CASE("equal-order covering sweeps find no counterexample") {
    struct Entry {
        const char* name;
        PermGroup group;
        long expected_pairs;
    };
    std::vector<Entry> entries;
    entries.push_back({"S4", from_cycles(4, {"(1 2)", "(1 2 3 4)"}), 14});
    entries.push_back({"C5", from_cycles(5, {"(1 2 3 4 5)"}), 1});
    entries.push_back({"C6", from_cycles(6, {"(1 2 3 4 5 6)"}), 3});
    entries.push_back({"D4", from_cycles(4, {"(1 2 3 4)", "(1 3)"}), 13});
    entries.push_back({"A4", from_cycles(4, {"(1 2 3)", "(2 3 4)"}), 4});
    entries.push_back({"Q8", from_cycles(8, {"(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"}), 8});
    for (const auto& entry : entries) {
        INFO(entry.name);
        auto report = verify_conjecture(entry.group);
        CHECK(report.verified);
        CHECK(report.counterexamples.empty());
        CHECK(report.pairs_checked == entry.expected_pairs);
    }
}

TEST_CASE("conjecture sweep respects the lattice cap") {
    auto c5 = from_cycles(5, {"(1 2 3 4 5)"});
    CHECK_THROWS_AS(verify_conjecture(c5, 2), derange::cap_error);
}
