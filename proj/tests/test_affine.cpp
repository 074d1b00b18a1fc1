#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "derange/action.hpp"
#include "derange/affine.hpp"
#include "derange/errors.hpp"
#include "derange/matfp.hpp"

using namespace derange;

namespace {

MatrixFp mat2(const std::shared_ptr<const GF>& f, long a, long b, long c, long d) {
    MatrixFp m(f, 2);
    m.set(0, 0, a);
    m.set(0, 1, b);
    m.set(1, 0, c);
    m.set(1, 1, d);
    return m;
}

}  // namespace

TEST_CASE("affine maps translate first, then act linearly") {
    auto f5 = GF::make(5);
    MatrixFp two(f5, 1);
    two.set(0, 0, 2);
    AffineMap am({3}, two);
    CHECK(am.apply({0}) == std::vector<long>{1});  // (0+3)*2 = 6 = 1
    CHECK(am.apply({4}) == std::vector<long>{4});  // (4+3)*2 = 14 = 4

    Permutation p = am.as_permutation();
    CHECK(p.degree() == 5);
    CHECK(p(0) == 1);
    CHECK(p(4) == 4);

    // Composition convention matches compose(): apply am then am2.
    AffineMap am2({1}, MatrixFp::identity(f5, 1));
    Permutation q = am2.as_permutation();
    CHECK(compose(p, q)(0) == 2);

    CHECK_THROWS_AS(AffineMap({5}, two), input_error);
    CHECK_THROWS_AS(AffineMap({0, 0}, two), input_error);
}

TEST_CASE("affine group realizations") {
    SECTION("AGL_1(5) has order 20") {
        auto f5 = GF::make(5);
        MatrixFp gen(f5, 1);
        gen.set(0, 0, f5->primitive_element());
        AffineRealization ar = affine_group(f5, 1, {gen});
        CHECK(ar.group.order() == 20);
        CHECK(ar.translations.order() == 5);
        CHECK(ar.linear_part.order() == 4);
        CHECK(ar.group.is_transitive());
        CHECK(is_primitive(ar.group).primitive);
    }
    SECTION("full affine group of F_2^2 is S_4") {
        auto f2 = GF::make(2);
        AffineRealization ar = affine_group(f2, 2, gl_generators(f2, 2));
        CHECK(ar.group.order() == 24);
        CHECK(ar.group.degree() == 4);
        CHECK(ar.linear_part.order() == 6);
    }
    SECTION("trivial linear part gives the regular translation group") {
        auto f3 = GF::make(3);
        AffineRealization ar = affine_group(f3, 1, {});
        CHECK(ar.group.order() == 3);
        CHECK(ar.translations.order() == 3);
        CHECK(ar.linear_part.is_trivial());
    }
    SECTION("primitivity tracks irreducibility of the linear part") {
        auto f3 = GF::make(3);
        MatrixFp diag = mat2(f3, 2, 0, 0, 1);
        AffineRealization red = affine_group(f3, 2, {diag});
        CHECK_FALSE(is_primitive(red.group).primitive);
        CHECK_FALSE(is_irreducible({diag}).irreducible);

        MatrixFp rot = mat2(f3, 0, 2, 1, 0);
        AffineRealization irr = affine_group(f3, 2, {rot});
        CHECK(is_primitive(irr.group).primitive);
        CHECK(is_irreducible({rot}).irreducible);
    }
    SECTION("caps and validation") {
        auto f2 = GF::make(2);
        CHECK_THROWS_AS(affine_group(f2, 5, {}, 16), cap_error);
        CHECK_THROWS_AS(affine_group(GF::make(2, 2), 1, {}), input_error);
        MatrixFp sing(f2, 2);
        sing.set(0, 0, 1);
        CHECK_THROWS_AS(affine_group(f2, 2, {sing}), input_error);
    }
}

TEST_CASE("fixed space congruence") {
    auto f2 = GF::make(2);
    SECTION("order 3 element of GL_2(2)") {
        MatrixFp g = mat2(f2, 0, 1, 1, 1);
        REQUIRE(g.order() == 3);
        CongruenceCheck c = check_fixed_space_congruence(g, 2, 2);
        CHECK(c.hypothesis_met);  // 3 | 2^2-1, coprime to 2^1-1
        CHECK(c.fixed_dim == 0);
        CHECK(c.ambient_dim == 2);
        CHECK(c.congruent);  // 0 == 2 mod 2
    }
    SECTION("identity with e = 1") {
        CongruenceCheck c = check_fixed_space_congruence(MatrixFp::identity(f2, 2), 2, 1);
        CHECK(c.hypothesis_met);
        CHECK(c.fixed_dim == 2);
        CHECK(c.congruent);
    }
    SECTION("hypothesis failure is reported, not thrown") {
        MatrixFp g = mat2(f2, 1, 1, 0, 1);  // order 2; 2 does not divide 2^e-1
        CongruenceCheck c = check_fixed_space_congruence(g, 2, 2);
        CHECK_FALSE(c.hypothesis_met);
    }
    SECTION("congruence holds across every eligible element, several fields") {
        struct Sweep {
            long p;
            int d;
            long q;
            long e;
        };
        // (q, e) pairs chosen so that eligible orders exist: orders dividing
        // q^e - 1 and coprime to all smaller q^i - 1.
        for (Sweep s : {Sweep{2, 2, 2, 2}, Sweep{2, 3, 2, 3}, Sweep{3, 2, 3, 2}}) {
            auto field = GF::make(s.p);
            long cells = 1;
            for (int i = 0; i < s.d * s.d; ++i)
                cells *= s.p;
            long eligible = 0;
            for (long code = 0; code < cells; ++code) {
                MatrixFp m(field, s.d);
                long rest = code;
                for (int r = 0; r < s.d; ++r)
                    for (int c = 0; c < s.d; ++c) {
                        m.set(r, c, rest % s.p);
                        rest /= s.p;
                    }
                if (!m.is_invertible())
                    continue;
                CongruenceCheck c = check_fixed_space_congruence(m, s.q, s.e);
                if (!c.hypothesis_met)
                    continue;
                ++eligible;
                INFO("p=" << s.p << " d=" << s.d << " e=" << s.e << " code=" << code);
                REQUIRE(c.congruent);
            }
            CHECK(eligible > 0);
        }
    }
    SECTION("GL_2(4) elements as 4x4 matrices over F_2") {
        auto f4 = GF::make(2, 2);
        auto f2p = GF::make(2);
        // Sweep all of GL_2(4) through the blowup with q = 4.
        long eligible = 0;
        for (long code = 0; code < 256; ++code) {
            MatrixFp m(f4, 2);
            long rest = code;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    m.set(r, c, rest % 4);
                    rest /= 4;
                }
            if (!m.is_invertible())
                continue;
            MatrixFp big = subfield_blowup(m, f2p);
            CongruenceCheck c = check_fixed_space_congruence(big, 4, 2);
            if (!c.hypothesis_met)
                continue;
            ++eligible;
            REQUIRE(c.ambient_dim == 2);
            REQUIRE(c.congruent);
        }
        CHECK(eligible > 0);  // order-5 and order-15 elements qualify
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(check_fixed_space_congruence(MatrixFp::identity(f2, 2), 3, 1),
                        input_error);
        CHECK_THROWS_AS(check_fixed_space_congruence(MatrixFp::identity(f2, 3), 4, 1),
                        input_error);
        CHECK_THROWS_AS(check_fixed_space_congruence(MatrixFp::identity(f2, 2), 2, 0),
                        input_error);
        CHECK_THROWS_AS(check_fixed_space_congruence(MatrixFp(f2, 2), 2, 1), input_error);
    }
}

TEST_CASE("affine two-orbit witness") {
    auto f2 = GF::make(2);
    std::vector<MatrixFp> gl22 = gl_generators(f2, 2);
    MatrixFp h = mat2(f2, 1, 1, 0, 1);      // transvection, order 2
    MatrixFp c3 = mat2(f2, 0, 1, 1, 1);     // order 3
    std::vector<MatrixFp> m_gens{c3};

    SECTION("the worked example verifies end to end") {
        // im(h-1) = span{(1,0)}, so v = (0,1) is admissible.
        AffineWitnessReport rep = affine_derangement_from(gl22, m_gens, h, {0, 1});
        REQUIRE(rep.ok);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.verified);
        CHECK(rep.domain_points == 4);
        CHECK(rep.coset_points == 2);
        CHECK(rep.witness->translation() == std::vector<long>{0, 1});
        CHECK(rep.witness->linear() == h.inverse());
    }
    SECTION("v inside the image is rejected by name") {
        AffineWitnessReport rep = affine_derangement_from(gl22, m_gens, h, {1, 0});
        CHECK_FALSE(rep.ok);
        REQUIRE(rep.failures.size() == 1);
        CHECK(rep.failures.front() == "v lies in the image of h - 1");
    }
    SECTION("fixed-point-free h - 1 leaves no admissible v") {
        AffineWitnessReport rep = affine_derangement_from(gl22, m_gens, c3, {0, 1});
        CHECK_FALSE(rep.ok);
        REQUIRE_FALSE(rep.failures.empty());
        CHECK(rep.failures.front() == "no admissible v: h - 1 is invertible");
    }
    SECTION("h fixing a coset is rejected") {
        // Take M = <h>; h fixes the coset M itself.
        AffineWitnessReport rep = affine_derangement_from(gl22, {h}, h, {0, 1});
        CHECK_FALSE(rep.ok);
        REQUIRE_FALSE(rep.failures.empty());
        CHECK(rep.failures.front() == "h fixes a coset of M in the linear group");
    }
    SECTION("h outside the linear group is a named failure") {
        AffineWitnessReport rep = affine_derangement_from({c3}, {}, h, {0, 1});
        CHECK_FALSE(rep.ok);
        REQUIRE_FALSE(rep.failures.empty());
        CHECK(rep.failures.front() == "h is not in the linear group");
    }
    SECTION("M outside the linear group is a named failure") {
        AffineWitnessReport rep = affine_derangement_from({c3}, {h}, c3, {0, 1});
        CHECK_FALSE(rep.ok);
        CHECK(std::find(rep.failures.begin(), rep.failures.end(),
                        "M is not a subgroup of the linear group") != rep.failures.end());
    }
}

TEST_CASE("isbell witness search") {
    auto f2 = GF::make(2);
    SECTION("GL_3(2) on eight points with the natural representation") {
        std::vector<MatrixFp> gens = gl_generators(f2, 3);
        std::vector<Permutation> nat;
        for (const auto& m : gens)
            nat.push_back(matrix_permutation_nonzero(m));
        PermGroup g7(7, nat);
        REQUIRE(g7.order() == 168);

        // Subgroup of order 21: multiplication by x on F_8 = F_2[x]/(x^3+x+1)
        // plus the squaring map, both linear over F_2 on the basis 1, x, x^2.
        MatrixFp singer(f2, 3);
        singer.set(1, 0, 1);  // x * 1 = x
        singer.set(2, 1, 1);  // x * x = x^2
        singer.set(0, 2, 1);  // x * x^2 = x + 1
        singer.set(1, 2, 1);
        MatrixFp frob(f2, 3);
        frob.set(0, 0, 1);  // 1^2 = 1
        frob.set(2, 1, 1);  // x^2
        frob.set(1, 2, 1);  // (x^2)^2 = x^2 + x
        frob.set(2, 2, 1);
        PermGroup h21(7, {matrix_permutation_nonzero(singer), matrix_permutation_nonzero(frob)});
        REQUIRE(h21.order() == 21);

        CosetAction ca(g7, h21);
        REQUIRE(ca.index() == 8);
        PermGroup g8 = ca.image();
        REQUIRE(g8.order() == 168);
        REQUIRE(g8.generators().size() == gens.size());

        IsbellReport rep = isbell_witness(g8, gens);
        REQUIRE(rep.applicable);
        REQUIRE(rep.found);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->fixed_point_count() == 0);
        CHECK(rep.witness->order() == 2);  // first derangement class is the involutions
        CHECK(g8.contains(*rep.witness));
        REQUIRE_FALSE(rep.fixed_vector.empty());
        CHECK(std::any_of(rep.fixed_vector.begin(), rep.fixed_vector.end(),
                          [](long x) { return x != 0; }));
    }
    SECTION("intransitive input is skipped by name") {
        std::vector<MatrixFp> gens = gl_generators(f2, 3);
        std::vector<Permutation> perms;
        for (const auto& m : gens)
            perms.push_back(matrix_permutation_full(m));
        PermGroup g(8, perms);  // fixes the zero vector
        IsbellReport rep = isbell_witness(g, gens);
        CHECK_FALSE(rep.applicable);
        REQUIRE_FALSE(rep.skipped_reasons.empty());
        CHECK(rep.skipped_reasons.front() == "group is not transitive");
    }
    SECTION("non-faithful generator images are skipped") {
        std::vector<MatrixFp> gens = gl_generators(f2, 3);
        AffineRealization ar = affine_group(f2, 3, gens);
        // Sending every generator to the identity is a homomorphism but not
        // a faithful one.
        std::vector<MatrixFp> rho(ar.group.generators().size(), MatrixFp::identity(f2, 3));
        IsbellReport rep = isbell_witness(ar.group, rho);
        CHECK_FALSE(rep.applicable);
        CHECK(std::find(rep.skipped_reasons.begin(), rep.skipped_reasons.end(),
                        "representation is not faithful") != rep.skipped_reasons.end());
    }
    SECTION("non-homomorphism is skipped") {
        // C_5 regular; sending its generator to multiplication by 2 (order
        // 4 in GL_1(5)) violates the order-5 relation.
        PermGroup c5(5, {parse_cycles("(1 2 3 4 5)", 5)});
        auto f5 = GF::make(5);
        MatrixFp m(f5, 1);
        m.set(0, 0, 2);
        IsbellReport rep = isbell_witness(c5, {m});
        CHECK_FALSE(rep.applicable);
        CHECK(rep.skipped_reasons ==
              std::vector<std::string>{"generator images do not define a homomorphism"});
    }
}

TEST_CASE("unipotent subfield report") {
    SECTION("m = 3, p = 2") {
        SubfieldUnipotentReport rep = subfield_unipotent_check(3, 2);
        CHECK(rep.in_stated_range);
        CHECK(rep.index == 1080);
        CHECK(rep.index_valuation == 3);
        CHECK_FALSE(rep.index_divisible);  // 2^6 = 64 does not divide 1080
        CHECK(rep.unipotent_count == 4096);  // 4^6
        CHECK(rep.class_count == 3);
        CHECK(rep.all_classes_meet_subgroup);
        CHECK(rep.class_notes.size() == 3);
    }
    SECTION("m = 2, p = 2 computes but flags the range") {
        SubfieldUnipotentReport rep = subfield_unipotent_check(2, 2);
        CHECK_FALSE(rep.in_stated_range);
        CHECK(rep.unipotent_count == 16);  // 4^2
        CHECK(rep.class_count == 2);
        CHECK(rep.all_classes_meet_subgroup);
    }
    SECTION("m = 1 is degenerate but well defined") {
        SubfieldUnipotentReport rep = subfield_unipotent_check(1, 3);
        CHECK_FALSE(rep.in_stated_range);
        CHECK(rep.unipotent_count == 1);
        CHECK(rep.class_count == 1);
        CHECK(rep.all_classes_meet_subgroup);
    }
    SECTION("scale cap") {
        CHECK_THROWS_AS(subfield_unipotent_check(3, 3), cap_error);
        CHECK_THROWS_AS(subfield_unipotent_check(0, 2), input_error);
        CHECK_THROWS_AS(subfield_unipotent_check(2, 4), input_error);
    }
}
