#include <set>
#include <tuple>

#include <catch2/catch_amalgamated.hpp>
#include "derange/errors.hpp"
#include "derange/numeric.hpp"

using namespace derange;

TEST_CASE("p-adic valuation on small inputs") {
    CHECK(v_p(96, 2) == 5);
    CHECK(v_p(1, 3) == 0);
    CHECK(v_p(20, 5) == 1);
    CHECK(v_p(bigint("1000000000000000000000000"), 2) == 24);
    CHECK(v_p(7, 7) == 1);
    CHECK_THROWS_AS(v_p(0, 2), input_error);
    CHECK_THROWS_AS(v_p(8, 4), input_error);
    CHECK_THROWS_AS(v_p(8, 1), input_error);
}

TEST_CASE("digit sums in prime bases") {
    CHECK(digit_sum(0, 2) == 0);
    CHECK(digit_sum(8, 2) == 1);
    CHECK(digit_sum(7, 2) == 3);
    CHECK(digit_sum(100, 3) == 4);  // 100 = 10201_3
    CHECK(digit_sum(97, 97) == 1);
}

TEST_CASE("factorial valuation closed form matches the sum of quotients") {
    const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31,
                           37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                           79, 83, 89, 97};
    for (long p : primes)
        for (long m = 0; m <= 2000; ++m)
            REQUIRE(vp_factorial(m, p) == vp_factorial_legendre(m, p));
}

TEST_CASE("factorial valuation spot values") {
    CHECK(vp_factorial(8, 2) == 7);
    CHECK(vp_factorial(10, 3) == 4);
    CHECK(vp_factorial(0, 5) == 0);
    CHECK(vp_factorial(4, 5) == 0);
    CHECK(vp_factorial(25, 5) == 6);
}

TEST_CASE("growth bound, first form") {
    SECTION("known false point") {
        BoundCheck r = check_bound_i(4, 4, 2);
        CHECK(r.hypothesis_met);
        CHECK_FALSE(r.coprime);  // the lone failure has gcd(r, p) = 2
        CHECK_FALSE(r.holds);
        CHECK(r.lhs == 160000);  // 20^4
        CHECK(r.rhs == 32768);   // 2^15
    }
    SECTION("typical true point") {
        BoundCheck r = check_bound_i(4, 5, 2);
        CHECK(r.hypothesis_met);
        CHECK(r.holds);
        CHECK(r.lhs == bigint(24) * 24 * 24 * 24);
    }
    SECTION("excluded parameter triples") {
        CHECK_FALSE(check_bound_i(4, 2, 3).hypothesis_met);
        CHECK_FALSE(check_bound_i(4, 3, 2).hypothesis_met);
        CHECK_FALSE(check_bound_i(5, 2, 3).hypothesis_met);
        CHECK_FALSE(check_bound_i(3, 4, 5).hypothesis_met);  // d too small
        CHECK_FALSE(check_bound_i(6, 3, 3).hypothesis_met);  // r equals p
    }
    SECTION("shared factor is flagged") {
        BoundCheck r = check_bound_i(5, 4, 2);
        CHECK(r.hypothesis_met);
        CHECK_FALSE(r.coprime);
    }
}

TEST_CASE("growth bound, first form, exhaustive grid") {
    // On the full hypothesis grid the only failure is (d, r, p) = (4, 4, 2),
    // and that point has gcd(r, p) > 1; with the coprimality restriction the
    // bound holds everywhere.
    std::set<std::tuple<long, long, long>> failures;
    for (long d = 4; d <= 12; ++d)
        for (long r = 2; r <= 50; ++r)
            for (long p = 2; p <= 50; ++p) {
                BoundCheck res = check_bound_i(d, r, p);
                if (!res.hypothesis_met) continue;
                if (!res.holds) failures.insert({d, r, p});
                if (res.coprime) REQUIRE(res.holds);
            }
    CHECK(failures == std::set<std::tuple<long, long, long>>{{4, 4, 2}});
}

TEST_CASE("growth bound, second form") {
    SECTION("smallest admissible point") {
        BoundCheck r = check_bound_ii(3, 3, 1);
        CHECK(r.hypothesis_met);
        CHECK(r.holds);
        CHECK(r.lhs == 16);
        CHECK(r.rhs == 26);
    }
    SECTION("hypothesis filters") {
        CHECK_FALSE(check_bound_ii(2, 3, 1).hypothesis_met);
        CHECK_FALSE(check_bound_ii(3, 2, 1).hypothesis_met);
        CHECK_FALSE(check_bound_ii(3, 3, 0).hypothesis_met);
    }
    SECTION("exhaustive grid holds") {
        for (long b = 3; b <= 30; ++b)
            for (long p = 3; p <= 97; ++p)
                for (long f = 1; f <= 12; ++f) {
                    BoundCheck res = check_bound_ii(b, p, f);
                    if (!res.hypothesis_met) continue;
                    REQUIRE(res.holds);
                }
    }
}

TEST_CASE("lie type parameter table") {
    SECTION("spot values") {
        LieParams e8 = lie_params("E8", 8);
        CHECK(e8.e == 120);
        CHECK(e8.d == 15);
        CHECK(e8.c == 248);
        CHECK(e8.b == 28);

        LieParams a2 = lie_params("A", 2);
        CHECK(a2.e == 3);
        CHECK(a2.d == 3);
        CHECK(a2.c == 3);
        CHECK(a2.b == 1);

        LieParams sz = lie_params("2B2", 2);
        CHECK(sz.e == 2);
        CHECK(sz.d == 2);
        CHECK(sz.c == 4);
        CHECK(sz.b == 1);

        LieParams d4 = lie_params("D", 4);
        CHECK(d4.e == 12);
        CHECK(d4.d == 4);
        CHECK(d4.c == 8);
        CHECK(d4.b == 4);

        LieParams g2 = lie_params("G2", 2);
        CHECK(g2.e == 6);
        CHECK(g2.b == 2);
    }
    SECTION("rank validation") {
        CHECK_THROWS_AS(lie_params("A", 0), input_error);
        CHECK_THROWS_AS(lie_params("B", 1), input_error);
        CHECK_THROWS_AS(lie_params("C", 2), input_error);
        CHECK_THROWS_AS(lie_params("D", 3), input_error);
        CHECK_THROWS_AS(lie_params("H", 2), input_error);
        CHECK(lie_params("E8", 7).rank == 0);  // fixed families ignore the rank argument
    }
    SECTION("defect invariant across the table") {
        for (const LieParams& row : all_lie_params(50)) {
            INFO(row.family << " rank " << row.rank);
            REQUIRE(row.b >= row.d - 2);
            REQUIRE(row.e >= row.d);
        }
    }
}

TEST_CASE("order valuation records") {
    SECTION("shipped records pass") {
        for (const InvariantRecord& rec : shipped_invariant_records()) {
            RecordCheck st = check_invariant_record(rec);
            INFO(rec.label);
            CHECK(st.status == RecordStatus::ok);
        }
    }
    SECTION("degree bound catches an impossible record") {
        InvariantRecord bad;
        bad.label = "fake";
        bad.order = 1024;    // v_2 = 10
        bad.sym_degree = 8;  // caps v_2 at 8
        RecordCheck st = check_invariant_record(bad);
        CHECK(st.status == RecordStatus::violated);
        REQUIRE_FALSE(st.details.empty());
    }
    SECTION("record with no usable bound reports insufficient data") {
        InvariantRecord sparse;
        sparse.label = "sparse";
        sparse.order = 60;
        RecordCheck st = check_invariant_record(sparse);
        CHECK(st.status == RecordStatus::insufficient_data);
    }
    SECTION("projective bound applies away from the defining characteristic") {
        InvariantRecord rec;
        rec.label = "proj";
        rec.order = 81 * 2;          // v_3 = 4
        rec.proj_dim_bounds[3] = 2;  // caps v_3 at 2
        RecordCheck st = check_invariant_record(rec);
        CHECK(st.status == RecordStatus::violated);

        rec.defining_characteristic = 3;  // now exempt at p = 3
        RecordCheck st2 = check_invariant_record(rec);
        CHECK(st2.status != RecordStatus::violated);
    }
    SECTION("p = 2 exception list waives only the projective bound") {
        InvariantRecord rec;
        rec.label = "exc";
        rec.order = 64 * 3;  // v_2 = 6
        rec.sym_degree = 8;
        rec.proj_dim_bounds[2] = 4;
        rec.small_exception_at_2 = true;
        RecordCheck st = check_invariant_record(rec);
        CHECK(st.status == RecordStatus::ok);

        rec.small_exception_at_2 = false;
        RecordCheck st2 = check_invariant_record(rec);
        CHECK(st2.status == RecordStatus::violated);
    }
}
