#pragma once

#include <map>
#include <string>
#include <vector>

#include "derange/perm.hpp"

namespace derange {

bool is_prime(long n);

/// Exact p-adic valuation of n (n >= 1, p prime).
long v_p(const bigint& n, long p);

long digit_sum(long m, long p);

/// Valuation of m! computed by the digit-sum identity (m - s_p(m))/(p-1).
long vp_factorial(long m, long p);

/// Valuation of m! by direct summation of floor(m/p^i); the independent
/// reference for vp_factorial.
long vp_factorial_legendre(long m, long p);

/// Outcome of one inequality check. `holds` is the raw exact comparison.
/// `hypothesis_met` records the stated side conditions; `coprime` is
/// gcd(r,p) == 1 for the first bound (always true for the second), since the
/// first bound is only ever applied to coprime pairs and has a known
/// boundary failure at (d,r,p) = (4,4,2) otherwise.
struct BoundCheck {
    bool holds = false;
    bool hypothesis_met = false;
    bool coprime = false;
    bigint lhs;
    bigint rhs;
};

/// (4r+4)^d <= p^(r^(d-2) - 1), hypotheses d >= 4, r,p >= 2, r != p,
/// (d,r) not in {(4,2),(4,3),(5,2)}.
BoundCheck check_bound_i(long d, long r, long p);

/// (b+1)^2 f <= p^(bf) - 1, hypotheses b,p >= 3, f >= 1.
BoundCheck check_bound_ii(long b, long p, long f);

/// Parameter quadruple (e, d, c, b) per Lie family; closed forms for the
/// classical families, fixed values for the exceptional ones.
struct LieParams {
    std::string family;
    long rank = 0;  // 0 for families without a rank parameter
    bigint e;
    bigint d;
    bigint c;
    bigint b;
};

/// Families: "A" (rank >= 2, covers both twisted and untwisted forms), "B"
/// (rank >= 2), "C" (rank >= 3), "D" (rank >= 4), "E6", "E7", "E8", "F4",
/// "G2", "A1", "3D4", "2F4", "2B2", "2G2".
LieParams lie_params(const std::string& family, long rank = 0);

/// Every family at every rank up to max_rank (classical families swept,
/// exceptional ones included once).
std::vector<LieParams> all_lie_params(long max_rank);

/// Reference data for one group: its order, the smallest faithful symmetric
/// degree when known, and lower bounds on the smallest faithful projective
/// representation dimension per prime. The two recorded inequalities are
/// v_p(order) <= sym_degree and v_p(order) <= proj_dim_bound[p], the latter
/// waived for groups of Lie type in their defining characteristic and for
/// the five-group exception list at p = 2.
struct InvariantRecord {
    std::string label;
    bigint order;
    long sym_degree = -1;  // -1 = unknown
    std::map<long, long> proj_dim_bounds;
    long defining_characteristic = 0;  // 0 = not Lie type
    bool small_exception_at_2 = false;
    std::string source;
};

enum class RecordStatus { ok, violated, insufficient_data };

struct RecordCheck {
    RecordStatus status = RecordStatus::insufficient_data;
    std::vector<std::string> details;
};

RecordCheck check_invariant_record(const InvariantRecord& r);

/// The records shipped with the library: small alternating groups with
/// degrees computed from first principles, plus the exception-list entry.
std::vector<InvariantRecord> shipped_invariant_records();

}  // namespace derange
