#include "derange/numeric.hpp"

#include <boost/integer/common_factor.hpp>

#include "derange/errors.hpp"

namespace derange {

bool is_prime(long n) {
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

long v_p(const bigint& n, long p) {
    if (n < 1)
        throw input_error("valuation requires n >= 1");
    if (!is_prime(p))
        throw input_error("valuation requires a prime modulus");
    bigint m = n;
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

long digit_sum(long m, long p) {
    long s = 0;
    while (m > 0) {
        s += m % p;
        m /= p;
    }
    return s;
}

long vp_factorial(long m, long p) {
    if (m < 0)
        throw input_error("factorial valuation requires m >= 0");
    if (!is_prime(p))
        throw input_error("factorial valuation requires a prime modulus");
    return (m - digit_sum(m, p)) / (p - 1);
}

long vp_factorial_legendre(long m, long p) {
    if (m < 0)
        throw input_error("factorial valuation requires m >= 0");
    if (!is_prime(p))
        throw input_error("factorial valuation requires a prime modulus");
    long total = 0;
    for (long q = p; q <= m; q *= p) {
        total += m / q;
        if (q > m / p)
            break;  // next q would overflow
    }
    return total;
}

namespace {

bigint power(const bigint& base, const bigint& exponent) {
    bigint result = 1;
    bigint b = base;
    bigint e = exponent;
    while (e > 0) {
        if (e % 2 == 1)
            result *= b;
        b *= b;
        e /= 2;
    }
    return result;
}

// base^exponent, but caps the computation as soon as the value exceeds
// limit; returns limit+1 in that case. Keeps p^(r^(d-2)-1) affordable when
// the exponent is astronomically large.
bigint power_capped(const bigint& base, const bigint& exponent, const bigint& limit) {
    if (base <= 1)
        return power(base, exponent);
    bigint result = 1;
    bigint e = exponent;
    while (e > 0) {
        result *= base;
        --e;
        if (result > limit)
            return limit + 1;
    }
    return result;
}

// Right-hand sides are reported exactly up to this threshold; beyond it the
// comparison is still decided correctly but rhs is truncated to limit+1.
const bigint& report_cap() {
    static const bigint cap = power(bigint(10), bigint(60));
    return cap;
}

}  // namespace

BoundCheck check_bound_i(long d, long r, long p) {
    if (d < 0 || r < 0 || p < 0)
        throw input_error("bound parameters must be nonnegative");
    BoundCheck out;
    bool excluded = (d == 4 && (r == 2 || r == 3)) || (d == 5 && r == 2);
    out.hypothesis_met = d >= 4 && r >= 2 && p >= 2 && r != p && !excluded;
    out.coprime = boost::integer::gcd(r, p) == 1;
    out.lhs = power(bigint(4) * r + 4, d);
    bigint exponent = power(bigint(r), d - 2) - 1;
    bigint limit = out.lhs > report_cap() ? out.lhs : report_cap();
    out.rhs = power_capped(bigint(p), exponent, limit);
    out.holds = out.lhs <= out.rhs;
    return out;
}

BoundCheck check_bound_ii(long b, long p, long f) {
    if (b < 0 || p < 0 || f < 0)
        throw input_error("bound parameters must be nonnegative");
    BoundCheck out;
    out.hypothesis_met = b >= 3 && p >= 3 && f >= 1;
    out.coprime = true;
    out.lhs = bigint(b + 1) * (b + 1) * f;
    bigint limit = out.lhs + 1 > report_cap() ? out.lhs + 1 : report_cap();
    out.rhs = power_capped(bigint(p), bigint(b) * f, limit) - 1;
    out.holds = out.lhs <= out.rhs;
    return out;
}

LieParams lie_params(const std::string& family, long rank) {
    LieParams out;
    out.family = family;
    out.rank = rank;
    auto fixed = [&](long e, long d, long c, long b) {
        out.rank = 0;
        out.e = e;
        out.d = d;
        out.c = c;
        out.b = b;
    };
    if (family == "A") {
        if (rank < 2)
            throw input_error("family A needs rank >= 2");
        out.e = bigint(rank) * (rank + 1) / 2;
        out.d = rank + 1;
        out.c = rank + 1;
        out.b = rank - 1;
    } else if (family == "B") {
        if (rank < 2)
            throw input_error("family B needs rank >= 2");
        out.e = bigint(rank) * rank;
        out.d = rank;
        out.c = 2 * rank + 1;
        out.b = rank;
    } else if (family == "C") {
        if (rank < 3)
            throw input_error("family C needs rank >= 3");
        out.e = bigint(rank) * rank;
        out.d = rank;
        out.c = 2 * rank;
        out.b = rank - 1;
    } else if (family == "D") {
        if (rank < 4)
            throw input_error("family D needs rank >= 4");
        out.e = bigint(rank) * rank - rank;
        out.d = rank;
        out.c = 2 * rank;
        out.b = rank;
    } else if (family == "E8") {
        fixed(120, 15, 248, 28);
    } else if (family == "E7") {
        fixed(63, 9, 56, 16);
    } else if (family == "E6") {
        fixed(36, 12, 27, 10);
    } else if (family == "F4") {
        fixed(24, 6, 25, 7);
    } else if (family == "G2") {
        fixed(6, 3, 6, 2);
    } else if (family == "A1") {
        fixed(1, 1, 2, 0);
    } else if (family == "3D4") {
        fixed(12, 6, 8, 4);
    } else if (family == "2F4") {
        fixed(12, 6, 26, 4);
    } else if (family == "2B2") {
        fixed(2, 2, 4, 1);
    } else if (family == "2G2") {
        fixed(3, 3, 7, 1);
    } else {
        throw input_error("unknown Lie family: " + family);
    }
    return out;
}

std::vector<LieParams> all_lie_params(long max_rank) {
    std::vector<LieParams> out;
    for (long l = 2; l <= max_rank; ++l)
        out.push_back(lie_params("A", l));
    for (long l = 2; l <= max_rank; ++l)
        out.push_back(lie_params("B", l));
    for (long l = 3; l <= max_rank; ++l)
        out.push_back(lie_params("C", l));
    for (long l = 4; l <= max_rank; ++l)
        out.push_back(lie_params("D", l));
    for (const char* f : {"E8", "E7", "E6", "F4", "G2", "A1", "3D4", "2F4", "2B2", "2G2"})
        out.push_back(lie_params(f));
    return out;
}

RecordCheck check_invariant_record(const InvariantRecord& r) {
    RecordCheck out;
    if (r.order < 1) {
        out.details.push_back(r.label + ": order missing");
        return out;
    }
    bool checked_any = false;
    bool violated = false;
    bigint rest = r.order;
    for (long p = 2; rest > 1; ++p) {
        if (!is_prime(p) || rest % p != 0)
            continue;
        long vp = v_p(r.order, p);
        while (rest % p == 0)
            rest /= p;
        if (r.sym_degree >= 0) {
            checked_any = true;
            if (vp > r.sym_degree) {
                violated = true;
                out.details.push_back(r.label + ": v_" + std::to_string(p) + " = " +
                                      std::to_string(vp) + " exceeds minimal symmetric degree " +
                                      std::to_string(r.sym_degree));
            }
        }
        auto it = r.proj_dim_bounds.find(p);
        if (it == r.proj_dim_bounds.end())
            continue;
        if (p == r.defining_characteristic) {
            out.details.push_back(r.label + ": p = " + std::to_string(p) +
                                  " is the defining characteristic, projective bound waived");
            continue;
        }
        if (p == 2 && r.small_exception_at_2) {
            out.details.push_back(r.label + ": on the p = 2 exception list, projective bound waived");
            continue;
        }
        checked_any = true;
        if (vp > it->second) {
            violated = true;
            out.details.push_back(r.label + ": v_" + std::to_string(p) + " = " +
                                  std::to_string(vp) + " exceeds projective dimension bound " +
                                  std::to_string(it->second));
        }
    }
    if (!checked_any) {
        out.status = RecordStatus::insufficient_data;
        out.details.push_back(r.label + ": no applicable inequality");
    } else {
        out.status = violated ? RecordStatus::violated : RecordStatus::ok;
    }
    return out;
}

std::vector<InvariantRecord> shipped_invariant_records() {
    std::vector<InvariantRecord> out;
    auto factorial = [](long m) {
        bigint f = 1;
        for (long i = 2; i <= m; ++i)
            f *= i;
        return f;
    };
    for (long m = 5; m <= 8; ++m) {
        InvariantRecord rec;
        rec.label = "A" + std::to_string(m);
        rec.order = factorial(m) / 2;
        // The natural action gives degree m; nothing smaller is possible
        // because the group order exceeds (m-1)!.
        rec.sym_degree = m;
        rec.source = "degree computed from the order bound |A_m| > (m-1)!";
        if (m == 8) {
            // The smallest faithful projective representation of A8 at p = 2
            // has dimension 4, below v_2(|A8|) = 6; A8 sits on the standing
            // five-group exception list for p = 2.
            rec.proj_dim_bounds[2] = 4;
            rec.small_exception_at_2 = true;
            rec.source += "; projective bound 4 at p = 2 from the reference data";
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace derange
