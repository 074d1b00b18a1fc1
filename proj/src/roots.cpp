#include "derange/roots.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <set>

#include "derange/errors.hpp"

namespace derange {

namespace {

using rational = boost::multiprecision::cpp_rational;

// Doubled coordinates of the eight simple roots (Bourbaki numbering).
const std::array<RootVec, 8> kSimpleTwice = {{
    {1, -1, -1, -1, -1, -1, -1, 1},   // half(e1+e8) - half(e2+..+e7)
    {2, 2, 0, 0, 0, 0, 0, 0},         // e1+e2
    {-2, 2, 0, 0, 0, 0, 0, 0},        // e2-e1
    {0, -2, 2, 0, 0, 0, 0, 0},        // e3-e2
    {0, 0, -2, 2, 0, 0, 0, 0},        // e4-e3
    {0, 0, 0, -2, 2, 0, 0, 0},        // e5-e4
    {0, 0, 0, 0, -2, 2, 0, 0},        // e6-e5
    {0, 0, 0, 0, 0, -2, 2, 0},        // e7-e6
}};

// Inner product of doubled vectors is 4x the real inner product.
long dot4(const RootVec& a, const RootVec& b) {
    long s = 0;
    for (int i = 0; i < 8; ++i)
        s += static_cast<long>(a[i]) * b[i];
    return s;
}

// Reflection of a in the hyperplane of root b: a - (a,b) b for length-2
// roots. In doubled coordinates (a,b) = dot4/4, which is always integral
// here because the lattice is even.
RootVec reflect(const RootVec& a, const RootVec& b) {
    long ip4 = dot4(a, b);
    if (ip4 % 4 != 0)
        throw invariant_error("non-integral root inner product");
    long coeff = ip4 / 4;
    RootVec out;
    for (int i = 0; i < 8; ++i)
        out[i] = a[i] - static_cast<int>(coeff) * b[i];
    return out;
}

// Exact rational solve of sum_j m_j simple[j] = target; the coefficients of
// a root are always integers, which the caller asserts.
std::vector<long> expand_over_simple(const std::vector<RootVec>& simple, const RootVec& target) {
    std::size_t cols = simple.size();
    // Augmented 8 x (cols+1) system over the rationals.
    std::vector<std::vector<rational>> m(8, std::vector<rational>(cols + 1));
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            m[r][c] = rational(simple[c][r], 2);
        m[r][cols] = rational(target[r], 2);
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
    for (std::size_t col = 0; col < cols && row < 8; ++col) {
        std::size_t pivot = row;
        while (pivot < 8 && m[pivot][col] == 0)
            ++pivot;
        if (pivot == 8)
            continue;
        std::swap(m[row], m[pivot]);
        rational lead = m[row][col];
        for (auto& v : m[row])
            v /= lead;
        for (std::size_t r = 0; r < 8; ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            rational factor = m[r][col];
            for (std::size_t c = col; c <= cols; ++c)
                m[r][c] -= factor * m[row][c];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    for (std::size_t r = row; r < 8; ++r)
        if (m[r][cols] != 0)
            throw invariant_error("root lies outside the simple-root span");
    std::vector<long> out(cols, 0);
    for (std::size_t col = 0; col < cols; ++col) {
        if (pivot_of_col[col] == SIZE_MAX)
            throw invariant_error("degenerate simple-root basis");
        rational value = m[pivot_of_col[col]][cols];
        if (boost::multiprecision::denominator(value) != 1)
            throw invariant_error("non-integral simple-root coefficient");
        out[col] = static_cast<long>(boost::multiprecision::numerator(value));
    }
    return out;
}

}  // namespace

RootSystem build_root_system(const std::string& type) {
    RootSystem rs;
    rs.type = type;
    if (type == "E6")
        rs.rank = 6;
    else if (type == "E7")
        rs.rank = 7;
    else if (type == "E8")
        rs.rank = 8;
    else
        throw input_error("unsupported root system type: " + type);
    rs.simple.assign(kSimpleTwice.begin(), kSimpleTwice.begin() + rs.rank);

    std::set<RootVec> seen(rs.simple.begin(), rs.simple.end());
    std::vector<RootVec> queue(rs.simple.begin(), rs.simple.end());
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        RootVec current = queue[qi];
        for (const auto& s : rs.simple) {
            RootVec image = reflect(current, s);
            if (seen.insert(image).second)
                queue.push_back(image);
        }
    }
    rs.roots.assign(seen.begin(), seen.end());

    for (const auto& root : rs.roots) {
        auto coeffs = expand_over_simple(rs.simple, root);
        // Re-multiply to confirm the expansion reproduces the root exactly.
        RootVec rebuilt{};
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            for (int i = 0; i < 8; ++i)
                rebuilt[i] += static_cast<int>(coeffs[j]) * rs.simple[j][i];
        if (rebuilt != root)
            throw invariant_error("coefficient expansion failed to reproduce a root");
        rs.coefficients.push_back(std::move(coeffs));
    }
    return rs;
}

TailFilterReport filter_tail_roots(const RootSystem& rs) {
    TailFilterReport report;
    report.rank = rs.rank;
    std::size_t last = static_cast<std::size_t>(rs.rank) - 1;
    std::size_t second_last = static_cast<std::size_t>(rs.rank) - 2;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        const auto& m = rs.coefficients[i];
        if (m[last] > 0 && m[second_last] == 0) {
            report.matches.push_back(rs.roots[i]);
            report.match_coefficients.push_back(m);
        }
    }
    report.equals_last_simple =
        report.matches.size() == 1 && report.matches[0] == rs.simple[last];
    if (report.matches.size() == 1) {
        for (int j = 0; j < rs.rank; ++j) {
            if (report.matches[0] == rs.simple[static_cast<std::size_t>(j)]) {
                report.matched_simple_index = j + 1;
                break;
            }
        }
    }
    return report;
}

}  // namespace derange
