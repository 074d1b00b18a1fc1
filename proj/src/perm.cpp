#include "derange/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "derange/errors.hpp"

namespace derange {

Permutation Permutation::identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
        if (v < 0 || v >= degree() || seen[v]) {
            throw input_error("permutation image list is not a bijection");
        }
        seen[v] = 1;
    }
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i) {
        if (images_[i] != i) return false;
    }
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
}

std::vector<int> Permutation::cycle_lengths() const {
    std::vector<int> lens;
    std::vector<char> seen(images_.size(), 0);
    for (int i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = images_[j]) {
            seen[j] = 1;
            ++len;
        }
        if (len > 1) lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

bigint Permutation::order() const {
    bigint ord = 1;
    for (int len : cycle_lengths()) {
        ord = boost::multiprecision::lcm(ord, bigint(len));
    }
    return ord;
}

bool Permutation::has_prime_power_order(long* prime_out) const {
    auto lens = cycle_lengths();
    if (lens.empty()) return false;
    // The order is a prime power iff every nontrivial cycle length is a
    // power of one common prime.
    long p = 0;
    for (int len : lens) {
        int m = len;
        long q = 0;
        for (long cand = 2; cand * cand <= m; ++cand) {
            if (m % cand == 0) {
                q = cand;
                break;
            }
        }
        if (q == 0) q = m;
        while (m % q == 0) m /= q;
        if (m != 1) return false;
        if (p == 0) p = q;
        if (p != q) return false;
    }
    if (prime_out) *prime_out = p;
    return true;
}

int Permutation::fixed_point_count() const {
    int c = 0;
    for (int i = 0; i < degree(); ++i) {
        if (images_[i] == i) ++c;
    }
    return c;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) {
        throw input_error("cannot compose permutations of different degree");
    }
    std::vector<int> im(static_cast<std::size_t>(p.degree()));
    for (int i = 0; i < p.degree(); ++i) im[i] = q(p(i));
    return Permutation(std::move(im));
}

Permutation conjugate(const Permutation& p, const Permutation& c) {
    return compose(compose(c.inverse(), p), c);
}

Permutation parse_cycles(const std::string& text, int degree) {
    std::vector<int> im(static_cast<std::size_t>(degree));
    std::iota(im.begin(), im.end(), 0);
    std::vector<char> used(static_cast<std::size_t>(degree), 0);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw input_error("expected '(' in cycle notation: " + text);
        ++i;
        std::vector<int> cycle;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
                throw input_error("expected point number in cycle notation: " + text);
            }
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                ++i;
            }
            if (v < 1 || v > degree) {
                throw input_error("cycle point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
            }
            cycle.push_back(v - 1);
            skip_ws();
        }
        if (i >= text.size()) throw input_error("unterminated cycle: " + text);
        ++i;  // ')'
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            int from = cycle[k];
            int to = cycle[(k + 1) % cycle.size()];
            if (used[static_cast<std::size_t>(from)])
                throw input_error("point repeated in cycle notation: " + text);
            used[static_cast<std::size_t>(from)] = 1;
            im[from] = to;
        }
        skip_ws();
    }
    // The map built cycle-by-cycle is a bijection only if cycles were
    // disjoint; the Permutation constructor re-validates.
    return Permutation(std::move(im));
}

std::string format_cycles(const Permutation& p) {
    std::ostringstream out;
    std::vector<char> seen(static_cast<std::size_t>(p.degree()), 0);
    bool any = false;
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[i] || p(i) == i) continue;
        any = true;
        out << '(';
        int j = i;
        bool first = true;
        do {
            if (!first) out << ' ';
            out << (j + 1);
            seen[j] = 1;
            j = p(j);
            first = false;
        } while (j != i);
        out << ')';
    }
    if (!any) return "()";
    return out.str();
}

}  // namespace derange
