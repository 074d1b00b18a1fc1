#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace derange {

using bigint = boost::multiprecision::cpp_int;

/// A bijection of {0..n-1} stored as an image list. Immutable after
/// construction. Points are 0-based internally; all cycle-notation I/O is
/// 1-based (conversion happens only in parse_cycles/format_cycles).
class Permutation {
  public:
    /// Identity on n points.
    static Permutation identity(int n);

    /// Validates that images is a bijection of {0..n-1}.
    explicit Permutation(std::vector<int> images);

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int point) const { return images_[point]; }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;

    /// Least k >= 1 with p^k = identity; the lcm of the cycle lengths.
    bigint order() const;

    /// True iff order() is a power of a single prime; when true, that prime
    /// is written to *prime_out if non-null. Identity returns false.
    bool has_prime_power_order(long* prime_out = nullptr) const;

    /// Cycle lengths of all nontrivial cycles, ascending.
    std::vector<int> cycle_lengths() const;

    int fixed_point_count() const;

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator!=(const Permutation& o) const { return images_ != o.images_; }
    /// Lexicographic order on image lists; the canonical element order.
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

  private:
    std::vector<int> images_;
};

/// Applies p first, then q: result maps w to q(p(w)). Degrees must agree.
Permutation compose(const Permutation& p, const Permutation& q);

/// compose(compose(c.inverse(), p), c), i.e. p conjugated by c.
Permutation conjugate(const Permutation& p, const Permutation& c);

struct PermHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int v : p.images()) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// Parses 1-based disjoint-cycle notation, e.g. "(1 2)(3 4 5)". "()" and the
/// empty string denote the identity. Commas are accepted as separators.
/// Throws input_error on malformed text or points outside 1..degree.
Permutation parse_cycles(const std::string& text, int degree);

/// Canonical 1-based cycle form: cycles sorted by smallest moved point, each
/// cycle written from its smallest point; identity renders as "()".
std::string format_cycles(const Permutation& p);

}  // namespace derange
