#pragma once

#include <memory>
#include <string>
#include <vector>

#include "derange/perm.hpp"

namespace derange {

/// Arithmetic tables for a finite field of order q = p^f. Prime fields use
/// plain modular arithmetic; extensions are built over a fixed irreducible
/// monic polynomial (the one with the smallest little-endian coefficient
/// encoding), which is recorded in `modulus` for reproducibility. Elements
/// are encoded 0..q-1 as little-endian base-p digit strings, i.e. the
/// coefficients of the polynomial basis 1, x, x^2, ...
class GF {
  public:
    static std::shared_ptr<const GF> make(long p, int f = 1);

    long p() const { return p_; }
    int f() const { return f_; }
    long q() const { return q_; }
    const std::string& modulus() const { return modulus_; }

    long add(long a, long b) const { return add_[static_cast<std::size_t>(a * q_ + b)]; }
    long mul(long a, long b) const { return mul_[static_cast<std::size_t>(a * q_ + b)]; }
    long neg(long a) const { return neg_[static_cast<std::size_t>(a)]; }
    long inv(long a) const;
    long sub(long a, long b) const { return add(a, neg(b)); }

    /// A fixed generator of the multiplicative group (smallest by encoding).
    long primitive_element() const { return primitive_; }

    /// Multiplicative order of a nonzero element.
    long element_order(long a) const;

  private:
    GF() = default;
    long p_ = 0;
    int f_ = 0;
    long q_ = 0;
    long primitive_ = 0;
    std::string modulus_;
    std::vector<long> add_, mul_, neg_, inv_;
};

/// Square matrix over a shared finite field, row-major. The action
/// convention is column vectors: (M v)[r] = sum_c M[r][c] v[c], so products
/// compose right-to-left on vectors.
class MatrixFp {
  public:
    MatrixFp(std::shared_ptr<const GF> field, int d);  // zero matrix
    static MatrixFp identity(std::shared_ptr<const GF> field, int d);

    const std::shared_ptr<const GF>& field() const { return field_; }
    int dim() const { return d_; }
    long at(int r, int c) const { return a_[static_cast<std::size_t>(r * d_ + c)]; }
    void set(int r, int c, long v) { a_[static_cast<std::size_t>(r * d_ + c)] = v; }

    bool is_identity() const;
    bool is_zero() const;
    bool operator==(const MatrixFp& o) const { return a_ == o.a_; }
    bool operator!=(const MatrixFp& o) const { return a_ != o.a_; }

    MatrixFp operator*(const MatrixFp& o) const;
    MatrixFp operator+(const MatrixFp& o) const;
    MatrixFp operator-(const MatrixFp& o) const;
    std::vector<long> apply(const std::vector<long>& v) const;

    /// Inverse by Gaussian elimination; throws input_error when singular.
    MatrixFp inverse() const;
    bool is_invertible() const;

    /// Multiplicative order; throws input_error on singular input.
    bigint order(long cap = 10000000) const;

    std::string to_string() const;

  private:
    std::shared_ptr<const GF> field_;
    int d_;
    std::vector<long> a_;
};

/// Subspace of F_q^d held as a reduced-row-echelon basis (canonical).
class SubspaceFp {
  public:
    SubspaceFp(std::shared_ptr<const GF> field, int d,
               const std::vector<std::vector<long>>& spanning_vectors);

    int ambient_dim() const { return d_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::vector<long>>& basis() const { return basis_; }
    bool contains(const std::vector<long>& v) const;
    bool operator==(const SubspaceFp& o) const { return basis_ == o.basis_; }

  private:
    std::shared_ptr<const GF> field_;
    int d_;
    std::vector<std::vector<long>> basis_;
};

struct RankDecomposition {
    int rank = 0;
    SubspaceFp image;   // column space
    SubspaceFp kernel;  // null space
};

RankDecomposition mat_rank_image_kernel(const MatrixFp& m);

/// Result of the invariant-subspace search. When reducible, `witness` is a
/// proper nonzero subspace stable under every generator.
struct IrreducibilityReport {
    bool irreducible = false;
    std::unique_ptr<SubspaceFp> witness;
};

/// Brute-force spin: for each nonzero vector (ascending encoding), grow the
/// smallest generator-stable subspace containing it; reducible iff some spin
/// stays proper. q^d is capped.
IrreducibilityReport is_irreducible(const std::vector<MatrixFp>& generators,
                                    long spin_cap = 1 << 20);

/// Standard generators of GL_d(q): the unit transvections I + E_ij for all
/// i != j, plus diag(z, 1, ..., 1) for a primitive z when q > 2 (for d = 1,
/// just [z]). The realized group's order always equals gl_order(q, d).
std::vector<MatrixFp> gl_generators(const std::shared_ptr<const GF>& field, int d);

bigint gl_order(long q, int d);

/// Little-endian mixed-radix encoding of vectors as integers 0..q^d-1;
/// the shared point-labelling rule for vector domains.
long encode_vector(const std::vector<long>& v, long q);
std::vector<long> decode_vector(long code, long q, int d);

/// Invertible matrix as a permutation of all q^d vector codes (code 0, the
/// zero vector, is always fixed).
Permutation matrix_permutation_full(const MatrixFp& m);

/// Invertible matrix as a permutation of the q^d - 1 nonzero vectors,
/// labelled code-1.
Permutation matrix_permutation_nonzero(const MatrixFp& m);

/// Rewrites a matrix over GF(p^f) as a (d*f) x (d*f) matrix over GF(p) by
/// replacing each entry with the f x f matrix of multiplication by that
/// entry on the polynomial basis.
MatrixFp subfield_blowup(const MatrixFp& m, const std::shared_ptr<const GF>& prime_field);

}  // namespace derange
