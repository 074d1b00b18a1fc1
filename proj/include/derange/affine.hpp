#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "derange/group.hpp"
#include "derange/matfp.hpp"
#include "derange/perm.hpp"

namespace derange {

/// Affine transformation of F_p^d: w maps to linear * (w + translation), so
/// the translation applies first. Composition of the permutation
/// realizations follows the usual left-to-right rule of compose().
class AffineMap {
  public:
    AffineMap(std::vector<long> translation, MatrixFp linear);

    const std::vector<long>& translation() const { return translation_; }
    const MatrixFp& linear() const { return linear_; }

    std::vector<long> apply(const std::vector<long>& w) const;
    Permutation as_permutation() const;

  private:
    std::vector<long> translation_;
    MatrixFp linear_;
};

/// The affine group V:H on the p^d vector codes, together with the two
/// distinguished subgroups the construction promises: the regular translation
/// subgroup and the stabilizer copy of H at the zero vector. Order equality
/// |group| = p^d * |H| is asserted at build time.
struct AffineRealization {
    PermGroup group;
    PermGroup translations;
    PermGroup linear_part;  // H acting with 0 fixed
    std::shared_ptr<const GF> field;
    int d = 0;
};

AffineRealization affine_group(const std::shared_ptr<const GF>& field, int d,
                               const std::vector<MatrixFp>& linear_generators,
                               long degree_cap = kDefaultEnumerationCap);

/// Outcome of the fixed-space dimension congruence test for one matrix g
/// over F_p viewed as an F_q-linear map, q = p^f. The hypothesis is that the
/// multiplicative order of g divides q^e - 1 while being coprime to every
/// q^i - 1 with 1 <= i < e; whenever it holds, the fixed-space dimension
/// over F_q must be congruent to the ambient dimension mod e.
struct CongruenceCheck {
    bool hypothesis_met = false;
    bool congruent = false;
    bigint element_order;
    long fixed_dim = -1;    // dim over F_q of ker(g - 1)
    long ambient_dim = -1;  // dim over F_q of the whole space
};

CongruenceCheck check_fixed_space_congruence(const MatrixFp& g, long q, long e);

/// Construction of an affine element avoiding every point stabilizer in the
/// two-orbit action on V and on the cosets of V:M. Preconditions are checked
/// and reported by name; when all pass, the returned map is (v, h^{-1}) and
/// `verified` records the exhaustive fixed-point check in the realized
/// permutation group.
struct AffineWitnessReport {
    bool ok = false;
    std::vector<std::string> failures;
    std::optional<AffineMap> witness;
    bool verified = false;
    long domain_points = 0;
    long coset_points = 0;
};

AffineWitnessReport affine_derangement_from(const std::vector<MatrixFp>& linear_group,
                                            const std::vector<MatrixFp>& m_subgroup,
                                            const MatrixFp& h, const std::vector<long>& v,
                                            long cap = kDefaultEnumerationCap);

/// Search for a derangement of the given primitive group whose image under
/// the linear representation rho (given by generator images, in generator
/// order) fixes a nonzero vector. Preconditions: rho extends to a faithful
/// irreducible homomorphism and p^d divides the degree; failures are listed
/// in `skipped_reasons` and leave `applicable` false.
struct IsbellReport {
    bool applicable = false;
    std::vector<std::string> skipped_reasons;
    bool found = false;
    std::optional<Permutation> witness;
    std::vector<long> fixed_vector;
};

IsbellReport isbell_witness(const PermGroup& g, const std::vector<MatrixFp>& rho,
                            long cap = kDefaultEnumerationCap, long spin_cap = 1 << 20);

/// Concrete check that every unipotent element of GL_m(p^2) lies in a
/// conjugate of the subfield subgroup GL_m(p), via Jordan representatives
/// with prime-field entries and exhaustive rank-profile classification; also
/// records whether p^(2m) divides the subgroup index.
struct SubfieldUnipotentReport {
    long m = 0;
    long p = 0;
    bool in_stated_range = false;  // the source statement assumes 2m >= 6
    bigint index;
    long index_valuation = 0;       // v_p of the index
    bool index_divisible = false;   // p^(2m) divides the index
    long unipotent_count = 0;       // all unipotent elements of GL_m(p^2)
    long class_count = 0;           // one per partition of m
    bool all_classes_meet_subgroup = false;
    std::vector<std::string> class_notes;
};

SubfieldUnipotentReport subfield_unipotent_check(long m, long p, long scan_cap = 1 << 20);

}  // namespace derange
