#include "derange/affine.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <sstream>

#include "derange/action.hpp"
#include "derange/errors.hpp"
#include "derange/numeric.hpp"

namespace derange {

namespace {

long checked_domain(const std::shared_ptr<const GF>& field, int d, long cap) {
    if (d < 1)
        throw input_error("dimension must be positive");
    long n = 1;
    for (int i = 0; i < d; ++i) {
        n *= field->q();
        if (n > cap)
            throw cap_error("vector space larger than the degree cap");
    }
    return n;
}

void check_matrix_shapes(const std::vector<MatrixFp>& mats,
                         const std::shared_ptr<const GF>& field, int d) {
    for (const auto& m : mats) {
        if (m.dim() != d || m.field()->q() != field->q())
            throw input_error("matrix dimension or field mismatch");
        if (!m.is_invertible())
            throw input_error("linear generators must be invertible");
    }
}

}  // namespace

AffineMap::AffineMap(std::vector<long> translation, MatrixFp linear)
    : translation_(std::move(translation)), linear_(std::move(linear)) {
    if (static_cast<int>(translation_.size()) != linear_.dim())
        throw input_error("translation length must match the matrix dimension");
    long q = linear_.field()->q();
    for (long x : translation_)
        if (x < 0 || x >= q)
            throw input_error("translation entry out of field range");
    if (!linear_.is_invertible())
        throw input_error("affine map needs an invertible linear part");
}

std::vector<long> AffineMap::apply(const std::vector<long>& w) const {
    const auto& field = linear_.field();
    std::vector<long> shifted(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        shifted[i] = field->add(w[i], translation_[i]);
    return linear_.apply(shifted);
}

Permutation AffineMap::as_permutation() const {
    long q = linear_.field()->q();
    int d = linear_.dim();
    long n = checked_domain(linear_.field(), d, 1L << 26);
    std::vector<int> images(static_cast<std::size_t>(n));
    for (long code = 0; code < n; ++code)
        images[static_cast<std::size_t>(code)] =
            static_cast<int>(encode_vector(apply(decode_vector(code, q, d)), q));
    return Permutation(images);
}

AffineRealization affine_group(const std::shared_ptr<const GF>& field, int d,
                               const std::vector<MatrixFp>& linear_generators, long degree_cap) {
    if (field->f() != 1)
        throw input_error("affine realization works over prime fields");
    long n = checked_domain(field, d, degree_cap);
    check_matrix_shapes(linear_generators, field, d);

    MatrixFp id = MatrixFp::identity(field, d);
    std::vector<Permutation> translation_gens;
    for (int i = 0; i < d; ++i) {
        std::vector<long> e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(i)] = 1;
        translation_gens.push_back(AffineMap(e, id).as_permutation());
    }
    std::vector<Permutation> linear_perms;
    for (const auto& m : linear_generators)
        linear_perms.push_back(matrix_permutation_full(m));

    std::vector<Permutation> all = translation_gens;
    all.insert(all.end(), linear_perms.begin(), linear_perms.end());

    PermGroup group(static_cast<int>(n), all);
    PermGroup translations(static_cast<int>(n), translation_gens);
    PermGroup linear_part(static_cast<int>(n), linear_perms);

    if (translations.order() != n)
        throw invariant_error("translation subgroup is not regular");
    if (group.point_stabilizer(0).order() != linear_part.order())
        throw invariant_error("stabilizer of the zero vector differs from the linear group");
    if (group.order() != linear_part.order() * n)
        throw invariant_error("affine group order is not |V| * |H|");

    return AffineRealization{std::move(group), std::move(translations), std::move(linear_part),
                             field, d};
}

CongruenceCheck check_fixed_space_congruence(const MatrixFp& g, long q, long e) {
    const auto& field = g.field();
    if (field->f() != 1)
        throw input_error("pass the matrix over the prime field");
    if (e < 1)
        throw input_error("congruence modulus must be positive");
    long p = field->p();
    long f = 0;
    for (long t = q; t > 1; t /= p) {
        if (t % p != 0)
            throw input_error("q must be a power of the matrix characteristic");
        ++f;
    }
    if (f == 0 || q < 2)
        throw input_error("q must be a power of the matrix characteristic");
    if (g.dim() % f != 0)
        throw input_error("matrix dimension is not a multiple of the extension degree");
    if (!g.is_invertible())
        throw input_error("congruence check needs an invertible matrix");

    CongruenceCheck out;
    out.ambient_dim = g.dim() / f;
    out.element_order = g.order();

    bigint qe = 1;
    for (long i = 0; i < e; ++i)
        qe *= q;
    bool divides = (qe - 1) % out.element_order == 0;
    bool coprime_below = true;
    bigint qi = 1;
    for (long i = 1; i < e; ++i) {
        qi *= q;
        if (boost::multiprecision::gcd(out.element_order, bigint(qi - 1)) != 1)
            coprime_below = false;
    }
    out.hypothesis_met = divides && coprime_below;

    RankDecomposition rd = mat_rank_image_kernel(g - MatrixFp::identity(field, g.dim()));
    if (rd.kernel.dim() % f != 0)
        throw input_error("fixed space is not a module over the extension field");
    out.fixed_dim = rd.kernel.dim() / f;
    out.congruent = ((out.fixed_dim - out.ambient_dim) % e + e) % e == 0;
    return out;
}

AffineWitnessReport affine_derangement_from(const std::vector<MatrixFp>& linear_group,
                                            const std::vector<MatrixFp>& m_subgroup,
                                            const MatrixFp& h, const std::vector<long>& v,
                                            long cap) {
    if (linear_group.empty())
        throw input_error("need generators for the linear group");
    const auto& field = linear_group.front().field();
    int d = linear_group.front().dim();
    check_matrix_shapes(linear_group, field, d);
    check_matrix_shapes(m_subgroup, field, d);
    check_matrix_shapes({h}, field, d);
    if (static_cast<int>(v.size()) != d)
        throw input_error("vector length mismatch");
    long q = field->q();
    for (long x : v)
        if (x < 0 || x >= q)
            throw input_error("vector entry out of field range");

    AffineWitnessReport rep;

    long n = checked_domain(field, d, cap);
    std::vector<Permutation> h_perms;
    for (const auto& m : linear_group)
        h_perms.push_back(matrix_permutation_full(m));
    PermGroup h_perm(static_cast<int>(n), h_perms);
    std::vector<Permutation> m_perms;
    for (const auto& m : m_subgroup)
        m_perms.push_back(matrix_permutation_full(m));
    PermGroup m_perm(static_cast<int>(n), m_perms);

    if (!h_perm.contains(matrix_permutation_full(h)))
        rep.failures.push_back("h is not in the linear group");
    for (const auto& mp : m_perms)
        if (!h_perm.contains(mp)) {
            rep.failures.push_back("M is not a subgroup of the linear group");
            break;
        }

    RankDecomposition shifted = mat_rank_image_kernel(h - MatrixFp::identity(field, d));
    if (shifted.rank == d)
        rep.failures.push_back("no admissible v: h - 1 is invertible");
    else if (shifted.image.contains(v))
        rep.failures.push_back("v lies in the image of h - 1");

    if (rep.failures.empty()) {
        CosetAction linear_cosets(h_perm, m_perm, cap);
        if (linear_cosets.image_of(matrix_permutation_full(h)).fixed_point_count() != 0)
            rep.failures.push_back("h fixes a coset of M in the linear group");
    }

    if (!rep.failures.empty())
        return rep;

    rep.ok = true;
    rep.witness.emplace(v, h.inverse());

    // Exhaustive verification in the realized two-orbit action.
    AffineRealization vh = affine_group(field, d, linear_group, cap);
    AffineRealization vm = affine_group(field, d, m_subgroup, cap);
    CosetAction cosets(vh.group, vm.group, cap);
    Permutation w = rep.witness->as_permutation();
    if (!vh.group.contains(w))
        throw invariant_error("constructed affine map left the group");
    rep.domain_points = n;
    rep.coset_points = static_cast<long>(cosets.index());
    rep.verified =
        w.fixed_point_count() == 0 && cosets.image_of(w).fixed_point_count() == 0;
    return rep;
}

IsbellReport isbell_witness(const PermGroup& g, const std::vector<MatrixFp>& rho, long cap,
                            long spin_cap) {
    IsbellReport rep;
    if (rho.empty() || rho.size() != g.generators().size()) {
        rep.skipped_reasons.push_back("generator image count mismatch");
        return rep;
    }
    const auto& field = rho.front().field();
    int d = rho.front().dim();
    check_matrix_shapes(rho, field, d);

    if (!g.is_transitive()) {
        rep.skipped_reasons.push_back("group is not transitive");
        return rep;
    }
    if (!is_primitive(g).primitive)
        rep.skipped_reasons.push_back("group is not primitive");

    long vectors = checked_domain(field, d, cap);
    if (g.degree() % vectors != 0)
        rep.skipped_reasons.push_back("p^d does not divide the degree");
    if (g.order() > cap) {
        rep.skipped_reasons.push_back("group order exceeds the cap");
        return rep;
    }

    // Glue each generator to its image; the diagonal subgroup has the same
    // order as the group exactly when the generator map extends to a
    // homomorphism, and the image group has the same order exactly when that
    // homomorphism is faithful.
    int n = g.degree();
    std::vector<Permutation> glued;
    std::vector<Permutation> image_perms;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        Permutation ip = matrix_permutation_full(rho[i]);
        image_perms.push_back(ip);
        std::vector<int> im(static_cast<std::size_t>(n + vectors));
        for (int w = 0; w < n; ++w)
            im[static_cast<std::size_t>(w)] = g.generators()[i](w);
        for (long c = 0; c < vectors; ++c)
            im[static_cast<std::size_t>(n + c)] = n + ip(static_cast<int>(c));
        glued.push_back(Permutation(im));
    }
    PermGroup diagonal(n + static_cast<int>(vectors), glued);
    PermGroup image(static_cast<int>(vectors), image_perms);
    if (diagonal.order() != g.order())
        rep.skipped_reasons.push_back("generator images do not define a homomorphism");
    else if (image.order() != g.order())
        rep.skipped_reasons.push_back("representation is not faithful");
    if (!is_irreducible(rho, spin_cap).irreducible)
        rep.skipped_reasons.push_back("representation is not irreducible");

    if (!rep.skipped_reasons.empty())
        return rep;
    rep.applicable = true;

    ConjugacyClassTable classes = diagonal.conjugacy_classes(cap);
    for (const Permutation& pair_rep : classes.representatives) {
        bool deranges = true;
        for (int w = 0; w < n && deranges; ++w)
            deranges = pair_rep(w) != w;
        if (!deranges)
            continue;
        for (long c = 1; c < vectors; ++c) {
            if (pair_rep(static_cast<int>(n + c)) != n + c)
                continue;
            std::vector<int> first(static_cast<std::size_t>(n));
            for (int w = 0; w < n; ++w)
                first[static_cast<std::size_t>(w)] = pair_rep(w);
            rep.found = true;
            rep.witness.emplace(first);
            rep.fixed_vector = decode_vector(c, field->q(), d);
            return rep;
        }
    }
    return rep;
}

SubfieldUnipotentReport subfield_unipotent_check(long m, long p, long scan_cap) {
    if (m < 1)
        throw input_error("matrix size must be positive");
    if (!is_prime(p))
        throw input_error("p must be prime");

    SubfieldUnipotentReport rep;
    rep.m = m;
    rep.p = p;
    rep.in_stated_range = 2 * m >= 6;

    bigint big = gl_order(p * p, static_cast<int>(m));
    bigint small = gl_order(p, static_cast<int>(m));
    if (big % small != 0)
        throw invariant_error("subgroup order does not divide the group order");
    rep.index = big / small;
    rep.index_valuation = v_p(rep.index, p);
    rep.index_divisible = rep.index_valuation >= 2 * m;

    auto field = GF::make(p, 2);
    long q = field->q();
    bigint cells = 1;
    for (long i = 0; i < m * m; ++i) {
        cells *= q;
        if (cells > scan_cap)
            throw cap_error("matrix space too large for the unipotent scan");
    }
    long total = static_cast<long>(cells);

    // Partitions of m, each giving a Jordan representative with unit blocks.
    std::vector<std::vector<long>> partitions;
    std::vector<long> cur;
    auto recurse = [&](auto&& self, long remaining, long max_part) -> void {
        if (remaining == 0) {
            partitions.push_back(cur);
            return;
        }
        for (long part = std::min(remaining, max_part); part >= 1; --part) {
            cur.push_back(part);
            self(self, remaining - part, part);
            cur.pop_back();
        }
    };
    recurse(recurse, m, m);
    rep.class_count = static_cast<long>(partitions.size());

    MatrixFp identity = MatrixFp::identity(field, static_cast<int>(m));
    auto rank_profile = [&](const MatrixFp& u) {
        std::vector<int> profile;
        MatrixFp n = u - identity;
        MatrixFp power = n;
        for (long k = 1; k < m; ++k) {
            profile.push_back(mat_rank_image_kernel(power).rank);
            power = power * n;
        }
        return profile;
    };

    std::map<std::vector<int>, long> jordan_profiles;  // profile -> partition idx
    bool reps_in_subfield = true;
    for (std::size_t pi = 0; pi < partitions.size(); ++pi) {
        MatrixFp j(field, static_cast<int>(m));
        int pos = 0;
        for (long block : partitions[pi]) {
            for (long k = 0; k < block; ++k) {
                j.set(pos + static_cast<int>(k), pos + static_cast<int>(k), 1);
                if (k + 1 < block)
                    j.set(pos + static_cast<int>(k), pos + static_cast<int>(k) + 1, 1);
            }
            pos += static_cast<int>(block);
        }
        for (int r = 0; r < j.dim(); ++r)
            for (int c = 0; c < j.dim(); ++c)
                if (j.at(r, c) >= p)
                    reps_in_subfield = false;
        auto profile = rank_profile(j);
        if (jordan_profiles.count(profile))
            throw invariant_error("two partitions produced the same rank profile");
        jordan_profiles[profile] = static_cast<long>(pi);
    }

    std::map<long, long> class_sizes;  // partition idx -> element count
    long unipotent = 0;
    bool all_match = true;
    for (long code = 0; code < total; ++code) {
        MatrixFp u(field, static_cast<int>(m));
        long rest = code;
        for (int r = 0; r < u.dim(); ++r)
            for (int c = 0; c < u.dim(); ++c) {
                u.set(r, c, rest % q);
                rest /= q;
            }
        MatrixFp nil = u - identity;
        MatrixFp power = nil;
        for (long k = 1; k < m; ++k)
            power = power * nil;
        if (!power.is_zero())
            continue;
        ++unipotent;
        auto profile = rank_profile(u);
        auto it = jordan_profiles.find(profile);
        if (it == jordan_profiles.end())
            all_match = false;
        else
            ++class_sizes[it->second];
    }
    rep.unipotent_count = unipotent;

    // The count of unipotent elements of GL_m(q) is q^(m^2 - m).
    bigint expected = 1;
    for (long i = 0; i < m * (m - 1); ++i)
        expected *= q;
    if (expected != unipotent)
        throw invariant_error("unipotent census does not match q^(m^2-m)");

    rep.all_classes_meet_subgroup = reps_in_subfield && all_match;
    for (const auto& [profile, pi] : jordan_profiles) {
        std::ostringstream os;
        os << "partition [";
        for (std::size_t i = 0; i < partitions[static_cast<std::size_t>(pi)].size(); ++i) {
            if (i)
                os << ",";
            os << partitions[static_cast<std::size_t>(pi)][i];
        }
        os << "]: " << class_sizes[pi]
           << " elements share its rank profile; representative entries lie in the prime field";
        rep.class_notes.push_back(os.str());
    }
    std::sort(rep.class_notes.begin(), rep.class_notes.end());
    return rep;
}

}  // namespace derange
