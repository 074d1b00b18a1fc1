#include "derange/matfp.hpp"

#include <algorithm>
#include <sstream>

#include "derange/errors.hpp"

namespace derange {

namespace {

constexpr long kMaxFieldOrder = 4096;  // tables are q*q entries

// Little-endian polynomial helpers over F_p used only while building tables.
using Poly = std::vector<long>;

Poly poly_from_code(long code, long p, int len) {
    Poly out(static_cast<std::size_t>(len), 0);
    for (int i = 0; i < len; ++i) {
        out[static_cast<std::size_t>(i)] = code % p;
        code /= p;
    }
    return out;
}

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    poly_trim(out);
    return out;
}

// Remainder of a modulo a monic divisor.
Poly poly_mod(Poly a, const Poly& m, long p) {
    poly_trim(a);
    while (a.size() >= m.size()) {
        long lead = a.back();
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            long& t = a[shift + i];
            t = ((t - lead * m[i]) % p + p) % p;
        }
        poly_trim(a);
    }
    return a;
}

bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

// Monic polynomial of degree deg from a code for its lower coefficients.
Poly monic_from_code(long code, long p, int deg) {
    Poly out = poly_from_code(code, p, deg);
    out.push_back(1);
    return out;
}

bool poly_irreducible(const Poly& m, long p) {
    int deg = static_cast<int>(m.size()) - 1;
    if (deg <= 0) return false;
    long half_count = 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        half_count *= p;
        for (long code = 0; code < half_count; ++code) {
            Poly div = monic_from_code(code, p, d);
            if (poly_is_zero(poly_mod(m, div, p))) return false;
        }
    }
    return true;
}

std::string format_poly(const Poly& m) {
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) {
        long c = m[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c > 1) os << c;
        if (i >= 1) {
            if (c > 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

long poly_to_code(const Poly& a, long p, int len) {
    long code = 0;
    for (int i = len - 1; i >= 0; --i) {
        long c = i < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(i)] : 0;
        code = code * p + c;
    }
    return code;
}

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

std::shared_ptr<const GF> GF::make(long p, int f) {
    if (!is_prime_long(p)) throw input_error("field characteristic must be prime");
    if (f < 1 || f > 12) throw input_error("field extension degree out of range");
    long q = 1;
    for (int i = 0; i < f; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw input_error("field order too large for tables");
    }

    auto gf = std::shared_ptr<GF>(new GF());
    gf->p_ = p;
    gf->f_ = f;
    gf->q_ = q;
    gf->add_.assign(static_cast<std::size_t>(q * q), 0);
    gf->mul_.assign(static_cast<std::size_t>(q * q), 0);
    gf->neg_.assign(static_cast<std::size_t>(q), 0);
    gf->inv_.assign(static_cast<std::size_t>(q), 0);

    if (f == 1) {
        gf->modulus_.clear();
        for (long a = 0; a < q; ++a) {
            gf->neg_[static_cast<std::size_t>(a)] = (q - a) % q;
            for (long b = 0; b < q; ++b) {
                gf->add_[static_cast<std::size_t>(a * q + b)] = (a + b) % q;
                gf->mul_[static_cast<std::size_t>(a * q + b)] = (a * b) % q;
            }
        }
    } else {
        // Pick the irreducible monic modulus with the smallest coefficient code.
        long lower_count = 1;
        for (int i = 0; i < f; ++i) lower_count *= p;
        Poly modulus;
        for (long code = 0; code < lower_count; ++code) {
            Poly cand = monic_from_code(code, p, f);
            if (poly_irreducible(cand, p)) {
                modulus = cand;
                break;
            }
        }
        if (modulus.empty()) throw invariant_error("no irreducible modulus found");
        gf->modulus_ = format_poly(modulus);

        for (long a = 0; a < q; ++a) {
            Poly pa = poly_from_code(a, p, f);
            Poly na(pa.size(), 0);
            for (std::size_t i = 0; i < pa.size(); ++i) na[i] = (p - pa[i]) % p;
            gf->neg_[static_cast<std::size_t>(a)] = poly_to_code(na, p, f);
            for (long b = 0; b < q; ++b) {
                Poly pb = poly_from_code(b, p, f);
                Poly sum(static_cast<std::size_t>(f), 0);
                for (int i = 0; i < f; ++i)
                    sum[static_cast<std::size_t>(i)] =
                        (pa[static_cast<std::size_t>(i)] + pb[static_cast<std::size_t>(i)]) % p;
                gf->add_[static_cast<std::size_t>(a * q + b)] = poly_to_code(sum, p, f);
                Poly prod = poly_mod(poly_mul(pa, pb, p), modulus, p);
                gf->mul_[static_cast<std::size_t>(a * q + b)] = poly_to_code(prod, p, f);
            }
        }
    }

    for (long a = 1; a < q; ++a) {
        for (long b = 1; b < q; ++b) {
            if (gf->mul(a, b) == 1) {
                gf->inv_[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
        if (gf->inv_[static_cast<std::size_t>(a)] == 0)
            throw invariant_error("nonzero field element without inverse");
    }

    gf->primitive_ = 1;
    for (long a = 1; a < q; ++a) {
        if (gf->element_order(a) == q - 1) {
            gf->primitive_ = a;
            break;
        }
    }
    return gf;
}

long GF::inv(long a) const {
    if (a == 0) throw input_error("division by zero in finite field");
    return inv_[static_cast<std::size_t>(a)];
}

long GF::element_order(long a) const {
    if (a == 0) throw input_error("zero has no multiplicative order");
    long ord = 1;
    long cur = a;
    while (cur != 1) {
        cur = mul(cur, a);
        ++ord;
    }
    return ord;
}

MatrixFp::MatrixFp(std::shared_ptr<const GF> field, int d)
    : field_(std::move(field)), d_(d), a_(static_cast<std::size_t>(d) * d, 0) {
    if (d < 1) throw input_error("matrix dimension must be positive");
}

MatrixFp MatrixFp::identity(std::shared_ptr<const GF> field, int d) {
    MatrixFp m(std::move(field), d);
    for (int i = 0; i < d; ++i) m.set(i, i, 1);
    return m;
}

bool MatrixFp::is_identity() const {
    for (int r = 0; r < d_; ++r)
        for (int c = 0; c < d_; ++c)
            if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
}

bool MatrixFp::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](long v) { return v == 0; });
}

MatrixFp MatrixFp::operator*(const MatrixFp& o) const {
    if (d_ != o.d_ || field_->q() != o.field_->q())
        throw input_error("matrix shape or field mismatch in product");
    MatrixFp out(field_, d_);
    for (int r = 0; r < d_; ++r)
        for (int c = 0; c < d_; ++c) {
            long acc = 0;
            for (int k = 0; k < d_; ++k)
                acc = field_->add(acc, field_->mul(at(r, k), o.at(k, c)));
            out.set(r, c, acc);
        }
    return out;
}

MatrixFp MatrixFp::operator+(const MatrixFp& o) const {
    if (d_ != o.d_ || field_->q() != o.field_->q())
        throw input_error("matrix shape or field mismatch in sum");
    MatrixFp out(field_, d_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->add(a_[i], o.a_[i]);
    return out;
}

MatrixFp MatrixFp::operator-(const MatrixFp& o) const {
    if (d_ != o.d_ || field_->q() != o.field_->q())
        throw input_error("matrix shape or field mismatch in difference");
    MatrixFp out(field_, d_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_->sub(a_[i], o.a_[i]);
    return out;
}

std::vector<long> MatrixFp::apply(const std::vector<long>& v) const {
    if (static_cast<int>(v.size()) != d_) throw input_error("vector length mismatch");
    std::vector<long> out(static_cast<std::size_t>(d_), 0);
    for (int r = 0; r < d_; ++r) {
        long acc = 0;
        for (int c = 0; c < d_; ++c)
            acc = field_->add(acc, field_->mul(at(r, c), v[static_cast<std::size_t>(c)]));
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

MatrixFp MatrixFp::inverse() const {
    // Gauss-Jordan on [A | I].
    MatrixFp a = *this;
    MatrixFp inv = identity(field_, d_);
    for (int col = 0; col < d_; ++col) {
        int pivot = -1;
        for (int r = col; r < d_; ++r)
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw input_error("matrix is singular");
        if (pivot != col) {
            for (int c = 0; c < d_; ++c) {
                std::swap(a.a_[static_cast<std::size_t>(pivot * d_ + c)],
                          a.a_[static_cast<std::size_t>(col * d_ + c)]);
                std::swap(inv.a_[static_cast<std::size_t>(pivot * d_ + c)],
                          inv.a_[static_cast<std::size_t>(col * d_ + c)]);
            }
        }
        long scale = field_->inv(a.at(col, col));
        for (int c = 0; c < d_; ++c) {
            a.set(col, c, field_->mul(scale, a.at(col, c)));
            inv.set(col, c, field_->mul(scale, inv.at(col, c)));
        }
        for (int r = 0; r < d_; ++r) {
            if (r == col) continue;
            long factor = a.at(r, col);
            if (factor == 0) continue;
            for (int c = 0; c < d_; ++c) {
                a.set(r, c, field_->sub(a.at(r, c), field_->mul(factor, a.at(col, c))));
                inv.set(r, c, field_->sub(inv.at(r, c), field_->mul(factor, inv.at(col, c))));
            }
        }
    }
    return inv;
}

bool MatrixFp::is_invertible() const {
    MatrixFp a = *this;
    int rank = 0;
    for (int col = 0; col < d_ && rank < d_; ++col) {
        int pivot = -1;
        for (int r = rank; r < d_; ++r)
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int c = 0; c < d_; ++c)
            std::swap(a.a_[static_cast<std::size_t>(pivot * d_ + c)],
                      a.a_[static_cast<std::size_t>(rank * d_ + c)]);
        long scale = field_->inv(a.at(rank, col));
        for (int c = 0; c < d_; ++c) a.set(rank, c, field_->mul(scale, a.at(rank, c)));
        for (int r = rank + 1; r < d_; ++r) {
            long factor = a.at(r, col);
            if (factor == 0) continue;
            for (int c = 0; c < d_; ++c)
                a.set(r, c, field_->sub(a.at(r, c), field_->mul(factor, a.at(rank, c))));
        }
        ++rank;
    }
    return rank == d_;
}

bigint MatrixFp::order(long cap) const {
    if (!is_invertible()) throw input_error("order of a singular matrix");
    MatrixFp cur = *this;
    bigint ord = 1;
    while (!cur.is_identity()) {
        cur = cur * *this;
        ++ord;
        if (ord > cap) throw cap_error("matrix order exceeds cap");
    }
    return ord;
}

std::string MatrixFp::to_string() const {
    std::ostringstream os;
    for (int r = 0; r < d_; ++r) {
        os << "[";
        for (int c = 0; c < d_; ++c) {
            if (c) os << " ";
            os << at(r, c);
        }
        os << "]";
        if (r + 1 < d_) os << "\n";
    }
    return os.str();
}

SubspaceFp::SubspaceFp(std::shared_ptr<const GF> field, int d,
                       const std::vector<std::vector<long>>& spanning_vectors)
    : field_(std::move(field)), d_(d) {
    if (d < 1) throw input_error("ambient dimension must be positive");
    // Row reduce the spanning set into reduced echelon form.
    std::vector<std::vector<long>> rows;
    for (const auto& v : spanning_vectors) {
        if (static_cast<int>(v.size()) != d) throw input_error("vector length mismatch");
        rows.push_back(v);
    }
    std::size_t rank = 0;
    for (int col = 0; col < d && rank < rows.size(); ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][static_cast<std::size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        long scale = field_->inv(rows[rank][static_cast<std::size_t>(col)]);
        for (auto& x : rows[rank]) x = field_->mul(scale, x);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            long factor = rows[r][static_cast<std::size_t>(col)];
            if (factor == 0) continue;
            for (int c = 0; c < d; ++c)
                rows[r][static_cast<std::size_t>(c)] = field_->sub(
                    rows[r][static_cast<std::size_t>(c)],
                    field_->mul(factor, rows[rank][static_cast<std::size_t>(c)]));
        }
        ++rank;
    }
    rows.resize(rank);
    basis_ = std::move(rows);
}

bool SubspaceFp::contains(const std::vector<long>& v) const {
    if (static_cast<int>(v.size()) != d_) throw input_error("vector length mismatch");
    std::vector<long> rem = v;
    for (const auto& b : basis_) {
        int pivot = -1;
        for (int c = 0; c < d_; ++c)
            if (b[static_cast<std::size_t>(c)] != 0) {
                pivot = c;
                break;
            }
        long factor = rem[static_cast<std::size_t>(pivot)];
        if (factor == 0) continue;
        for (int c = 0; c < d_; ++c)
            rem[static_cast<std::size_t>(c)] = field_->sub(
                rem[static_cast<std::size_t>(c)], field_->mul(factor, b[static_cast<std::size_t>(c)]));
    }
    return std::all_of(rem.begin(), rem.end(), [](long x) { return x == 0; });
}

RankDecomposition mat_rank_image_kernel(const MatrixFp& m) {
    const auto& field = m.field();
    int d = m.dim();

    std::vector<std::vector<long>> columns;
    for (int c = 0; c < d; ++c) {
        std::vector<long> col(static_cast<std::size_t>(d));
        for (int r = 0; r < d; ++r) col[static_cast<std::size_t>(r)] = m.at(r, c);
        columns.push_back(std::move(col));
    }
    SubspaceFp image(field, d, columns);

    // Null space from the reduced echelon form of the rows of m.
    std::vector<std::vector<long>> rows;
    for (int r = 0; r < d; ++r) {
        std::vector<long> row(static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c) row[static_cast<std::size_t>(c)] = m.at(r, c);
        rows.push_back(std::move(row));
    }
    SubspaceFp row_space(field, d, rows);
    const auto& rref = row_space.basis();
    std::vector<int> pivot_col;
    for (const auto& b : rref) {
        for (int c = 0; c < d; ++c)
            if (b[static_cast<std::size_t>(c)] != 0) {
                pivot_col.push_back(c);
                break;
            }
    }
    std::vector<std::vector<long>> null_vectors;
    for (int c = 0; c < d; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
        std::vector<long> v(static_cast<std::size_t>(d), 0);
        v[static_cast<std::size_t>(c)] = 1;
        for (std::size_t i = 0; i < rref.size(); ++i)
            v[static_cast<std::size_t>(pivot_col[i])] =
                field->neg(rref[i][static_cast<std::size_t>(c)]);
        null_vectors.push_back(std::move(v));
    }
    SubspaceFp kernel(field, d, null_vectors);

    RankDecomposition out{image.dim(), std::move(image), std::move(kernel)};
    if (out.rank + out.kernel.dim() != d)
        throw invariant_error("rank and nullity do not add up");
    return out;
}

IrreducibilityReport is_irreducible(const std::vector<MatrixFp>& generators, long spin_cap) {
    if (generators.empty()) throw input_error("need at least one matrix");
    const auto& field = generators.front().field();
    int d = generators.front().dim();
    for (const auto& g : generators)
        if (g.dim() != d || g.field()->q() != field->q())
            throw input_error("matrix shape or field mismatch");

    long q = field->q();
    bigint domain = 1;
    for (int i = 0; i < d; ++i) domain *= q;
    if (domain > spin_cap) throw cap_error("vector space too large for invariant-subspace scan");
    long n = static_cast<long>(domain);

    IrreducibilityReport report;
    if (d == 1) {
        report.irreducible = true;
        return report;
    }
    for (long code = 1; code < n; ++code) {
        std::vector<long> seed = decode_vector(code, q, d);
        // Normalize to a leading coefficient of 1; scalar multiples spin to
        // the same subspace.
        int lead = -1;
        for (int i = 0; i < d; ++i)
            if (seed[static_cast<std::size_t>(i)] != 0) {
                lead = i;
                break;
            }
        if (seed[static_cast<std::size_t>(lead)] != 1) continue;

        std::vector<std::vector<long>> span_vectors{seed};
        SubspaceFp span(field, d, span_vectors);
        bool grew = true;
        while (grew && span.dim() < d) {
            grew = false;
            std::vector<std::vector<long>> next = span_vectors;
            for (const auto& g : generators)
                for (const auto& v : span_vectors) {
                    std::vector<long> w = g.apply(v);
                    if (!span.contains(w)) {
                        next.push_back(w);
                        grew = true;
                    }
                }
            if (grew) {
                span = SubspaceFp(field, d, next);
                span_vectors = span.basis();
            }
        }
        if (span.dim() < d) {
            report.irreducible = false;
            report.witness = std::make_unique<SubspaceFp>(span);
            return report;
        }
    }
    report.irreducible = true;
    return report;
}

std::vector<MatrixFp> gl_generators(const std::shared_ptr<const GF>& field, int d) {
    if (d < 1) throw input_error("matrix dimension must be positive");
    std::vector<MatrixFp> gens;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            MatrixFp t = MatrixFp::identity(field, d);
            t.set(i, j, 1);
            gens.push_back(std::move(t));
        }
    if (field->q() > 2) {
        MatrixFp diag = MatrixFp::identity(field, d);
        diag.set(0, 0, field->primitive_element());
        gens.push_back(std::move(diag));
    }
    return gens;
}

bigint gl_order(long q, int d) {
    bigint qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    bigint out = 1;
    bigint qi = 1;
    for (int i = 0; i < d; ++i) {
        out *= qd - qi;
        qi *= q;
    }
    return out;
}

long encode_vector(const std::vector<long>& v, long q) {
    long code = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
        long digit = v[i];
        if (digit < 0 || digit >= q) throw input_error("vector entry out of field range");
        code = code * q + digit;
    }
    return code;
}

std::vector<long> decode_vector(long code, long q, int d) {
    std::vector<long> v(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        v[static_cast<std::size_t>(i)] = code % q;
        code /= q;
    }
    if (code != 0) throw input_error("vector code out of range");
    return v;
}

namespace {

long domain_size_checked(const MatrixFp& m) {
    long q = m.field()->q();
    long n = 1;
    for (int i = 0; i < m.dim(); ++i) {
        n *= q;
        if (n > (1L << 26)) throw cap_error("vector space too large to realize as permutations");
    }
    return n;
}

}  // namespace

Permutation matrix_permutation_full(const MatrixFp& m) {
    if (!m.is_invertible()) throw input_error("only invertible matrices permute the vectors");
    long q = m.field()->q();
    long n = domain_size_checked(m);
    std::vector<int> images(static_cast<std::size_t>(n));
    for (long code = 0; code < n; ++code)
        images[static_cast<std::size_t>(code)] =
            static_cast<int>(encode_vector(m.apply(decode_vector(code, q, m.dim())), q));
    return Permutation(images);
}

Permutation matrix_permutation_nonzero(const MatrixFp& m) {
    if (!m.is_invertible()) throw input_error("only invertible matrices permute the vectors");
    long q = m.field()->q();
    long n = domain_size_checked(m);
    std::vector<int> images(static_cast<std::size_t>(n - 1));
    for (long code = 1; code < n; ++code)
        images[static_cast<std::size_t>(code - 1)] =
            static_cast<int>(encode_vector(m.apply(decode_vector(code, q, m.dim())), q)) - 1;
    return Permutation(images);
}

MatrixFp subfield_blowup(const MatrixFp& m, const std::shared_ptr<const GF>& prime_field) {
    const auto& ext = m.field();
    if (prime_field->f() != 1 || prime_field->p() != ext->p())
        throw input_error("blowup target must be the prime subfield");
    int f = ext->f();
    int d = m.dim();
    MatrixFp out(prime_field, d * f);
    long p = ext->p();
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            long entry = m.at(r, c);
            // Column j of the block is entry * x^j expanded in base p.
            long basis_power = 1;
            for (int j = 0; j < f; ++j) {
                long prod = ext->mul(entry, basis_power);
                for (int i = 0; i < f; ++i) {
                    out.set(r * f + i, c * f + j, prod % p);
                    prod /= p;
                }
                basis_power = ext->mul(basis_power, p);  // code p encodes x
            }
        }
    return out;
}

}  // namespace derange
