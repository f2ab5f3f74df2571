#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace vidinli {

/// Finite-dimensional algebra given by structure constants:
/// e_i e_j = sum_k c[i][j][k] e_k. Not assumed associative or commutative.
/// When unit_index is set, that basis vector is a verified two-sided unity.
class Algebra {
public:
    Algebra(const Field& f, std::size_t n, std::vector<Scalar> constants,
            std::optional<std::size_t> unit_index = std::nullopt)
        : field_(f), n_(n), c_(std::move(constants)), unit_(unit_index) {
        if (c_.size() != n * n * n) throw input_error("structure constants must have n^3 entries");
        for (const auto& x : c_)
            if (x.field() != f) throw input_error("structure constant field mismatch");
        if (unit_) {
            if (*unit_ >= n) throw input_error("unit index out of range");
            Vec u = unit_vec(f, n, *unit_);
            for (std::size_t i = 0; i < n; ++i) {
                Vec e = unit_vec(f, n, i);
                if (product(u, e) != e || product(e, u) != e)
                    throw input_error("claimed unity at index " + std::to_string(*unit_) +
                                      " fails on basis vector " + std::to_string(i));
            }
        }
    }

    const Field& field() const { return field_; }
    std::size_t dim() const { return n_; }
    std::optional<std::size_t> unit_index() const { return unit_; }

    Vec unity() const {
        if (!unit_) throw input_error("algebra has no unity");
        return unit_vec(field_, n_, *unit_);
    }

    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const {
        return c_.at((i * n_ + j) * n_ + k);
    }

    const std::vector<Scalar>& constants() const { return c_; }

    Vec basis_product(std::size_t i, std::size_t j) const {
        Vec v = zero_vec(field_, n_);
        for (std::size_t k = 0; k < n_; ++k) v[k] = c(i, j, k);
        return v;
    }

    Vec product(const Vec& x, const Vec& y) const {
        if (x.size() != n_ || y.size() != n_) throw input_error("product dimension mismatch");
        Vec out = zero_vec(field_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (y[j].is_zero()) continue;
                Scalar xy = x[i] * y[j];
                for (std::size_t k = 0; k < n_; ++k)
                    out[k] = out[k] + xy * c(i, j, k);
            }
        }
        return out;
    }

    Vec commutator(const Vec& x, const Vec& y) const {
        return vec_sub(product(x, y), product(y, x));
    }

    Vec associator(const Vec& x, const Vec& y, const Vec& z) const {
        return vec_sub(product(product(x, y), z), product(x, product(y, z)));
    }

    /// Matrix of y ↦ x·y.
    Matrix left_mult(const Vec& x) const {
        Matrix m(field_, n_, n_);
        for (std::size_t j = 0; j < n_; ++j) {
            Vec col = product(x, unit_vec(field_, n_, j));
            for (std::size_t k = 0; k < n_; ++k) m.at(k, j) = col[k];
        }
        return m;
    }

    /// Matrix of y ↦ y·x.
    Matrix right_mult(const Vec& x) const {
        Matrix m(field_, n_, n_);
        for (std::size_t j = 0; j < n_; ++j) {
            Vec col = product(unit_vec(field_, n_, j), x);
            for (std::size_t k = 0; k < n_; ++k) m.at(k, j) = col[k];
        }
        return m;
    }

    bool same_constants(const Algebra& o) const {
        return n_ == o.n_ && field_ == o.field_ && c_ == o.c_ && unit_ == o.unit_;
    }

private:
    Field field_;
    std::size_t n_;
    std::vector<Scalar> c_;
    std::optional<std::size_t> unit_;
};

namespace detail {

inline std::size_t require_unit(const Algebra& a) {
    if (!a.unit_index()) throw input_error("a unital algebra is required");
    return *a.unit_index();
}

} // namespace detail

/// Basis vectors and all pairwise sums. Any identity of degree at most 2
/// per argument that vanishes on this set vanishes identically.
inline std::vector<Vec> verification_set(const Algebra& a) {
    const Field& f = a.field();
    std::size_t n = a.dim();
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vec(f, n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.push_back(vec_add(unit_vec(f, n, i), unit_vec(f, n, j)));
    return out;
}

/// Smallest two-sided ideal containing the generators.
inline Subspace ideal_closure(const Algebra& a, const std::vector<Vec>& generators) {
    const Field& f = a.field();
    std::size_t n = a.dim();
    Subspace s = Subspace::span(f, n, generators);
    std::vector<Vec> work = s.basis();
    while (!work.empty()) {
        Vec v = work.back();
        work.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            for (const Vec& w : {a.product(unit_vec(f, n, i), v), a.product(v, unit_vec(f, n, i))}) {
                if (s.contains(w)) continue;
                s = sum(s, Subspace::span(f, n, std::vector<Vec>{w}));
                work.push_back(w);
            }
        }
    }
    return s;
}

inline bool is_ideal(const Algebra& a, const Subspace& s) {
    if (s.ambient_dim() != a.dim()) throw input_error("subspace ambient mismatch");
    const Field& f = a.field();
    for (const auto& v : s.basis())
        for (std::size_t i = 0; i < a.dim(); ++i) {
            if (!s.contains(a.product(unit_vec(f, a.dim(), i), v))) return false;
            if (!s.contains(a.product(v, unit_vec(f, a.dim(), i)))) return false;
        }
    return true;
}

struct QuotientResult {
    Algebra algebra;
    Matrix projection; // (dim quotient) x (dim A); the canonical surjection
};

/// A/I on a complement basis. When A is unital, the quotient basis is
/// arranged so the image of unity is the quotient's basis vector 0.
inline QuotientResult quotient_algebra(const Algebra& a, const Subspace& ideal) {
    if (!is_ideal(a, ideal)) throw input_error("quotient by a subspace that is not an ideal");
    const Field& f = a.field();
    std::size_t n = a.dim(), q = n - ideal.dim();

    if (q == 0)
        return {Algebra(f, 0, {}, std::nullopt), Matrix(f, 0, n)};

    std::vector<Vec> comp = ideal.std_complement();
    std::vector<Vec> rows = ideal.basis();
    rows.insert(rows.end(), comp.begin(), comp.end());
    auto basis_inv = inverse(Matrix::from_rows(f, rows, n).transpose());
    if (!basis_inv) throw theorem_violation("complement basis is singular");
    Matrix proj(f, q, n);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < n; ++j) proj.at(i, j) = basis_inv->at(ideal.dim() + i, j);

    std::optional<std::size_t> unit_idx;
    if (a.unit_index()) {
        // change basis in the quotient so the image of unity is e_0
        Vec v = proj.apply(a.unity());
        if (vec_is_zero(v)) throw theorem_violation("unity fell into a proper ideal");
        std::vector<Vec> cols{v};
        Subspace reach = Subspace::span(f, q, cols);
        for (std::size_t j = 0; j < q && cols.size() < q; ++j) {
            Vec e = unit_vec(f, q, j);
            if (reach.contains(e)) continue;
            cols.push_back(e);
            reach = sum(reach, Subspace::span(f, q, std::vector<Vec>{e}));
        }
        Matrix s = Matrix::from_rows(f, cols, q).transpose();
        auto sinv = inverse(s);
        if (!sinv) throw theorem_violation("unity basis change is singular");
        proj = *sinv * proj;
        unit_idx = 0;
    }

    // induced constants through the projection
    std::vector<Vec> lift; // lift[i] = a preimage of quotient basis vector i
    for (std::size_t i = 0; i < q; ++i) {
        auto x = solve_linear(proj, unit_vec(f, q, i));
        if (!x) throw theorem_violation("projection is not surjective");
        lift.push_back(*x);
    }
    std::vector<Scalar> cc(q * q * q, Scalar::zero(f));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Vec prod = proj.apply(a.product(lift[i], lift[j]));
            for (std::size_t k = 0; k < q; ++k) cc[(i * q + j) * q + k] = prod[k];
        }
    Algebra quot(f, q, std::move(cc), unit_idx);

    // the projection must be a homomorphism
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = proj.apply(a.basis_product(i, j));
            Vec rhs = quot.product(proj.apply(unit_vec(f, n, i)), proj.apply(unit_vec(f, n, j)));
            if (lhs != rhs) throw theorem_violation("quotient projection is not a homomorphism");
        }
    return {std::move(quot), std::move(proj)};
}

struct Centers {
    Subspace K; // commutes with everything
    Subspace N; // associates with everything (all three slots)
    Subspace Z; // both
};

/// Commutative center, nucleus, and center, each as the kernel of one
/// stacked linear system.
inline Centers centers(const Algebra& a) {
    const Field& f = a.field();
    std::size_t n = a.dim();
    Matrix kmat(f, 0, n), nmat(f, 0, n);
    std::vector<Matrix> lefts, rights;
    for (std::size_t i = 0; i < n; ++i) {
        lefts.push_back(a.left_mult(unit_vec(f, n, i)));
        rights.push_back(a.right_mult(unit_vec(f, n, i)));
    }
    for (std::size_t i = 0; i < n; ++i)
        kmat = vstack(kmat, rights[i] - lefts[i]); // x e_i - e_i x = 0
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix rij = a.right_mult(a.basis_product(i, j));
            Matrix lij = a.left_mult(a.basis_product(i, j));
            nmat = vstack(nmat, rights[j] * rights[i] - rij);       // (x e_i) e_j - x (e_i e_j)
            nmat = vstack(nmat, rights[j] * lefts[i] - lefts[i] * rights[j]); // (e_i x) e_j - e_i (x e_j)
            nmat = vstack(nmat, lij - lefts[i] * lefts[j]);         // (e_i e_j) x - e_i (e_j x)
        }
    Centers out{kernel(kmat), kernel(nmat), kernel(vstack(kmat, nmat))};
    return out;
}

/// Linear span of operators on an n-dim space, stored canonically via
/// row-major vectorization.
class OperatorSpan {
public:
    OperatorSpan(const Field& f, std::size_t n, const Subspace& space)
        : field_(f), n_(n), space_(space) {
        if (space.ambient_dim() != n * n) throw input_error("operator span ambient mismatch");
    }

    static OperatorSpan from_matrices(const Field& f, std::size_t n,
                                      const std::vector<Matrix>& mats) {
        std::vector<Vec> rows;
        for (const auto& m : mats) {
            if (m.rows() != n || m.cols() != n) throw input_error("operator shape mismatch");
            rows.push_back(m.vectorize());
        }
        return OperatorSpan(f, n, Subspace::span(f, n * n, rows));
    }

    const Field& field() const { return field_; }
    std::size_t op_dim() const { return n_; }
    std::size_t dim() const { return space_.dim(); }
    const Subspace& space() const { return space_; }

    bool contains(const Matrix& m) const { return space_.contains(m.vectorize()); }

    std::vector<Matrix> basis_matrices() const {
        std::vector<Matrix> out;
        for (const auto& row : space_.basis())
            out.push_back(Matrix::from_vectorized(field_, n_, n_, row));
        return out;
    }

    bool operator==(const OperatorSpan& o) const {
        return n_ == o.n_ && space_ == o.space_;
    }
    bool operator!=(const OperatorSpan& o) const { return !(*this == o); }

private:
    Field field_;
    std::size_t n_;
    Subspace space_;
};

namespace detail {

enum class ClosureKind { composition, bracket };

inline OperatorSpan close_span(const Field& f, std::size_t n, std::vector<Matrix> gens,
                               ClosureKind kind, bool with_identity) {
    if (with_identity) gens.push_back(Matrix::identity(f, n));
    std::vector<Vec> rows;
    for (const auto& g : gens) rows.push_back(g.vectorize());
    Subspace s = Subspace::span(f, n * n, rows);
    std::vector<Matrix> work;
    for (const auto& row : s.basis()) work.push_back(Matrix::from_vectorized(f, n, n, row));
    while (!work.empty()) {
        Matrix b = work.back();
        work.pop_back();
        for (const auto& g : gens) {
            std::vector<Matrix> raw;
            if (kind == ClosureKind::composition) {
                raw.push_back(b * g);
                raw.push_back(g * b);
            } else {
                raw.push_back(b * g - g * b);
            }
            for (const auto& m : raw) {
                Vec v = m.vectorize();
                if (s.contains(v)) continue;
                s = sum(s, Subspace::span(f, n * n, std::vector<Vec>{v}));
                work.push_back(m);
            }
        }
    }
    return OperatorSpan(f, n, s);
}

} // namespace detail

/// Unital associative operator algebra generated by all left and right
/// multiplications.
inline OperatorSpan mult_algebra_closure(const Algebra& a) {
    const Field& f = a.field();
    std::size_t n = a.dim();
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < n; ++i) {
        gens.push_back(a.left_mult(unit_vec(f, n, i)));
        gens.push_back(a.right_mult(unit_vec(f, n, i)));
    }
    return detail::close_span(f, n, std::move(gens), detail::ClosureKind::composition, true);
}

/// Lie algebra of operators generated by all left and right multiplications
/// under the commutator bracket. Left-normed brackets span everything.
inline OperatorSpan lie_mult_algebra_closure(const Algebra& a) {
    const Field& f = a.field();
    std::size_t n = a.dim();
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < n; ++i) {
        gens.push_back(a.left_mult(unit_vec(f, n, i)));
        gens.push_back(a.right_mult(unit_vec(f, n, i)));
    }
    return detail::close_span(f, n, std::move(gens), detail::ClosureKind::bracket, false);
}

/// Solutions D of D(xy) = D(x)y + xD(y), as an operator span.
inline OperatorSpan derivations_generic(const Algebra& a) {
    const Field& f = a.field();
    std::size_t n = a.dim();
    // unknowns D[r][c] flattened row-major; one equation per (i, j, m)
    Matrix sys(f, n * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t m = 0; m < n; ++m) {
                std::size_t row = (i * n + j) * n + m;
                for (std::size_t k = 0; k < n; ++k)
                    sys.at(row, m * n + k) = sys.at(row, m * n + k) + a.c(i, j, k);
                for (std::size_t l = 0; l < n; ++l) {
                    sys.at(row, l * n + i) = sys.at(row, l * n + i) - a.c(l, j, m);
                    sys.at(row, l * n + j) = sys.at(row, l * n + j) - a.c(i, l, m);
                }
            }
    return OperatorSpan(f, n, kernel(sys));
}

struct IdentityPredicates {
    bool commutative;
    bool anticommutative;
    bool flexible;
    bool jordan;
    bool associative;
    bool power_assoc_deg2;
};

/// Each identity is evaluated literally on the polarization verification
/// set (basis vectors and pairwise sums).
inline IdentityPredicates identity_predicates(const Algebra& a) {
    std::vector<Vec> vs = verification_set(a);
    IdentityPredicates p{true, true, true, true, true, true};
    for (const auto& x : vs) {
        Vec xx = a.product(x, x);
        if (!vec_is_zero(xx)) p.anticommutative = false;
        if (a.product(xx, x) != a.product(x, xx)) p.power_assoc_deg2 = false;
        if (a.product(xx, xx) != a.product(a.product(xx, x), x)) p.power_assoc_deg2 = false;
    }
    for (const auto& x : vs)
        for (const auto& y : vs) {
            Vec xy = a.product(x, y), yx = a.product(y, x);
            if (xy != yx) p.commutative = false;
            if (!vec_is_zero(vec_add(xy, yx))) p.anticommutative = false;
            if (a.product(xy, x) != a.product(x, yx)) p.flexible = false;
            Vec xx = a.product(x, x);
            if (a.product(a.product(xx, y), x) != a.product(xx, yx)) p.jordan = false;
        }
    p.jordan = p.jordan && p.commutative;
    p.associative = [&] {
        for (const auto& x : vs)
            for (const auto& y : vs)
                for (const auto& z : vs)
                    if (!vec_is_zero(a.associator(x, y, z))) return false;
        return true;
    }();
    return p;
}

/// (A⁺, A⁻): symmetrized product x∘y = (xy+yx)/2 and commutator product.
/// A⁺ keeps the unity; A⁻ has none.
inline std::pair<Algebra, Algebra> plus_minus_algebras(const Algebra& a) {
    const Field& f = a.field();
    if (f.characteristic() == 2) throw input_error("symmetrized algebra needs characteristic != 2");
    std::size_t n = a.dim();
    Scalar half = Scalar::of_int(f, 2).inverse();
    std::vector<Scalar> plus(n * n * n, Scalar::zero(f)), minus(n * n * n, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                plus[(i * n + j) * n + k] = half * (a.c(i, j, k) + a.c(j, i, k));
                minus[(i * n + j) * n + k] = a.c(i, j, k) - a.c(j, i, k);
            }
    return {Algebra(f, n, std::move(plus), a.unit_index()),
            Algebra(f, n, std::move(minus), std::nullopt)};
}

inline constexpr std::size_t kDefaultEnumerationBound = 1000000;

/// Every ideal of the form ideal_closure(single vector), deduplicated and
/// sorted by dimension, the zero ideal included. Finite fields only; the
/// whole vector set p^n must stay within the bound. A is simple iff the
/// result is exactly {0, A} (every nonzero ideal contains a principal one).
inline std::vector<Subspace> enumerate_ideals(const Algebra& a,
                                              std::size_t bound = kDefaultEnumerationBound) {
    const Field& f = a.field();
    if (f.is_rational())
        throw input_error("ideal enumeration needs a finite field; over the rationals use the "
                          "structural classification");
    std::size_t n = a.dim();
    std::uint64_t p = f.characteristic();
    unsigned __int128 count = 1;
    for (std::size_t i = 0; i < n; ++i) {
        count *= p;
        if (count > bound)
            throw input_error("ideal enumeration refused: p^dim exceeds the bound " +
                              std::to_string(bound) + " (raise the bound parameter to override)");
    }

    std::vector<Subspace> found{Subspace::zero(f, n)};
    std::set<std::string> seen;
    auto key = [](const Subspace& s) {
        std::string k = std::to_string(s.dim()) + ":";
        for (const auto& row : s.basis())
            for (const auto& x : row) k += x.str() + ",";
        return k;
    };
    seen.insert(key(found[0]));

    std::vector<std::uint64_t> digits(n, 0);
    while (true) {
        // next vector in odometer order
        std::size_t pos = 0;
        while (pos < n && digits[pos] + 1 == p) digits[pos++] = 0;
        if (pos == n) break;
        ++digits[pos];
        // one representative per line: first nonzero digit equal to 1
        std::size_t first = 0;
        while (digits[first] == 0) ++first;
        if (digits[first] != 1) continue;
        Vec v = zero_vec(f, n);
        for (std::size_t i = 0; i < n; ++i) v[i] = Scalar::of_int(f, static_cast<long>(digits[i]));
        Subspace s = ideal_closure(a, {v});
        if (seen.insert(key(s)).second) found.push_back(s);
    }

    std::sort(found.begin(), found.end(), [](const Subspace& a, const Subspace& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        for (std::size_t i = 0; i < a.dim(); ++i) {
            Vec ra = a.basis_matrix().row(i), rb = b.basis_matrix().row(i);
            for (std::size_t j = 0; j < ra.size(); ++j) {
                if (ra[j] != rb[j]) return ra[j] < rb[j];
            }
        }
        return false;
    });
    return found;
}

} // namespace vidinli
