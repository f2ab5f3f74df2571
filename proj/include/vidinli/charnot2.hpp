#pragma once

#include <optional>
#include <vector>

#include "algebra.hpp"
#include "polynomial.hpp"

namespace vidinli {

/// Norm data of a conic algebra: x² = q(x,1)x − q(x)1 for every x.
/// q_gram holds the polar form q(e_i,e_j); q_diag holds the values q(e_i).
struct ConicCertificate {
    Matrix q_gram;
    std::vector<Scalar> q_diag;
    bool valid = false;

    Scalar q_of(const Vec& x) const {
        const Field& f = q_gram.field();
        Scalar v = Scalar::zero(f);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].is_zero()) continue;
            v = v + x[i] * x[i] * q_diag[i];
            for (std::size_t j = i + 1; j < x.size(); ++j)
                v = v + x[i] * x[j] * q_gram.at(i, j);
        }
        return v;
    }

    Scalar q_polar(const Vec& x, const Vec& y) const {
        const Field& f = q_gram.field();
        Scalar v = Scalar::zero(f);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j)
                v = v + x[i] * q_gram.at(i, j) * y[j];
        return v;
    }
};

namespace detail {

inline void require_char_not_2(const Field& f, const char* what) {
    if (f.characteristic() == 2)
        throw input_error(std::string(what) + " lives in the characteristic != 2 regime; "
                          "use the char-2 presentation commands for GF(2)");
}

/// Solves x·x = a·1 + b·x; nullopt when the square escapes span{1, x}.
inline std::optional<std::pair<Scalar, Scalar>> square_in_line(const Algebra& alg, const Vec& x) {
    const Field& f = alg.field();
    std::size_t n = alg.dim();
    Matrix sys(f, n, 2);
    Vec unity = alg.unity();
    for (std::size_t i = 0; i < n; ++i) {
        sys.at(i, 0) = unity[i];
        sys.at(i, 1) = x[i];
    }
    auto sol = solve_linear(sys, alg.product(x, x));
    if (!sol) return std::nullopt;
    return std::make_pair((*sol)[0], (*sol)[1]);
}

} // namespace detail

/// Recovers the norm of a conic algebra, or nullopt when some square
/// escapes span{1, x}. The certificate is emitted only after the conic
/// identity has been re-verified on the whole verification set.
inline std::optional<ConicCertificate> extract_norm(const Algebra& a) {
    const Field& f = a.field();
    std::size_t u = detail::require_unit(a);
    detail::require_char_not_2(f, "norm extraction");
    std::size_t n = a.dim();

    ConicCertificate cert{Matrix(f, n, n), std::vector<Scalar>(n, Scalar::zero(f)), false};
    cert.q_diag[u] = Scalar::one(f);
    cert.q_gram.at(u, u) = Scalar::of_int(f, 2);

    for (std::size_t i = 0; i < n; ++i) {
        if (i == u) continue;
        auto ab = detail::square_in_line(a, unit_vec(f, n, i));
        if (!ab) return std::nullopt;
        cert.q_diag[i] = -ab->first;
        cert.q_gram.at(i, u) = ab->second;
        cert.q_gram.at(u, i) = ab->second;
        cert.q_gram.at(i, i) = Scalar::of_int(f, 2) * cert.q_diag[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (i == u || j == u) continue;
            Vec x = vec_add(unit_vec(f, n, i), unit_vec(f, n, j));
            auto ab = detail::square_in_line(a, x);
            if (!ab) return std::nullopt;
            Scalar qx = -ab->first;
            Scalar polar = qx - cert.q_diag[i] - cert.q_diag[j];
            cert.q_gram.at(i, j) = polar;
            cert.q_gram.at(j, i) = polar;
        }

    // the recovered quadratic data must satisfy the conic identity everywhere
    Vec unity = a.unity();
    for (const auto& x : verification_set(a)) {
        Scalar qx = cert.q_of(x);
        Scalar qx1 = cert.q_polar(x, unity);
        Vec lhs = a.product(x, x);
        lhs = vec_sub(lhs, vec_scale(qx1, x));
        lhs = vec_add(lhs, vec_scale(qx, unity));
        if (!vec_is_zero(lhs)) return std::nullopt;
    }
    cert.valid = true;
    return cert;
}

enum class VidinliReason { accepted, not_conic, bracket_escapes_unity_line };

inline const char* to_string(VidinliReason r) {
    switch (r) {
        case VidinliReason::accepted: return "accepted";
        case VidinliReason::not_conic: return "not_conic";
        case VidinliReason::bracket_escapes_unity_line: return "bracket_escapes_unity_line";
    }
    return "?";
}

/// A Vidinli algebra in characteristic != 2, together with the canonical
/// data derived from it: V = (F1)^⊥ under the polar form, the commutator
/// form ω, and the bilinear form B with q(x,y) = B(x,y) + B(y,x) and
/// ω(x,y) = B(y,x) − B(x,y). B and ω are full Grams on A.
struct VidinliPresentation {
    Algebra algebra;
    Subspace V;
    Matrix B;
    Matrix omega;
    ConicCertificate q;

    std::size_t v_dim() const { return V.dim(); }

    /// Gram of a full-A form restricted to the rref basis of V.
    Matrix restrict_to_V(const Matrix& gram) const {
        const Matrix& w = V.basis_matrix();
        return w * gram * w.transpose();
    }

    Matrix B_on_V() const { return restrict_to_V(B); }
    Matrix omega_on_V() const { return restrict_to_V(omega); }
    Matrix q_on_V() const { return restrict_to_V(q.q_gram); }

    bool B_symmetric() const { return B == B.transpose(); }
};

struct IsVidinliResult {
    std::optional<VidinliPresentation> presentation;
    VidinliReason reason = VidinliReason::accepted;
};

/// Accepts conic algebras whose commutators all land on the unity line.
inline IsVidinliResult is_vidinli(const Algebra& a) {
    const Field& f = a.field();
    std::size_t u = detail::require_unit(a);
    detail::require_char_not_2(f, "this analysis");
    std::size_t n = a.dim();

    auto cert = extract_norm(a);
    if (!cert) return {std::nullopt, VidinliReason::not_conic};

    Matrix omega(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec com = a.commutator(unit_vec(f, n, i), unit_vec(f, n, j));
            for (std::size_t k = 0; k < n; ++k)
                if (k != u && !com[k].is_zero())
                    return {std::nullopt, VidinliReason::bracket_escapes_unity_line};
            omega.at(i, j) = com[u];
            omega.at(j, i) = -com[u];
        }

    Scalar half = Scalar::of_int(f, 2).inverse();
    Matrix b = (cert->q_gram - omega).scaled(half);

    Matrix ray(f, 1, n);
    for (std::size_t j = 0; j < n; ++j) ray.at(0, j) = cert->q_gram.at(u, j);
    Subspace v = kernel(ray); // q(·,1) vanishes: dim n−1 since q(1,1) = 2

    return {VidinliPresentation{a, v, b, omega, *cert}, VidinliReason::accepted};
}

/// A = F1 ⊕ V with (α1+u)(β1+v) = (αβ − B(u,v))1 + (αv + βu). The unity
/// is basis vector 0, V is spanned by the rest.
inline VidinliPresentation from_bilinear_form(const Field& f, const Matrix& b_on_v) {
    detail::require_char_not_2(f, "the bilinear-form presentation");
    if (b_on_v.rows() != b_on_v.cols()) throw input_error("B must be square");
    std::size_t m = b_on_v.rows(), n = m + 1;

    std::vector<Scalar> c(n * n * n, Scalar::zero(f));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
        c[(i * n + j) * n + k] = v;
    };
    set(0, 0, 0, Scalar::one(f));
    for (std::size_t i = 1; i < n; ++i) {
        set(0, i, i, Scalar::one(f));
        set(i, 0, i, Scalar::one(f));
        set(i, i, 0, -b_on_v.at(i - 1, i - 1));
        for (std::size_t j = 1; j < n; ++j)
            if (j != i) set(i, j, 0, -b_on_v.at(i - 1, j - 1));
    }
    Algebra alg(f, n, std::move(c), 0);

    auto res = is_vidinli(alg);
    if (!res.presentation)
        throw theorem_violation("bilinear-form construction failed its own acceptance");
    // the extracted B must literally be the input extended by B(1,1)=1
    const Matrix& b = res.presentation->B;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (b.at(i + 1, j + 1) != b_on_v.at(i, j))
                throw theorem_violation("bilinear form round trip changed an entry");
    if (!b.at(0, 0).is_one())
        throw theorem_violation("B(1,1) must extend to 1");
    return *res.presentation;
}

/// Jordan-superalgebra style form: B|V = −(sym ⊕ skew), so products on V
/// are uv = bup(u,v)·1 for the supersymmetric form bup = sym ⊕ skew.
inline VidinliPresentation from_super_form(const Field& f, const Matrix& sym, const Matrix& skew) {
    detail::require_char_not_2(f, "the super-form presentation");
    if (sym.rows() != sym.cols() || skew.rows() != skew.cols())
        throw input_error("blocks must be square");
    if (sym != sym.transpose()) throw input_error("even block must be symmetric");
    if (skew != skew.transpose().scaled(-Scalar::one(f)))
        throw input_error("odd block must be skew-symmetric");
    for (std::size_t i = 0; i < skew.rows(); ++i)
        if (!skew.at(i, i).is_zero()) throw input_error("odd block must vanish on the diagonal");

    std::size_t m0 = sym.rows(), m1 = skew.rows(), m = m0 + m1;
    Matrix b(f, m, m);
    for (std::size_t i = 0; i < m0; ++i)
        for (std::size_t j = 0; j < m0; ++j) b.at(i, j) = -sym.at(i, j);
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m1; ++j) b.at(m0 + i, m0 + j) = -skew.at(i, j);
    return from_bilinear_form(f, b);
}

/// Dim 2n+1 family: q|V the identity Gram, ω|V the standard symplectic
/// form, so B|V = I − S with S = [[0, I], [−I, 0]].
inline VidinliPresentation coskun_eden_example(const Field& f, std::size_t n) {
    detail::require_char_not_2(f, "this example family");
    if (n < 1) throw input_error("the family needs n >= 1");
    std::size_t m = 2 * n;
    Matrix b = Matrix::identity(f, m);
    for (std::size_t i = 0; i < n; ++i) {
        b.at(i, n + i) = -Scalar::one(f);
        b.at(n + i, i) = Scalar::one(f);
    }
    return from_bilinear_form(f, b);
}

enum class QuotientClass { simple, field_times_field, ground_field };
enum class MaximalIdealCount { one, two, not_applicable };

inline const char* to_string(QuotientClass c) {
    switch (c) {
        case QuotientClass::simple: return "simple";
        case QuotientClass::field_times_field: return "field_times_field";
        case QuotientClass::ground_field: return "ground_field";
    }
    return "?";
}

inline const char* to_string(MaximalIdealCount c) {
    switch (c) {
        case MaximalIdealCount::one: return "one";
        case MaximalIdealCount::two: return "two";
        case MaximalIdealCount::not_applicable: return "not_applicable";
    }
    return "?";
}

struct StructureDims {
    std::size_t der = 0;
    std::size_t mult = 0;
    std::size_t lie_mult = 0;
    std::size_t center = 0;
};

struct StructureReport {
    Subspace rad;
    QuotientClass quotient_class;
    Subspace complement_S;
    MaximalIdealCount maximal_ideal_count;
    std::optional<StructureDims> dims;
    bool oracle_checked = false;

    StructureReport(Subspace r, QuotientClass qc, Subspace s, MaximalIdealCount mic)
        : rad(std::move(r)), quotient_class(qc), complement_S(std::move(s)),
          maximal_ideal_count(mic) {}
};

struct StructureOptions {
    bool with_dims = true;
    bool force_oracle = false;              // run the enumeration cross-check even if large
    std::size_t oracle_auto_bound = 4096;   // auto cross-check when p^dim(A/rad) fits
    std::size_t enumeration_bound = kDefaultEnumerationBound;
};

inline OperatorSpan derivations_skew(const VidinliPresentation& p);

namespace detail {

/// Coordinate map A → F^m extracting V-components: rows [unity; V basis]
/// inverted, unity coordinate dropped.
inline Matrix v_coords(const VidinliPresentation& p) {
    const Field& f = p.algebra.field();
    std::size_t n = p.algebra.dim(), m = p.v_dim();
    std::vector<Vec> rows{p.algebra.unity()};
    for (const auto& w : p.V.basis()) rows.push_back(w);
    auto inv = inverse(Matrix::from_rows(f, rows, n).transpose());
    if (!inv) throw theorem_violation("F1 ⊕ V is not all of A");
    Matrix out(f, m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = inv->at(1 + i, j);
    return out;
}

inline void cross_check_quotient_class(const Algebra& quot, QuotientClass cls,
                                       std::size_t enumeration_bound) {
    std::vector<Subspace> ideals = enumerate_ideals(quot, enumeration_bound);
    switch (cls) {
        case QuotientClass::ground_field:
            if (quot.dim() != 1 || ideals.size() != 2)
                throw theorem_violation("ground-field quotient has unexpected ideals");
            break;
        case QuotientClass::field_times_field: {
            if (ideals.size() != 4 || ideals[1].dim() != 1 || ideals[2].dim() != 1)
                throw theorem_violation("two-maximal-ideal quotient enumeration mismatch");
            break;
        }
        case QuotientClass::simple:
            if (ideals.size() != 2)
                throw theorem_violation("quotient declared simple has a proper nonzero ideal");
            break;
    }
}

} // namespace detail

/// Radical of B, quotient classification, the unital complement, and the
/// headline dimensions. Everything asserted here is a structural guarantee:
/// failures throw theorem_violation.
inline StructureReport structure_report(const VidinliPresentation& p,
                                        const StructureOptions& opts = {}) {
    const Field& f = p.algebra.field();
    const Algebra& a = p.algebra;
    std::size_t n = a.dim();

    Subspace rad = kernel(vstack(p.B.transpose(), p.B));
    if (!is_ideal(a, rad)) throw theorem_violation("rad B is not an ideal");
    for (const auto& x : rad.basis())
        for (const auto& y : rad.basis())
            if (!vec_is_zero(a.product(x, y)))
                throw theorem_violation("rad B does not square to zero");
    if (!p.V.contains(rad)) throw theorem_violation("rad B escapes V");

    QuotientResult quot = quotient_algebra(a, rad);
    std::size_t qd = quot.algebra.dim();
    QuotientClass cls;
    if (qd == 1) {
        cls = QuotientClass::ground_field;
    } else if (qd == 2) {
        // A/rad = F1 ⊕ Fu with u² = −B(u,u)·1; split iff −B(u,u) is a nonzero square
        auto qres = is_vidinli(quot.algebra);
        if (!qres.presentation)
            throw theorem_violation("quotient of an accepted algebra was rejected");
        Vec u = qres.presentation->V.basis_matrix().row(0);
        const Matrix& bq = qres.presentation->B;
        Scalar bu = Scalar::zero(f);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) bu = bu + u[i] * bq.at(i, j) * u[j];
        if (bu.is_zero()) throw theorem_violation("quotient form is degenerate");
        cls = (-bu).is_square() ? QuotientClass::field_times_field : QuotientClass::simple;
    } else {
        cls = QuotientClass::simple;
    }

    bool oracle = false;
    if (!f.is_rational()) {
        unsigned __int128 size = 1;
        bool fits = true;
        for (std::size_t i = 0; i < qd; ++i) {
            size *= f.characteristic();
            if (size > opts.oracle_auto_bound) { fits = false; break; }
        }
        if (fits || opts.force_oracle) {
            detail::cross_check_quotient_class(quot.algebra, cls, opts.enumeration_bound);
            oracle = true;
        }
    }

    std::vector<Vec> sprime = complement_in(p.V, rad);
    std::vector<Vec> sgens{a.unity()};
    sgens.insert(sgens.end(), sprime.begin(), sprime.end());
    Subspace s = Subspace::span(f, n, sgens);
    if (s.dim() + rad.dim() != n || sum(s, rad).dim() != n)
        throw theorem_violation("S ⊕ rad B is not all of A");
    for (const auto& x : s.basis())
        for (const auto& y : s.basis())
            if (!s.contains(a.product(x, y)))
                throw theorem_violation("the unital complement is not a subalgebra");

    MaximalIdealCount mic;
    if (cls == QuotientClass::field_times_field) mic = MaximalIdealCount::two;
    else if (rad.dim() > 0) mic = MaximalIdealCount::one;
    else mic = MaximalIdealCount::not_applicable;

    StructureReport rep(std::move(rad), cls, std::move(s), mic);
    rep.oracle_checked = oracle;
    if (opts.with_dims) {
        StructureDims d;
        d.der = derivations_skew(p).dim();
        d.mult = mult_algebra_closure(a).dim();
        d.lie_mult = lie_mult_algebra_closure(a).dim();
        d.center = centers(a).Z.dim();
        rep.dims = d;
    }
    return rep;
}

/// Derivations vanish on 1 and restrict to B-skew endomorphisms of V:
/// B(δx, y) + B(x, δy) = 0. Solved on V and embedded back into End(A).
inline OperatorSpan derivations_skew(const VidinliPresentation& p) {
    const Field& f = p.algebra.field();
    std::size_t n = p.algebra.dim(), m = p.v_dim();
    Matrix g = p.B_on_V();

    // unknowns D[r][c] row-major; equation (i,j): Σ_k D[k][i] g[k][j] + g[i][k] D[k][j] = 0
    Matrix sys(f, m * m, m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t row = i * m + j;
            for (std::size_t k = 0; k < m; ++k) {
                sys.at(row, k * m + i) = sys.at(row, k * m + i) + g.at(k, j);
                sys.at(row, k * m + j) = sys.at(row, k * m + j) + g.at(i, k);
            }
        }
    Subspace sols = kernel(sys);

    Matrix w_cols = p.V.basis_matrix().transpose(); // n×m
    Matrix coords = detail::v_coords(p);            // m×n
    std::vector<Matrix> ambient;
    for (const auto& d : sols.basis())
        ambient.push_back(w_cols * Matrix::from_vectorized(f, m, m, d) * coords);
    return OperatorSpan::from_matrices(f, n, ambient);
}

struct AutomorphismCheck {
    bool invertible;
    bool is_auto;       // multiplicative on all basis pairs and invertible
    bool fixes_unity;
    bool preserves_V;
    bool isometry_of_B; // φᵀ B φ = B on the full Gram
};

/// The three flags are computed independently of the direct product check;
/// for invertible maps their conjunction must coincide with is_auto.
inline AutomorphismCheck check_automorphism(const VidinliPresentation& p, const Matrix& phi) {
    const Field& f = p.algebra.field();
    std::size_t n = p.algebra.dim();
    if (phi.rows() != n || phi.cols() != n) throw input_error("map has the wrong shape");

    AutomorphismCheck r{};
    r.invertible = rank(phi) == n;
    r.fixes_unity = phi.apply(p.algebra.unity()) == p.algebra.unity();
    r.preserves_V = true;
    for (const auto& w : p.V.basis())
        if (!p.V.contains(phi.apply(w))) { r.preserves_V = false; break; }
    r.isometry_of_B = (phi.transpose() * p.B * phi) == p.B;

    bool multiplicative = true;
    for (std::size_t i = 0; i < n && multiplicative; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = phi.apply(p.algebra.basis_product(i, j));
            Vec rhs = p.algebra.product(phi.col(i), phi.col(j));
            if (lhs != rhs) { multiplicative = false; break; }
        }
    r.is_auto = multiplicative && r.invertible;

    if (r.invertible) {
        bool flags = r.fixes_unity && r.preserves_V && r.isometry_of_B;
        if (r.is_auto != flags)
            throw theorem_violation("automorphism test disagrees with the isometry criterion");
    }
    return r;
}

/// Exhaustive count over GF(p): unital algebra automorphisms of A must be
/// exactly as many as invertible isometries of B|V.
inline std::uint64_t count_automorphisms_small(const VidinliPresentation& p,
                                               std::size_t bound = kDefaultEnumerationBound) {
    const Field& f = p.algebra.field();
    if (f.is_rational()) throw input_error("exhaustive counting needs a finite field");
    std::uint64_t q = f.characteristic();
    std::size_t n = p.algebra.dim(), m = p.v_dim();

    auto power_fits = [&](std::size_t exp) {
        unsigned __int128 total = 1;
        for (std::size_t i = 0; i < exp; ++i) {
            total *= q;
            if (total > bound) return false;
        }
        return true;
    };
    if (!power_fits(m * m) || !power_fits(n * m))
        throw input_error("automorphism enumeration refused: search space exceeds the bound " +
                          std::to_string(bound) + " (raise the bound parameter to override)");

    Matrix g = p.B_on_V();
    std::uint64_t isometries = 0;
    std::vector<std::uint64_t> digits(m * m, 0);
    while (true) {
        Matrix mm(f, m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                mm.at(i, j) = Scalar::of_int(f, static_cast<long>(digits[i * m + j]));
        if ((mm.transpose() * g * mm) == g && rank(mm) == m) ++isometries;
        std::size_t pos = 0;
        while (pos < digits.size() && digits[pos] + 1 == q) digits[pos++] = 0;
        if (pos == digits.size()) break;
        ++digits[pos];
    }

    std::uint64_t autos = 0;
    Matrix coords = detail::v_coords(p);
    Vec unity = p.algebra.unity();
    Matrix unity_part(f, n, 1);
    for (std::size_t i = 0; i < n; ++i) unity_part.at(i, 0) = unity[i];
    Matrix unity_coord(f, 1, n);
    {
        std::vector<Vec> rows{unity};
        for (const auto& w : p.V.basis()) rows.push_back(w);
        auto inv = inverse(Matrix::from_rows(f, rows, n).transpose());
        for (std::size_t jj = 0; jj < n; ++jj) unity_coord.at(0, jj) = inv->at(0, jj);
    }
    Matrix fix_unity = unity_part * unity_coord;
    std::vector<std::uint64_t> d2(n * m, 0);
    while (true) {
        // candidate: unity ↦ unity, k-th V basis vector ↦ chosen column
        Matrix img(f, n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                img.at(i, j) = Scalar::of_int(f, static_cast<long>(d2[i * m + j]));
        Matrix phi = fix_unity + img * coords;
        bool multiplicative = true;
        for (std::size_t i = 0; i < n && multiplicative; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (phi.apply(p.algebra.basis_product(i, j)) !=
                    p.algebra.product(phi.col(i), phi.col(j))) {
                    multiplicative = false;
                    break;
                }
            }
        if (multiplicative && rank(phi) == n) ++autos;
        if (d2.empty()) break;
        std::size_t pos = 0;
        while (pos < d2.size() && d2[pos] + 1 == q) d2[pos++] = 0;
        if (pos == d2.size()) break;
        ++d2[pos];
    }

    if (autos != isometries)
        throw theorem_violation("automorphism count " + std::to_string(autos) +
                                " differs from isometry count " + std::to_string(isometries));
    return autos;
}

namespace detail {

/// Rank-one operator x ↦ a·f(x) for a row functional f.
inline Matrix rank_one(const Vec& a, const Vec& f_row) {
    Matrix m(a.front().field(), a.size(), f_row.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < f_row.size(); ++j) m.at(i, j) = a[i] * f_row[j];
    }
    return m;
}

/// Row functionals x ↦ B(b, x) and x ↦ B(x, b) for b over a basis of A.
inline std::vector<Vec> b_functionals(const Matrix& b) {
    std::vector<Vec> rows;
    std::size_t n = b.rows();
    for (std::size_t i = 0; i < n; ++i) rows.push_back(b.row(i));                 // B(e_i, ·)
    for (std::size_t i = 0; i < n; ++i) rows.push_back(b.transpose().row(i));     // B(·, e_i)
    return rows;
}

/// span of {a·f : a basis vector, f in the B functional family}
inline Subspace big_ideal_span(const Field& f, const Matrix& b) {
    std::size_t n = b.rows();
    std::vector<Vec> rows;
    for (const auto& fr : b_functionals(b))
        for (std::size_t i = 0; i < n; ++i)
            rows.push_back(rank_one(unit_vec(f, n, i), fr).vectorize());
    return Subspace::span(f, n * n, rows);
}

inline Matrix sigma_xy(const VidinliPresentation& p, const Vec& x, const Vec& y) {
    // q(x,·)y − q(y,·)x
    const Matrix& g = p.q.q_gram;
    Vec qx = g.transpose().apply(x); // row j: q(x, e_j)
    Vec qy = g.transpose().apply(y);
    return rank_one(y, qx) - rank_one(x, qy);
}

} // namespace detail

enum class MultCase { d, e, f, contained };

inline const char* to_string(MultCase c) {
    switch (c) {
        case MultCase::d: return "d";
        case MultCase::e: return "e";
        case MultCase::f: return "f";
        case MultCase::contained: return "contained";
    }
    return "?";
}

struct MultAlgebraReport {
    OperatorSpan computed;
    OperatorSpan predicted;
    MultCase case_label;
    bool match;
    bool annihilator_ok;  // A(B(A,·)+B(·,A)) equals {T : T(rad B) = 0}
    bool square_zero_ok;  // (rad B)(B(A,·)+B(·,A)) composes to zero with itself
};

/// Computes the multiplication algebra by closure and independently builds
/// the predicted span for the case the presentation falls into.
inline MultAlgebraReport mult_algebra_report(const VidinliPresentation& p) {
    const Field& f = p.algebra.field();
    const Algebra& a = p.algebra;
    std::size_t n = a.dim();

    OperatorSpan computed = mult_algebra_closure(a);
    Subspace rad = kernel(vstack(p.B.transpose(), p.B));
    std::size_t qd = n - rad.dim();
    bool sym = p.B_symmetric();

    Subspace big = detail::big_ideal_span(f, p.B);
    Vec id_vec = Matrix::identity(f, n).vectorize();

    MultCase label;
    Subspace predicted_space = Subspace::zero(f, n * n);
    if (!sym || qd >= 3) {
        label = MultCase::d;
        predicted_space = sum(big, Subspace::span(f, n * n, std::vector<Vec>{id_vec}));
    } else if (qd == 1) {
        label = MultCase::e;
        std::vector<Vec> rows{id_vec};
        std::size_t u = *a.unit_index();
        Vec b1 = p.B.row(u); // B(1, ·)
        for (const auto& r : rad.basis()) rows.push_back(detail::rank_one(r, b1).vectorize());
        predicted_space = Subspace::span(f, n * n, rows);
    } else {
        label = MultCase::f;
        Vec x = complement_in(p.V, rad).front();
        Vec unity = a.unity();
        // π_x: A = F1 ⊕ Fx ⊕ rad → F1 ⊕ Fx
        std::vector<Vec> rows_basis{unity, x};
        for (const auto& r : rad.basis()) rows_basis.push_back(r);
        auto inv = inverse(Matrix::from_rows(f, rows_basis, n).transpose());
        if (!inv) throw theorem_violation("F1 ⊕ Fx ⊕ rad B is not all of A");
        Matrix top(f, 2, n);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < n; ++j) top.at(i, j) = inv->at(i, j);
        Matrix first_two(f, n, 2);
        for (std::size_t i = 0; i < n; ++i) {
            first_two.at(i, 0) = unity[i];
            first_two.at(i, 1) = x[i];
        }
        Matrix pi_x = first_two * top;
        Matrix s1x = detail::sigma_xy(p, unity, x);

        std::vector<Vec> rows{id_vec, s1x.vectorize(), pi_x.vectorize()};
        for (const auto& fr : detail::b_functionals(p.B))
            for (const auto& r : rad.basis())
                rows.push_back(detail::rank_one(r, fr).vectorize());
        predicted_space = Subspace::span(f, n * n, rows);
    }

    OperatorSpan predicted(f, n, predicted_space);
    bool match = computed == predicted;

    // annihilator of rad B in End(A): T with T·r = 0 for every radical r
    Matrix ann_sys(f, 0, n * n);
    for (const auto& r : rad.basis()) {
        Matrix block(f, n, n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < n; ++c) block.at(i, i * n + c) = r[c];
        ann_sys = vstack(ann_sys, block);
    }
    bool annihilator_ok = kernel(ann_sys) == big;

    std::vector<Vec> small_rows;
    for (const auto& fr : detail::b_functionals(p.B))
        for (const auto& r : rad.basis())
            small_rows.push_back(detail::rank_one(r, fr).vectorize());
    Subspace small = Subspace::span(f, n * n, small_rows);
    bool square_zero = true;
    for (const auto& v1 : small.basis())
        for (const auto& v2 : small.basis()) {
            Matrix m1 = Matrix::from_vectorized(f, n, n, v1);
            Matrix m2 = Matrix::from_vectorized(f, n, n, v2);
            if (!(m1 * m2).is_zero()) { square_zero = false; }
        }

    return MultAlgebraReport{std::move(computed), std::move(predicted), label, match,
                             annihilator_ok, square_zero};
}

struct LieMultAlgebraReport {
    OperatorSpan computed;
    OperatorSpan predicted;
    bool symmetric_case;
    bool match;
};

/// Lie multiplication algebra against the predicted span: F·id + σ_{A,A}
/// when B is symmetric, F·id + trace-zero part of the big span otherwise.
inline LieMultAlgebraReport lie_mult_algebra_report(const VidinliPresentation& p) {
    const Field& f = p.algebra.field();
    std::size_t n = p.algebra.dim();
    OperatorSpan computed = lie_mult_algebra_closure(p.algebra);

    bool sym = p.B_symmetric();
    Vec id_vec = Matrix::identity(f, n).vectorize();
    Subspace predicted_space = Subspace::zero(f, n * n);
    if (sym) {
        std::vector<Vec> rows{id_vec};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                rows.push_back(detail::sigma_xy(p, unit_vec(f, n, i), unit_vec(f, n, j)).vectorize());
        predicted_space = Subspace::span(f, n * n, rows);
    } else {
        Subspace big = detail::big_ideal_span(f, p.B);
        Matrix tr_row(f, 1, n * n);
        for (std::size_t i = 0; i < n; ++i) tr_row.at(0, i * n + i) = Scalar::one(f);
        Subspace traceless = intersect(big, kernel(tr_row));
        predicted_space = sum(traceless, Subspace::span(f, n * n, std::vector<Vec>{id_vec}));
    }
    OperatorSpan predicted(f, n, predicted_space);
    bool match = computed == predicted;
    return LieMultAlgebraReport{std::move(computed), std::move(predicted), sym, match};
}

enum class PairingType { self_paired, isotropic_pair };

inline const char* to_string(PairingType t) {
    return t == PairingType::self_paired ? "self_paired" : "isotropic_pair";
}

struct SigmaDecomposition {
    Matrix sigma;                        // endomorphism of V in the V rref basis
    std::vector<Poly> factors;           // reordered: r self-paired, then s pairs
    std::vector<unsigned> multiplicities;
    std::vector<std::size_t> partner;    // index of the paired factor (self: own index)
    std::vector<PairingType> pairing;
    std::vector<Subspace> components;    // V-coordinate subspaces, ambient dim = dim V
    std::vector<Subspace> subalgebras;   // F1 ⊕ V_i and F1 ⊕ (V_i ⊕ V_î), ambient = A
    std::size_t r = 0, s = 0;
};

/// Primary decomposition of V under the skew operator σ defined by
/// ω(x,y) = q(σx, y). Requires a nondegenerate norm. Over the rationals
/// the caller must supply the irreducible factors of σ's minimal (or
/// characteristic) polynomial; over GF(p) they are computed.
inline SigmaDecomposition sigma_decompose(const VidinliPresentation& p,
                                          std::optional<std::vector<Poly>> factors_override =
                                              std::nullopt) {
    const Field& f = p.algebra.field();
    std::size_t n = p.algebra.dim(), m = p.v_dim();
    if (rank(p.q.q_gram) != n)
        throw input_error("σ-decomposition needs a nondegenerate norm; the polar form of this "
                          "algebra is degenerate");

    Matrix gq = p.q_on_V();
    Matrix gw = p.omega_on_V();
    auto gq_inv = inverse(gq);
    if (!gq_inv) throw theorem_violation("norm nondegenerate on A but degenerate on V");
    Matrix sigma = (gw * *gq_inv).transpose(); // σᵀ G_q = G_ω on V

    if (!(sigma.transpose() * gq - gw).is_zero())
        throw theorem_violation("σ fails its defining Gram identity");
    if (!(sigma.transpose() * gq + gq * sigma).is_zero())
        throw theorem_violation("σ is not skew relative to q");

    std::vector<Poly> factors;
    if (factors_override) {
        factors = *factors_override;
    } else if (f.is_rational()) {
        throw input_error("over the rationals the irreducible factors of σ's polynomial must be "
                          "supplied (CLI: --factors)");
    } else {
        for (const auto& [irr, mult] : factor_over_prime_field(min_poly(sigma)))
            factors.push_back(irr);
    }

    PrimaryDecomposition pd = primary_decomposition(sigma, factors);

    // partner pairing: p̂(X) = (−1)^deg · p(−X)
    std::vector<std::size_t> partner(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Poly& pi = pd.factors[i];
        std::vector<Scalar> hat(pi.coeffs());
        std::size_t d = static_cast<std::size_t>(pi.degree());
        for (std::size_t k = 0; k < hat.size(); ++k)
            if ((d + k) % 2 == 1) hat[k] = -hat[k];
        Poly phat(f, hat);
        bool found = false;
        for (std::size_t j = 0; j < factors.size(); ++j)
            if (pd.factors[j] == phat) {
                partner[i] = j;
                found = true;
                break;
            }
        if (!found)
            throw theorem_violation("factor " + pi.str() + " has no partner " + phat.str() +
                                    " in the decomposition");
    }

    // reorder: self-paired first, then partner pairs adjacent
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (partner[i] == i) order.push_back(i);
    std::size_t r = order.size();
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (partner[i] > i) {
            order.push_back(i);
            order.push_back(partner[i]);
        }
    std::size_t s = (order.size() - r) / 2;
    if (order.size() != factors.size())
        throw theorem_violation("pairing is not an involution on the factors");

    SigmaDecomposition out{sigma};
    out.r = r;
    out.s = s;
    std::vector<std::size_t> new_index(factors.size());
    for (std::size_t k = 0; k < order.size(); ++k) new_index[order[k]] = k;
    for (std::size_t k = 0; k < order.size(); ++k) {
        std::size_t i = order[k];
        out.factors.push_back(pd.factors[i]);
        out.multiplicities.push_back(pd.multiplicities[i]);
        out.components.push_back(pd.components[i]);
        out.partner.push_back(new_index[partner[i]]);
        out.pairing.push_back(partner[i] == i ? PairingType::self_paired
                                              : PairingType::isotropic_pair);
    }

    // blockwise q-orthogonality and isotropy
    auto q_pair = [&](const Subspace& a, const Subspace& b) {
        for (const auto& x : a.basis())
            for (const auto& y : b.basis()) {
                Scalar v = Scalar::zero(f);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j) v = v + x[i] * gq.at(i, j) * y[j];
                if (!v.is_zero()) return false;
            }
        return true;
    };
    for (std::size_t k = 0; k < out.components.size(); ++k) {
        if (out.pairing[k] == PairingType::isotropic_pair && !q_pair(out.components[k], out.components[k]))
            throw theorem_violation("paired component is not totally isotropic");
        for (std::size_t l = 0; l < out.components.size(); ++l) {
            if (l == k || out.partner[k] == l) continue;
            if (!q_pair(out.components[k], out.components[l]))
                throw theorem_violation("distinct non-partner components are not orthogonal");
        }
    }

    // subalgebras F1 ⊕ V_i (self-paired) and F1 ⊕ (V_i ⊕ V_î) with
    // nondegenerate restricted norm
    Matrix w_cols = p.V.basis_matrix().transpose(); // V coords → A coords
    auto make_subalgebra = [&](const std::vector<std::size_t>& comps) {
        std::vector<Vec> gens{p.algebra.unity()};
        for (std::size_t c : comps)
            for (const auto& v : out.components[c].basis()) gens.push_back(w_cols.apply(v));
        Subspace sub = Subspace::span(f, n, gens);
        Matrix gr = sub.basis_matrix() * p.q.q_gram * sub.basis_matrix().transpose();
        if (rank(gr) != sub.dim())
            throw theorem_violation("restricted norm on a declared subalgebra is degenerate");
        return sub;
    };
    for (std::size_t k = 0; k < r; ++k) out.subalgebras.push_back(make_subalgebra({k}));
    for (std::size_t k = 0; k < s; ++k)
        out.subalgebras.push_back(make_subalgebra({r + 2 * k, r + 2 * k + 1}));

    return out;
}

enum class CenterBranch { B_V_zero, dim_2, Z_is_unity_line };

inline const char* to_string(CenterBranch b) {
    switch (b) {
        case CenterBranch::B_V_zero: return "B_V_zero";
        case CenterBranch::dim_2: return "dim_2";
        case CenterBranch::Z_is_unity_line: return "Z_is_unity_line";
    }
    return "?";
}

struct CenterReport {
    Subspace K;
    Subspace N;
    Subspace Z;
    CenterBranch branch;
};

/// K both generically and as the kernel of B − Bᵀ (must agree); N = Z
/// always; the trichotomy branch is asserted, first match wins.
inline CenterReport center_report(const VidinliPresentation& p) {
    const Field& f = p.algebra.field();
    std::size_t n = p.algebra.dim();
    Centers c = centers(p.algebra);

    if (c.K != kernel(p.B - p.B.transpose()))
        throw theorem_violation("commutative center disagrees with the form criterion");
    if (c.N != c.Z) throw theorem_violation("nucleus differs from center");

    Subspace unity_line = Subspace::span(f, n, std::vector<Vec>{p.algebra.unity()});
    CenterBranch branch;
    if (p.B_on_V().is_zero()) {
        branch = CenterBranch::B_V_zero;
        if (c.Z != Subspace::full(f, n))
            throw theorem_violation("B|V = 0 but the center is not the whole algebra");
    } else if (n == 2) {
        branch = CenterBranch::dim_2;
        if (c.Z != Subspace::full(f, n))
            throw theorem_violation("dim 2 but the center is not the whole algebra");
    } else {
        branch = CenterBranch::Z_is_unity_line;
        if (c.Z != unity_line)
            throw theorem_violation("center is not the unity line");
    }
    return CenterReport{std::move(c.K), std::move(c.N), std::move(c.Z), branch};
}

} // namespace vidinli
