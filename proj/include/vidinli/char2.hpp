#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "polynomial.hpp"

namespace vidinli {

namespace detail {

inline void require_char_2(const Field& f, const char* what) {
    if (f.characteristic() != 2)
        throw input_error(std::string(what) + " needs a field of characteristic 2");
}

} // namespace detail

/// A = F1 ⊕ V with (α1+u)(β1+v) = (αβ + φ(u,v))1 + (αv + βu + u*v).
/// The complement V is a choice, not an invariant of A, so the chosen
/// ordered basis (rows of `complement`, inside the source algebra) is
/// carried along. star is flattened as (i*m+j)*m+k.
struct Char2Presentation {
    Field field;
    std::size_t m = 0;
    std::vector<Scalar> star;
    Matrix phi;
    Matrix complement;
    Vec unity;

    std::size_t ambient_dim() const { return complement.cols(); }

    const Scalar& star_c(std::size_t i, std::size_t j, std::size_t k) const {
        return star[(i * m + j) * m + k];
    }

    Vec star_vec(std::size_t i, std::size_t j) const {
        Vec v(star.begin() + static_cast<long>((i * m + j) * m),
              star.begin() + static_cast<long>((i * m + j) * m + m));
        return v;
    }

    bool phi_symmetric() const { return phi == phi.transpose(); }

    bool same_data(const Char2Presentation& o) const {
        return field == o.field && m == o.m && star == o.star && phi == o.phi;
    }
};

namespace detail {

inline void validate_star(const Field& f, std::size_t m, const std::vector<Scalar>& star) {
    if (star.size() != m * m * m) throw input_error("star constants have the wrong size");
    for (const auto& s : star)
        if (!(s.field() == f)) throw input_error("star constant from the wrong field");
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Scalar& {
        return star[(i * m + j) * m + k];
    };
    // u*u = 0 on basis vectors, and on pairwise sums: star(i,j) = star(j,i)
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
            if (!at(i, i, k).is_zero())
                throw input_error("the star product is not anticommutative: a basis square "
                                  "is nonzero");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
                if (at(i, j, k) != at(j, i, k))
                    throw input_error("the star product is not anticommutative: a pairwise "
                                      "sum has a nonzero square");
}

} // namespace detail

/// Presentation on the standard split: ambient basis {1, e_1, ..., e_m},
/// V spanned by the trailing m vectors.
inline Char2Presentation make_char2_presentation(const Field& f, std::vector<Scalar> star,
                                                 Matrix phi) {
    detail::require_char_2(f, "the A(V,*,phi) presentation");
    if (phi.rows() != phi.cols()) throw input_error("phi must be square");
    std::size_t m = phi.rows();
    detail::validate_star(f, m, star);

    std::size_t n = m + 1;
    Matrix comp(f, m, n);
    for (std::size_t i = 0; i < m; ++i) comp.at(i, i + 1) = Scalar::one(f);
    return Char2Presentation{f, m, std::move(star), std::move(phi), std::move(comp),
                             unit_vec(f, n, 0)};
}

/// The unital algebra the presentation describes, on the standard split.
/// Commutativity must coincide with the symmetry of φ.
inline Algebra build_char2(const Char2Presentation& p) {
    const Field& f = p.field;
    std::size_t m = p.m, n = m + 1;
    std::vector<Scalar> c(n * n * n, Scalar::zero(f));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
        c[(i * n + j) * n + k] = v;
    };
    set(0, 0, 0, Scalar::one(f));
    for (std::size_t i = 1; i < n; ++i) {
        set(0, i, i, Scalar::one(f));
        set(i, 0, i, Scalar::one(f));
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            set(i + 1, j + 1, 0, p.phi.at(i, j));
            for (std::size_t k = 0; k < m; ++k) set(i + 1, j + 1, k + 1, p.star_c(i, j, k));
        }
    Algebra alg(f, n, std::move(c), 0);

    bool commutative = true;
    for (std::size_t i = 0; i < n && commutative; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (alg.basis_product(i, j) != alg.basis_product(j, i)) {
                commutative = false;
                break;
            }
    if (commutative != p.phi_symmetric())
        throw theorem_violation("commutativity must match the symmetry of phi");
    return alg;
}

inline Algebra build_char2(const Field& f, std::vector<Scalar> star, Matrix phi) {
    return build_char2(make_char2_presentation(f, std::move(star), std::move(phi)));
}

struct Char2Acceptance {
    std::vector<Scalar> q_values; // q(e_i) for the ambient basis
    bool qA1_zero;                // the polar values q(x,1) all vanish
};

struct IsVidinli2Result {
    std::optional<Char2Acceptance> record;
    std::string reason; // empty when accepted
};

/// Characteristic-2 acceptance. In dim >= 3 the test is that every basis
/// vector and pairwise sum squares into F1 (squares polarize, so this
/// covers all of A); brackets then land in F1 automatically. In dim <= 2
/// every unital algebra passes, and q(x,1) may be nonzero.
inline IsVidinli2Result is_vidinli_char2(const Algebra& a) {
    const Field& f = a.field();
    detail::require_char_2(f, "characteristic-2 acceptance");
    detail::require_unit(a);
    std::size_t n = a.dim();
    Vec unity = a.unity();

    Matrix unity_col(f, n, 1);
    for (std::size_t i = 0; i < n; ++i) unity_col.at(i, 0) = unity[i];
    auto on_unity_line = [&](const Vec& x) -> std::optional<Scalar> {
        auto sol = solve_linear(unity_col, x);
        if (!sol) return std::nullopt;
        return (*sol)[0];
    };

    if (n >= 3) {
        std::vector<Scalar> q_values;
        for (std::size_t i = 0; i < n; ++i) {
            auto c = on_unity_line(a.basis_product(i, i));
            if (!c)
                return {std::nullopt, "the square of basis vector " + std::to_string(i) +
                                          " escapes the unity line"};
            q_values.push_back(*c);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Vec x = vec_add(unit_vec(f, n, i), unit_vec(f, n, j));
                if (!on_unity_line(a.product(x, x)))
                    return {std::nullopt, "the square of a pairwise basis sum escapes the "
                                          "unity line"};
            }
        return {Char2Acceptance{std::move(q_values), true}, ""};
    }

    // dim <= 2: conic automatically; extract q from the complement vector
    if (n == 1) return {Char2Acceptance{{Scalar::one(f)}, true}, ""};
    Subspace unity_line = Subspace::span(f, n, std::vector<Vec>{unity});
    Vec x = unity_line.std_complement().front();
    Matrix sys(f, n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        sys.at(i, 0) = unity[i];
        sys.at(i, 1) = x[i];
    }
    auto sol = solve_linear(sys, a.product(x, x));
    if (!sol) throw theorem_violation("a 2-dim square escaped the whole algebra");
    Scalar qx = (*sol)[0]; // x² = q(x)1 + q(x,1)x in char 2
    Scalar bx = (*sol)[1];

    // q(α1 + βx) = α² + αβ·q(x,1) + β²·q(x) per basis vector
    std::vector<Scalar> q_values;
    Matrix coords = *inverse(sys); // columns (1, x) are a basis
    for (std::size_t i = 0; i < n; ++i) {
        Scalar al = coords.at(0, i), be = coords.at(1, i);
        q_values.push_back(al * al + al * be * bx + be * be * qx);
    }
    return {Char2Acceptance{std::move(q_values), bx.is_zero()}, ""};
}

/// Reads (star, phi) off an accepted algebra of dim >= 3 for a chosen
/// complement of F1 (rows of `complement`; default is the echelon
/// complement). The same algebra yields twist-related data for different
/// choices.
inline Char2Presentation extract_char2_presentation(const Algebra& a,
                                                    std::optional<Matrix> complement =
                                                        std::nullopt) {
    const Field& f = a.field();
    auto acc = is_vidinli_char2(a);
    if (!acc.record) throw input_error("not accepted in characteristic 2: " + acc.reason);
    std::size_t n = a.dim();
    if (n < 3) throw input_error("presentation extraction needs dim >= 3; the dim <= 2 cases "
                                 "are classified directly");
    std::size_t m = n - 1;
    Vec unity = a.unity();

    Matrix comp(f, 0, 0);
    if (complement) {
        comp = *complement;
        if (comp.rows() != m || comp.cols() != n)
            throw input_error("supplied complement has the wrong shape");
    } else {
        Subspace unity_line = Subspace::span(f, n, std::vector<Vec>{unity});
        comp = Matrix::from_rows(f, unity_line.std_complement(), n);
    }
    std::vector<Vec> rows{unity};
    for (std::size_t i = 0; i < m; ++i) rows.push_back(comp.row(i));
    auto inv = inverse(Matrix::from_rows(f, rows, n).transpose());
    if (!inv) throw input_error("supplied complement is not complementary to F1");

    // coordinates in the basis (1, w_1, ..., w_m)
    auto split = [&](const Vec& x) {
        Vec c = inv->apply(x);
        return c;
    };

    std::vector<Scalar> star(m * m * m, Scalar::zero(f));
    Matrix phi(f, m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec c = split(a.product(comp.row(i), comp.row(j)));
            phi.at(i, j) = c[0];
            for (std::size_t k = 0; k < m; ++k) star[(i * m + j) * m + k] = c[k + 1];
        }
    detail::validate_star(f, m, star); // u*u = 0 is forced by acceptance

    return Char2Presentation{f, m, std::move(star), std::move(phi), std::move(comp),
                             std::move(unity)};
}

/// Change of complement encoded on the data: the new V is spanned by
/// w_i + f_i·1 and the product constants pick up the displayed f terms.
/// Twisting twice by the same f is the identity.
inline Char2Presentation twist(const Char2Presentation& p, const Vec& f_form) {
    const Field& fl = p.field;
    std::size_t m = p.m;
    if (f_form.size() != m) throw input_error("twisting form has the wrong length");

    std::vector<Scalar> star(m * m * m, Scalar::zero(fl));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                Scalar v = p.star_c(i, j, k);
                if (j == k) v = v + f_form[i];
                if (i == k) v = v + f_form[j];
                star[(i * m + j) * m + k] = v;
            }
    Matrix phi(fl, m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Scalar v = p.phi.at(i, j) + f_form[i] * f_form[j];
            for (std::size_t k = 0; k < m; ++k) v = v + f_form[k] * p.star_c(i, j, k);
            phi.at(i, j) = v;
        }
    Matrix comp = p.complement;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < comp.cols(); ++c)
            comp.at(i, c) = comp.at(i, c) + f_form[i] * p.unity[c];

    detail::validate_star(fl, m, star);
    return Char2Presentation{fl, m, std::move(star), std::move(phi), std::move(comp), p.unity};
}

/// Isomorphism witness: Υ(1) = 1, Υ(u) = f(u)1 + Φ(u), mapping the first
/// presentation's algebra onto the second's (standard splits).
struct Char2Iso {
    Vec f;
    Matrix Phi;
    Matrix Upsilon;
};

inline constexpr std::size_t kDefaultIsoDimBound = 4;

namespace detail {

/// dim of span{u *ᵖ v} over basis pairs, a Φ-invariant of the data.
inline std::size_t star_product_span_dim(const Char2Presentation& p) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < p.m; ++i)
        for (std::size_t j = i + 1; j < p.m; ++j) rows.push_back(p.star_vec(i, j));
    return Subspace::span(p.field, p.m == 0 ? 1 : p.m, rows).dim();
}

} // namespace detail

/// Decides A(V,*,φ) ≅ A(W,⋄,ψ) over GF(2) by the twist criterion: search
/// all linear forms f on V (lexicographic, first coordinate most
/// significant) and all Φ in GL(V, W) with Φ(u *ᶠ v) = Φu ⋄ Φv and
/// ψ(Φu, Φv) = φᶠ(u,v). A found witness is rebuilt into an algebra map
/// and re-verified on every basis pair before it is returned.
inline std::optional<Char2Iso> iso_test_char2(const Char2Presentation& p,
                                              const Char2Presentation& q,
                                              std::size_t max_dim = kDefaultIsoDimBound) {
    const Field& fl = p.field;
    if (!(fl == q.field)) throw input_error("presentations live over different fields");
    if (fl.characteristic() != 2)
        throw input_error("the isomorphism search runs over GF(2) only");
    if (p.m != q.m) return std::nullopt;
    std::size_t m = p.m;
    if (m > max_dim)
        throw input_error("isomorphism search refused: dim V = " + std::to_string(m) +
                          " exceeds the bound " + std::to_string(max_dim) +
                          " (raise --max-iso-dim to override)");

    std::size_t q_phi_rank = rank(q.phi);
    bool q_phi_sym = q.phi_symmetric();
    std::size_t q_span = detail::star_product_span_dim(q);

    auto diamond = [&](const Vec& u, const Vec& v) {
        Vec out = zero_vec(fl, m);
        for (std::size_t a = 0; a < m; ++a) {
            if (u[a].is_zero()) continue;
            for (std::size_t b = 0; b < m; ++b) {
                if (v[b].is_zero()) continue;
                out = vec_add(out, vec_scale(u[a] * v[b], q.star_vec(a, b)));
            }
        }
        return out;
    };

    for (std::uint64_t fmask = 0; fmask < (1ull << m); ++fmask) {
        Vec f_form(m, Scalar::zero(fl));
        for (std::size_t i = 0; i < m; ++i)
            if ((fmask >> (m - 1 - i)) & 1) f_form[i] = Scalar::one(fl);
        Char2Presentation tw = twist(p, f_form);

        if (rank(tw.phi) != q_phi_rank) continue;
        if (tw.phi_symmetric() != q_phi_sym) continue;
        if (detail::star_product_span_dim(tw) != q_span) continue;

        for (std::uint64_t gmask = 0; gmask < (1ull << (m * m)); ++gmask) {
            Matrix Phi(fl, m, m);
            for (std::size_t e = 0; e < m * m; ++e)
                if ((gmask >> e) & 1)
                    Phi.at(e / m, e % m) = Scalar::one(fl);
            if ((Phi.transpose() * q.phi * Phi) != tw.phi) continue;
            if (rank(Phi) != m) continue;
            bool products_ok = true;
            for (std::size_t i = 0; i < m && products_ok; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    if (Phi.apply(tw.star_vec(i, j)) != diamond(Phi.col(i), Phi.col(j))) {
                        products_ok = false;
                        break;
                    }
            if (!products_ok) continue;

            // witness found; rebuild as an algebra map and re-verify
            std::size_t n = m + 1;
            Matrix ups(fl, n, n);
            ups.at(0, 0) = Scalar::one(fl);
            for (std::size_t j = 0; j < m; ++j) {
                ups.at(0, j + 1) = f_form[j];
                for (std::size_t i = 0; i < m; ++i) ups.at(i + 1, j + 1) = Phi.at(i, j);
            }
            Algebra ap = build_char2(fl, p.star, p.phi);
            Algebra aq = build_char2(fl, q.star, q.phi);
            if (rank(ups) != n)
                throw theorem_violation("isomorphism witness is singular");
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (ups.apply(ap.basis_product(i, j)) !=
                        aq.product(ups.col(i), ups.col(j)))
                        throw theorem_violation("isomorphism witness failed re-verification");
            return Char2Iso{std::move(f_form), std::move(Phi), std::move(ups)};
        }
    }
    return std::nullopt;
}

enum class Dim2Tag { dual_numbers, purely_inseparable, split_FxF, separable_quadratic };

inline const char* to_string(Dim2Tag t) {
    switch (t) {
        case Dim2Tag::dual_numbers: return "dual_numbers";
        case Dim2Tag::purely_inseparable: return "purely_inseparable";
        case Dim2Tag::split_FxF: return "split_FxF";
        case Dim2Tag::separable_quadratic: return "separable_quadratic";
    }
    return "?";
}

struct Dim2Class {
    Dim2Tag tag;
    Vec witness;
    Poly min_poly;
};

/// The four possible 2-dimensional unital algebras in characteristic 2,
/// decided by q(1,x) and a root/square test. Over GF(2) squaring is the
/// identity, so purely_inseparable cannot occur there; it is kept for the
/// record. Witness: dual numbers report ε with ε² = 0, the others x.
inline Dim2Class classify_dim2(const Algebra& a) {
    const Field& f = a.field();
    detail::require_char_2(f, "the dim-2 classification");
    detail::require_unit(a);
    if (a.dim() != 2) throw input_error("the classification applies to dim 2 only");
    Vec unity = a.unity();

    Vec x = Subspace::span(f, 2, std::vector<Vec>{unity}).std_complement().front();
    Matrix sys(f, 2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        sys.at(i, 0) = unity[i];
        sys.at(i, 1) = x[i];
    }
    auto sol = solve_linear(sys, a.product(x, x));
    if (!sol) throw theorem_violation("a 2-dim square escaped the whole algebra");
    Scalar qx = (*sol)[0], bx = (*sol)[1]; // x² = qx·1 + bx·x

    Poly mp(f, {qx, bx, Scalar::one(f)}); // X² + q(x,1)X + q(x) in char 2
    if (bx.is_zero()) {
        if (qx.is_square()) {
            Vec eps = vec_add(x, vec_scale(*qx.sqrt(), unity)); // ε² = 0
            if (!vec_is_zero(a.product(eps, eps)))
                throw theorem_violation("nilpotent witness fails to square to zero");
            return Dim2Class{Dim2Tag::dual_numbers, eps,
                             Poly::monomial(f, 2, Scalar::one(f))};
        }
        return Dim2Class{Dim2Tag::purely_inseparable, x, mp};
    }
    for (std::uint64_t t = 0; t < f.characteristic(); ++t)
        if (mp.eval(Scalar::of_int(f, static_cast<long>(t))).is_zero())
            return Dim2Class{Dim2Tag::split_FxF, x, mp};
    return Dim2Class{Dim2Tag::separable_quadratic, x, mp};
}

enum class Center2Branch { commutative, Z_is_unity_line };

inline const char* to_string(Center2Branch b) {
    return b == Center2Branch::commutative ? "commutative" : "Z_is_unity_line";
}

struct Center2Report {
    Subspace Z;
    Subspace N;
    Center2Branch branch;
};

/// N = Z in characteristic 2, and either the algebra is commutative or
/// Z is the unity line. Both asserted literally.
inline Center2Report center_char2(const Algebra& a) {
    const Field& f = a.field();
    detail::require_char_2(f, "the characteristic-2 center analysis");
    auto acc = is_vidinli_char2(a);
    if (!acc.record) throw input_error("not accepted in characteristic 2: " + acc.reason);
    std::size_t n = a.dim();

    Centers c = centers(a);
    if (c.N != c.Z) throw theorem_violation("nucleus differs from center");

    bool commutative = true;
    for (std::size_t i = 0; i < n && commutative; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a.basis_product(i, j) != a.basis_product(j, i)) {
                commutative = false;
                break;
            }
    if (commutative)
        return Center2Report{std::move(c.Z), std::move(c.N), Center2Branch::commutative};

    Subspace unity_line = Subspace::span(f, n, std::vector<Vec>{a.unity()});
    if (c.Z != unity_line)
        throw theorem_violation("a noncommutative instance must have Z = F1");
    return Center2Report{std::move(c.Z), std::move(c.N), Center2Branch::Z_is_unity_line};
}

} // namespace vidinli
