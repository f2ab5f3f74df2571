#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace vidinli {

/// Univariate polynomial, coefficients lowest degree first, no trailing
/// zeros. The zero polynomial has an empty coefficient list.
class Poly {
public:
    explicit Poly(const Field& f) : field_(f) {}

    Poly(const Field& f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
        for (const auto& x : c_)
            if (x.field() != f) throw input_error("coefficient field mismatch");
        trim();
    }

    static Poly zero(const Field& f) { return Poly(f); }
    static Poly one(const Field& f) { return constant(Scalar::one(f)); }
    static Poly constant(const Scalar& s) { return Poly(s.field(), {s}); }

    static Poly X(const Field& f) {
        return Poly(f, {Scalar::zero(f), Scalar::one(f)});
    }

    static Poly monomial(const Field& f, std::size_t deg, const Scalar& coeff) {
        std::vector<Scalar> c(deg + 1, Scalar::zero(f));
        c[deg] = coeff;
        return Poly(f, std::move(c));
    }

    const Field& field() const { return field_; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Scalar coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : Scalar::zero(field_);
    }

    Scalar lc() const {
        if (is_zero()) throw input_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    Poly operator+(const Poly& o) const {
        check(o);
        std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
        return Poly(field_, std::move(r));
    }

    Poly operator-(const Poly& o) const {
        check(o);
        std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
        return Poly(field_, std::move(r));
    }

    Poly operator-() const {
        std::vector<Scalar> r = c_;
        for (auto& x : r) x = -x;
        return Poly(field_, std::move(r));
    }

    Poly operator*(const Poly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(field_);
        std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return Poly(field_, std::move(r));
    }

    Poly scaled(const Scalar& s) const {
        std::vector<Scalar> r = c_;
        for (auto& x : r) x = s * x;
        return Poly(field_, std::move(r));
    }

    /// Quotient and remainder with deg(remainder) < deg(divisor).
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        check(d);
        if (d.is_zero()) throw input_error("polynomial division by zero");
        Poly rem = *this;
        std::vector<Scalar> q(degree() >= d.degree() ? degree() - d.degree() + 1 : 0,
                              Scalar::zero(field_));
        Scalar dlci = d.lc().inverse();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
            Scalar f = rem.lc() * dlci;
            q[shift] = f;
            rem = rem - (d * monomial(field_, shift, f));
        }
        return {Poly(field_, std::move(q)), rem};
    }

    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    bool divides(const Poly& multiple) const { return (multiple % *this).is_zero(); }

    bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(lc().inverse());
    }

    Poly derivative() const {
        if (c_.size() <= 1) return zero(field_);
        std::vector<Scalar> r(c_.size() - 1, Scalar::zero(field_));
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = c_[i] * Scalar::of_int(field_, static_cast<long>(i));
        return Poly(field_, std::move(r));
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc = Scalar::zero(field_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Matrix eval(const Matrix& m) const {
        if (m.rows() != m.cols()) throw input_error("polynomial of a non-square matrix");
        Matrix acc(field_, m.rows(), m.cols());
        for (std::size_t i = c_.size(); i-- > 0;) {
            acc = acc * m;
            for (std::size_t d = 0; d < m.rows(); ++d)
                acc.at(d, d) = acc.at(d, d) + c_[i];
        }
        return acc;
    }

    /// Human-readable form like "X^2 + 2X + 1", highest degree first.
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            std::string coef = c_[i].str();
            if (i == 0) { out += coef; continue; }
            std::string mono = i == 1 ? "X" : "X^" + std::to_string(i);
            out += (coef == "1") ? mono : coef + mono;
        }
        return out;
    }

    /// Deterministic order: degree first, then coefficients from constant up.
    bool lex_less(const Poly& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        }
        return false;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    void check(const Poly& o) const {
        if (field_ != o.field_) throw input_error("polynomial field mismatch");
    }

    Field field_;
    std::vector<Scalar> c_;
};

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

inline Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
    return ((a * b) / gcd(a, b)).monic();
}

inline Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
    Poly acc = Poly::one(base.field()) % mod;
    Poly b = base % mod;
    while (e) {
        if (e & 1) acc = (acc * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return acc;
}

namespace detail {

/// Coordinates of v in the row span of `rows`, or nullopt.
inline std::optional<Vec> in_span_coords(const std::vector<Vec>& rows, const Vec& v,
                                         const Field& f) {
    if (rows.empty()) return vec_is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
    Matrix m = Matrix::from_rows(f, rows, v.size()).transpose();
    return solve_linear(m, v);
}

/// Monic relation X^k - sum b_j X^j for the first Krylov dependency of seed
/// relative to `fixed`; appends the chain vectors to `fixed`.
inline Poly krylov_relation(const Matrix& m, const Vec& seed, std::vector<Vec>& fixed) {
    const Field& f = m.field();
    std::size_t base = fixed.size();
    Vec v = seed;
    while (true) {
        auto coords = in_span_coords(fixed, v, f);
        if (coords) {
            std::size_t k = fixed.size() - base;
            std::vector<Scalar> rel(k + 1, Scalar::zero(f));
            rel[k] = Scalar::one(f);
            for (std::size_t j = 0; j < k; ++j) rel[j] = -(*coords)[base + j];
            return Poly(f, std::move(rel));
        }
        fixed.push_back(v);
        v = m.apply(v);
    }
}

} // namespace detail

/// Characteristic polynomial, computed as the product of the relative
/// minimal polynomials along a Krylov flag. Monic of degree n, exact.
inline Poly char_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw input_error("characteristic polynomial of a non-square matrix");
    const Field& f = m.field();
    std::vector<Vec> flag;
    Poly result = Poly::one(f);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (detail::in_span_coords(flag, unit_vec(f, m.rows(), i), f)) continue;
        Poly rel = detail::krylov_relation(m, unit_vec(f, m.rows(), i), flag);
        result = result * rel;
    }
    if (result.degree() != static_cast<int>(m.rows()))
        throw theorem_violation("characteristic polynomial degree mismatch");
    return result;
}

inline bool annihilates(const Poly& p, const Matrix& m) { return p.eval(m).is_zero(); }

/// Minimal polynomial: lcm of the Krylov annihilators of the standard basis
/// vectors. Monic; divides the characteristic polynomial.
inline Poly min_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw input_error("minimal polynomial of a non-square matrix");
    const Field& f = m.field();
    Poly result = Poly::one(f);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Vec> chain;
        Poly local = detail::krylov_relation(m, unit_vec(f, m.rows(), i), chain);
        result = lcm(result, local);
        if (result.degree() == static_cast<int>(m.rows())) break;
    }
    if (!annihilates(result, m))
        throw theorem_violation("minimal polynomial fails to annihilate");
    return result;
}

namespace detail {

/// g(X) = f(X^(1/p)) when every exponent of f is divisible by p. Over GF(p)
/// the coefficients are their own p-th roots.
inline Poly pth_root(const Poly& f) {
    std::uint64_t p = f.field().characteristic();
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f.coeffs()[i]);
    return Poly(f.field(), std::move(out));
}

inline void squarefree_parts(const Poly& f, unsigned mult,
                             std::vector<std::pair<Poly, unsigned>>& out) {
    std::uint64_t p = f.field().characteristic();
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_parts(pth_root(f), mult * static_cast<unsigned>(p), out);
        return;
    }
    Poly c = gcd(f, fp);
    Poly w = (f / c).monic();
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = (w / y).monic();
        if (!z.is_one()) out.emplace_back(z, mult * i);
        w = y;
        c = (c / y).monic();
        ++i;
    }
    if (!c.is_one()) squarefree_parts(pth_root(c), mult * static_cast<unsigned>(p), out);
}

/// Berlekamp split of a squarefree monic polynomial into monic irreducibles.
inline std::vector<Poly> berlekamp(const Poly& g) {
    const Field& f = g.field();
    std::uint64_t p = f.characteristic();
    std::size_t d = static_cast<std::size_t>(g.degree());
    if (d <= 1) return {g};

    Matrix q(f, d, d);
    Poly xp = poly_powmod(Poly::X(f), p, g);
    Poly cur = Poly::one(f);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) q.at(i, j) = cur.coeff(i);
        cur = (cur * xp) % g;
    }
    Subspace fixed = kernel(q - Matrix::identity(f, d));
    std::size_t k = fixed.dim();
    if (k == 1) return {g};

    std::vector<Poly> factors{g};
    for (const auto& row : fixed.basis()) {
        Poly v(f, row);
        if (v.degree() < 1) continue;
        std::vector<Poly> next;
        for (const auto& h : factors) {
            if (h.degree() == 1) { next.push_back(h); continue; }
            std::vector<Poly> pieces{h};
            for (std::uint64_t c = 0; c < p; ++c) {
                Poly shift = v - Poly::constant(Scalar::of_int(f, static_cast<long>(c)));
                std::vector<Poly> refined;
                for (const auto& piece : pieces) {
                    if (piece.degree() == 1) { refined.push_back(piece); continue; }
                    Poly u = gcd(piece, shift);
                    if (u.degree() > 0 && u.degree() < piece.degree()) {
                        refined.push_back(u);
                        refined.push_back((piece / u).monic());
                    } else {
                        refined.push_back(piece);
                    }
                }
                pieces = std::move(refined);
            }
            for (auto& piece : pieces) next.push_back(piece);
        }
        factors = std::move(next);
        if (factors.size() == k) break;
    }
    if (factors.size() != k)
        throw theorem_violation("fixed-space dimension disagrees with factor count");
    return factors;
}

} // namespace detail

/// Monic irreducible factors with multiplicities over GF(p), sorted by
/// degree then coefficient order. Exact and deterministic.
inline std::vector<std::pair<Poly, unsigned>> factor_over_prime_field(const Poly& f) {
    if (f.field().is_rational())
        throw input_error("factorization is available over prime fields only");
    if (f.is_zero()) throw input_error("factorization of the zero polynomial");
    std::vector<std::pair<Poly, unsigned>> parts;
    Poly g = f.monic();
    if (g.degree() == 0) return {};
    detail::squarefree_parts(g, 1, parts);

    std::vector<std::pair<Poly, unsigned>> out;
    for (const auto& [part, mult] : parts)
        for (const auto& irr : detail::berlekamp(part)) out.emplace_back(irr, mult);

    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first.lex_less(b.first); });

    Poly check = Poly::constant(f.lc());
    for (const auto& [irr, mult] : out)
        for (unsigned i = 0; i < mult; ++i) check = check * irr;
    if (check != f) throw theorem_violation("factorization does not reconstruct the input");
    return out;
}

struct PrimaryDecomposition {
    std::vector<Poly> factors;          // monic, pairwise coprime, in input order
    std::vector<unsigned> multiplicities;
    std::vector<Subspace> components;   // kernel(p_i(M)^{m_i}), direct sum = F^n
};

/// Splits F^n into the primary components of M for the supplied coprime
/// factor list. The factors must multiply out (with multiplicity) to the
/// characteristic polynomial; anything less is rejected.
inline PrimaryDecomposition primary_decomposition(const Matrix& m,
                                                  const std::vector<Poly>& factors) {
    if (m.rows() != m.cols()) throw input_error("primary decomposition of a non-square matrix");
    const Field& f = m.field();
    Poly cp = char_poly(m);

    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() < 1) throw input_error("constant supplied as a factor");
        if (!factors[i].lc().is_one()) throw input_error("factors must be monic");
        if (!factors[i].divides(cp))
            throw input_error("supplied factor " + factors[i].str() +
                              " does not divide the characteristic polynomial " + cp.str());
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (gcd(factors[i], factors[j]).degree() != 0)
                throw input_error("supplied factors are not pairwise coprime");
    }

    PrimaryDecomposition out;
    out.factors = factors;
    Poly rem = cp;
    for (const auto& p : factors) {
        unsigned mult = 0;
        while (p.divides(rem)) {
            rem = rem / p;
            ++mult;
        }
        if (mult == 0) throw input_error("factor with zero multiplicity");
        out.multiplicities.push_back(mult);
    }
    if (rem.degree() != 0)
        throw input_error("supplied factors do not exhaust the characteristic polynomial; "
                          "missing part " + rem.str());

    std::size_t total = 0;
    Subspace whole = Subspace::zero(f, m.rows());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        Poly power = Poly::one(f);
        for (unsigned k = 0; k < out.multiplicities[i]; ++k) power = power * factors[i];
        Subspace comp = kernel(power.eval(m));
        for (const auto& b : comp.basis())
            if (!comp.contains(m.apply(b)))
                throw theorem_violation("primary component is not invariant");
        total += comp.dim();
        whole = sum(whole, comp);
        out.components.push_back(comp);
    }
    if (total != m.rows() || whole.dim() != m.rows())
        throw theorem_violation("primary components do not sum directly to the whole space");
    return out;
}

} // namespace vidinli
