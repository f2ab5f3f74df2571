#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "errors.hpp"

namespace vidinli {

/// Ground field descriptor: the rationals or a prime field GF(p).
/// characteristic() == 0 means the rationals.
class Field {
public:
    static Field rationals() { return Field(0); }

    static Field gf(std::uint64_t p) {
        if (p < 2) throw input_error("prime field needs p >= 2, got " + std::to_string(p));
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw input_error(std::to_string(p) + " is not prime");
        if (p > (1ull << 31)) throw input_error("prime modulus too large: " + std::to_string(p));
        return Field(p);
    }

    std::uint64_t characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }
    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    std::string describe() const {
        return is_rational() ? "rational" : ("GF(" + std::to_string(p_) + ")");
    }

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

/// Exact field element. Rationals are GMP-backed and always in lowest terms;
/// prime-field elements are residues in [0, p).
class Scalar {
public:
    Scalar() : field_(Field::rationals()), rat_(0), res_(0) {}

    static Scalar zero(const Field& f) { return of_int(f, 0); }
    static Scalar one(const Field& f) { return of_int(f, 1); }

    static Scalar of_int(const Field& f, long v) {
        Scalar s;
        s.field_ = f;
        if (f.is_rational()) {
            s.rat_ = mpq_class(v);
        } else {
            long p = static_cast<long>(f.characteristic());
            long r = v % p;
            if (r < 0) r += p;
            s.res_ = static_cast<std::uint64_t>(r);
        }
        return s;
    }

    static Scalar rational(long num, long den) {
        if (den == 0) throw input_error("zero denominator");
        Scalar s;
        s.field_ = Field::rationals();
        s.rat_ = mpq_class(num, den);
        s.rat_.canonicalize();
        return s;
    }

    /// Accepts "a" or "a/b" for rationals, a plain residue for GF(p).
    static Scalar parse(const Field& f, const std::string& text) {
        if (text.empty()) throw input_error("empty scalar literal");
        if (f.is_rational()) {
            mpq_class q;
            if (q.set_str(text, 10) != 0) throw input_error("bad rational literal: " + text);
            if (q.get_den() == 0) throw input_error("zero denominator in: " + text);
            q.canonicalize();
            Scalar s;
            s.field_ = f;
            s.rat_ = q;
            return s;
        }
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(text, &pos);
        } catch (const std::exception&) {
            throw input_error("bad residue literal: " + text);
        }
        if (pos != text.size()) throw input_error("bad residue literal: " + text);
        return of_int(f, v);
    }

    const Field& field() const { return field_; }

    bool is_zero() const { return field_.is_rational() ? rat_ == 0 : res_ == 0; }
    bool is_one() const { return field_.is_rational() ? rat_ == 1 : res_ == 1; }

    /// Residue value in [0, p); prime fields only.
    std::uint64_t residue() const {
        if (field_.is_rational()) throw input_error("residue() on a rational");
        return res_;
    }

    const mpq_class& rat() const {
        if (!field_.is_rational()) throw input_error("rat() on a residue");
        return rat_;
    }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar s(*this);
        if (field_.is_rational()) s.rat_ = rat_ + o.rat_;
        else s.res_ = (res_ + o.res_) % field_.characteristic();
        return s;
    }

    Scalar operator-(const Scalar& o) const {
        check(o);
        Scalar s(*this);
        if (field_.is_rational()) s.rat_ = rat_ - o.rat_;
        else {
            std::uint64_t p = field_.characteristic();
            s.res_ = (res_ + p - o.res_) % p;
        }
        return s;
    }

    Scalar operator-() const {
        Scalar s(*this);
        if (field_.is_rational()) s.rat_ = -rat_;
        else s.res_ = res_ == 0 ? 0 : field_.characteristic() - res_;
        return s;
    }

    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar s(*this);
        if (field_.is_rational()) s.rat_ = rat_ * o.rat_;
        else {
            unsigned __int128 prod = static_cast<unsigned __int128>(res_) * o.res_;
            s.res_ = static_cast<std::uint64_t>(prod % field_.characteristic());
        }
        return s;
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar inverse() const {
        if (is_zero()) throw input_error("division by zero in " + field_.describe());
        Scalar s(*this);
        if (field_.is_rational()) {
            s.rat_ = 1 / rat_;
        } else {
            // extended Euclid on (res_, p)
            std::int64_t p = static_cast<std::int64_t>(field_.characteristic());
            std::int64_t a = static_cast<std::int64_t>(res_), b = p, x0 = 1, x1 = 0;
            while (b != 0) {
                std::int64_t q = a / b;
                std::int64_t t = a - q * b; a = b; b = t;
                t = x0 - q * x1; x0 = x1; x1 = t;
            }
            x0 %= p;
            if (x0 < 0) x0 += p;
            s.res_ = static_cast<std::uint64_t>(x0);
        }
        return s;
    }

    bool operator==(const Scalar& o) const {
        if (field_ != o.field_) return false;
        return field_.is_rational() ? rat_ == o.rat_ : res_ == o.res_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Total order inside one field, used only for deterministic sorting.
    bool operator<(const Scalar& o) const {
        check(o);
        return field_.is_rational() ? rat_ < o.rat_ : res_ < o.res_;
    }

    bool is_square() const {
        if (is_zero()) return true;
        if (field_.is_rational()) {
            if (rat_ < 0) return false;
            return mpz_perfect_square_p(rat_.get_num().get_mpz_t()) &&
                   mpz_perfect_square_p(rat_.get_den().get_mpz_t());
        }
        std::uint64_t p = field_.characteristic();
        if (p == 2) return true;
        return pow_residue(res_, (p - 1) / 2, p) == 1;
    }

    /// A square root when one exists. Prime-field search is linear in p;
    /// intended for the small moduli this library works over.
    std::optional<Scalar> sqrt() const {
        if (is_zero()) return *this;
        if (field_.is_rational()) {
            if (!is_square()) return std::nullopt;
            mpz_class n, d;
            mpz_sqrt(n.get_mpz_t(), rat_.get_num().get_mpz_t());
            mpz_sqrt(d.get_mpz_t(), rat_.get_den().get_mpz_t());
            Scalar s(*this);
            s.rat_ = mpq_class(n) / mpq_class(d);
            return s;
        }
        std::uint64_t p = field_.characteristic();
        for (std::uint64_t r = 0; r < p; ++r) {
            if (static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * r) % p) == res_) {
                Scalar s(*this);
                s.res_ = r;
                return s;
            }
        }
        return std::nullopt;
    }

    std::string str() const {
        if (field_.is_rational()) return rat_.get_str();
        return std::to_string(res_);
    }

private:
    static std::uint64_t pow_residue(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
        unsigned __int128 acc = 1, b = base % p;
        while (e) {
            if (e & 1) acc = acc * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<std::uint64_t>(acc);
    }

    void check(const Scalar& o) const {
        if (field_ != o.field_)
            throw input_error("mixed fields: " + field_.describe() + " vs " + o.field_.describe());
    }

    Field field_;
    mpq_class rat_;
    std::uint64_t res_ = 0;
};

} // namespace vidinli
