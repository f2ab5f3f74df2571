#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace vidinli;

namespace {

Poly random_poly(const Field& f, std::size_t deg) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i <= deg; ++i) c.push_back(support::random_scalar(f));
    if (c.back().is_zero()) c.back() = Scalar::one(f);
    return Poly(f, c);
}

Matrix companion(const Poly& p) {
    // monic p; the companion matrix has char poly and min poly equal to p
    const Field& f = p.coeffs().front().field();
    std::size_t d = static_cast<std::size_t>(p.degree());
    Matrix m(f, d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) m.at(i + 1, i) = Scalar::one(f);
    for (std::size_t i = 0; i < d; ++i) m.at(i, d - 1) = -p.coeff(i);
    return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    const Field& f = a.field();
    std::size_t n = a.rows() + b.rows();
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

} // namespace

TEST_CASE("division identity holds") {
    for (const Field& f : {Field::rationals(), Field::gf(5)}) {
        for (int trial = 0; trial < 20; ++trial) {
            Poly p = random_poly(f, 6), d = random_poly(f, 3);
            auto [q, r] = p.divmod(d);
            CHECK(q * d + r == p);
            CHECK(r.degree() < d.degree());
        }
    }
}

TEST_CASE("gcd divides both arguments and lcm pairs with it") {
    Field f = Field::gf(7);
    for (int trial = 0; trial < 20; ++trial) {
        Poly a = random_poly(f, 4), b = random_poly(f, 3);
        Poly g = gcd(a, b);
        CHECK(g.divides(a));
        CHECK(g.divides(b));
        Poly l = lcm(a, b);
        CHECK(a.divides(l));
        CHECK(b.divides(l));
        CHECK(g * l == (a * b).monic());
    }
}

TEST_CASE("characteristic polynomial of companion and diagonal matrices") {
    Field f = Field::rationals();
    Poly p(f, {Scalar::of_int(f, 3), Scalar::of_int(f, -2), Scalar::one(f)}); // X^2 - 2X + 3
    CHECK(char_poly(companion(p)) == p);
    CHECK(min_poly(companion(p)) == p);

    Matrix d(f, 3, 3);
    d.at(0, 0) = Scalar::of_int(f, 1);
    d.at(1, 1) = Scalar::of_int(f, 2);
    d.at(2, 2) = Scalar::of_int(f, 2);
    Poly x_minus_1(f, {Scalar::of_int(f, -1), Scalar::one(f)});
    Poly x_minus_2(f, {Scalar::of_int(f, -2), Scalar::one(f)});
    CHECK(char_poly(d) == x_minus_1 * x_minus_2 * x_minus_2);
    CHECK(min_poly(d) == x_minus_1 * x_minus_2);
}

TEST_CASE("Cayley-Hamilton as a property") {
    for (const Field& f : {Field::rationals(), Field::gf(5)}) {
        for (int trial = 0; trial < 10; ++trial) {
            Matrix m = support::random_matrix(f, 4, 4);
            CHECK(annihilates(char_poly(m), m));
            Poly mp = min_poly(m);
            CHECK(annihilates(mp, m));
            CHECK(mp.divides(char_poly(m)));
        }
    }
}

TEST_CASE("matrix evaluation agrees with explicit powers") {
    Field f = Field::gf(7);
    Matrix m = support::random_matrix(f, 3, 3);
    Poly p = random_poly(f, 4);
    Matrix direct(f, 3, 3);
    Matrix power = Matrix::identity(f, 3);
    for (int i = 0; i <= p.degree(); ++i) {
        direct = direct + power.scaled(p.coeff(static_cast<std::size_t>(i)));
        power = power * m;
    }
    CHECK(p.eval(m) == direct);
}

TEST_CASE("factorization reconstructs its input") {
    Field f = Field::gf(5);
    for (int trial = 0; trial < 15; ++trial) {
        Poly p = random_poly(f, 6);
        if (p.degree() < 1) continue;
        auto factors = factor_over_prime_field(p);
        Poly prod = Poly::constant(p.lc());
        for (const auto& [irr, mult] : factors) {
            CHECK(irr.lc().is_one());
            CHECK(irr.degree() >= 1);
            for (unsigned k = 0; k < mult; ++k) prod = prod * irr;
        }
        CHECK(prod == p);
    }
}

TEST_CASE("factorization findings are irreducible") {
    // every factor of degree <= 3 over GF(p) is irreducible iff it has no root
    for (std::uint64_t pc : {2ull, 3ull, 5ull}) {
        Field f = Field::gf(pc);
        for (int trial = 0; trial < 10; ++trial) {
            Poly p = random_poly(f, 5);
            if (p.degree() < 1) continue;
            for (const auto& [irr, mult] : factor_over_prime_field(p)) {
                if (irr.degree() < 2 || irr.degree() > 3) continue;
                for (std::uint64_t t = 0; t < pc; ++t)
                    CHECK_FALSE(irr.eval(Scalar::of_int(f, static_cast<long>(t))).is_zero());
            }
        }
    }
}

TEST_CASE("known factorizations over GF(2)") {
    Field f = Field::gf(2);
    Scalar o = Scalar::one(f), z = Scalar::zero(f);
    Poly xp1(f, {o, o});        // X + 1
    Poly x2x1(f, {o, o, o});    // X^2 + X + 1
    Poly x2_1(f, {o, z, o});    // X^2 + 1 = (X+1)^2
    auto fac = factor_over_prime_field(x2_1);
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].first == xp1);
    CHECK(fac[0].second == 2);

    // (X^2+X+1)^2 = X^4 + X^2 + 1: derivative vanishes, needs the p-th root path
    auto fac2 = factor_over_prime_field(x2x1 * x2x1);
    REQUIRE(fac2.size() == 1);
    CHECK(fac2[0].first == x2x1);
    CHECK(fac2[0].second == 2);

    Poly x3x1(f, {o, o, z, o}); // X^3 + X + 1, irreducible
    auto fac3 = factor_over_prime_field(xp1 * x2x1 * x3x1);
    CHECK(fac3.size() == 3);
}

TEST_CASE("X^p - X splits into all linear factors") {
    Field f = Field::gf(5);
    std::vector<Scalar> c(6, Scalar::zero(f));
    c[1] = -Scalar::one(f);
    c[5] = Scalar::one(f);
    auto fac = factor_over_prime_field(Poly(f, c));
    CHECK(fac.size() == 5);
    for (const auto& [irr, mult] : fac) {
        CHECK(irr.degree() == 1);
        CHECK(mult == 1);
    }
}

TEST_CASE("primary decomposition splits a block matrix") {
    Field f = Field::gf(7);
    Poly p1(f, {Scalar::of_int(f, 1), Scalar::zero(f), Scalar::one(f)}); // X^2 + 1
    Poly p2(f, {Scalar::of_int(f, 3), Scalar::one(f)});                  // X + 3
    Matrix m = block_diag(companion(p1), companion(p2));
    auto pd = primary_decomposition(m, {p1, p2});
    REQUIRE(pd.components.size() == 2);
    CHECK(pd.components[0].dim() == 2);
    CHECK(pd.components[1].dim() == 1);
    CHECK(pd.multiplicities == std::vector<unsigned>{1, 1});
    // components are invariant
    for (std::size_t c = 0; c < 2; ++c)
        for (const auto& v : pd.components[c].basis())
            CHECK(pd.components[c].contains(m.apply(v)));
}

TEST_CASE("primary decomposition rejects bad factor lists") {
    Field f = Field::gf(7);
    Poly p1(f, {Scalar::of_int(f, 1), Scalar::zero(f), Scalar::one(f)});
    Poly p2(f, {Scalar::of_int(f, 3), Scalar::one(f)});
    Matrix m = block_diag(companion(p1), companion(p2));
    CHECK_THROWS_AS(primary_decomposition(m, {p1}), input_error);            // missing part
    CHECK_THROWS_AS(primary_decomposition(m, {p1, p2, p2}), input_error);    // repeated
    Poly notdiv(f, {Scalar::of_int(f, 5), Scalar::one(f)});
    CHECK_THROWS_AS(primary_decomposition(m, {p1, p2, notdiv}), input_error);
}

TEST_CASE("polynomial display") {
    Field f = Field::rationals();
    Poly p(f, {Scalar::of_int(f, 1), Scalar::of_int(f, 2), Scalar::one(f)});
    CHECK(p.str() == "X^2 + 2X + 1");
    CHECK(Poly::zero(f).str() == "0");
}
