#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace vidinli;

namespace {

// basis {1, x} with x^2 = sq*1 + li*x
Algebra two_dim(const Field& f, const Scalar& sq, const Scalar& li) {
    std::vector<Scalar> c(8, Scalar::zero(f));
    Scalar one = Scalar::one(f);
    c[(0 * 2 + 0) * 2 + 0] = one;
    c[(0 * 2 + 1) * 2 + 1] = one;
    c[(1 * 2 + 0) * 2 + 1] = one;
    c[(1 * 2 + 1) * 2 + 0] = sq;
    c[(1 * 2 + 1) * 2 + 1] = li;
    return Algebra(f, 2, std::move(c), 0);
}

} // namespace

TEST_CASE("structure constant validation") {
    Field f = Field::gf(5);
    CHECK_THROWS_AS(Algebra(f, 2, std::vector<Scalar>(7, Scalar::zero(f))), input_error);
    CHECK_THROWS_AS(Algebra(f, 2, std::vector<Scalar>(8, Scalar::zero(Field::gf(7)))),
                    input_error);
    // the zero algebra has no unity, so claiming one must fail
    CHECK_THROWS_AS(Algebra(f, 2, std::vector<Scalar>(8, Scalar::zero(f)), 0), input_error);
    CHECK_THROWS_AS(Algebra(f, 2, std::vector<Scalar>(8, Scalar::zero(f)), 5), input_error);
    CHECK_NOTHROW(Algebra(f, 2, std::vector<Scalar>(8, Scalar::zero(f))));
}

TEST_CASE("product is bilinear and matches multiplication operators") {
    Field f = Field::gf(7);
    Matrix b = support::random_matrix(f, 3, 3);
    Algebra a = from_bilinear_form(f, b).algebra;
    for (int trial = 0; trial < 20; ++trial) {
        Vec x = support::random_matrix(f, 1, 4).row(0);
        Vec y = support::random_matrix(f, 1, 4).row(0);
        Vec z = support::random_matrix(f, 1, 4).row(0);
        Scalar s = support::random_scalar(f);
        CHECK(a.product(vec_add(vec_scale(s, x), y), z) ==
              vec_add(vec_scale(s, a.product(x, z)), a.product(y, z)));
        CHECK(a.product(x, vec_add(vec_scale(s, y), z)) ==
              vec_add(vec_scale(s, a.product(x, y)), a.product(x, z)));
        CHECK(a.left_mult(x).apply(y) == a.product(x, y));
        CHECK(a.right_mult(x).apply(y) == a.product(y, x));
        CHECK(a.commutator(x, y) == vec_sub(a.product(x, y), a.product(y, x)));
    }
    CHECK(a.product(a.unity(), a.basis_product(1, 2)) == a.basis_product(1, 2));
}

TEST_CASE("verification set covers basis vectors and pairwise sums") {
    Field f = Field::gf(3);
    Algebra a(f, 4, std::vector<Scalar>(64, Scalar::zero(f)));
    auto vs = verification_set(a);
    CHECK(vs.size() == 4 + 6);
    for (std::size_t i = 0; i < 4; ++i) CHECK(vs[i] == unit_vec(f, 4, i));
}

TEST_CASE("ideal closure produces an ideal containing its generators") {
    Field f = Field::gf(5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix b = support::random_matrix(f, 3, 3);
        Algebra a = from_bilinear_form(f, b).algebra;
        Vec v = support::random_matrix(f, 1, 4).row(0);
        Subspace s = ideal_closure(a, {v});
        CHECK(s.contains(v));
        CHECK(is_ideal(a, s));
    }
}

TEST_CASE("quotient by the radical line") {
    Field f = Field::gf(5);
    Matrix b(f, 2, 2);
    b.at(1, 1) = Scalar::one(f); // first v-basis vector annihilates everything
    Algebra a = from_bilinear_form(f, b).algebra;
    Vec u1 = unit_vec(f, 3, 1);
    Subspace rad = Subspace::span(f, 3, std::vector<Vec>{u1});
    REQUIRE(is_ideal(a, rad));
    QuotientResult qr = quotient_algebra(a, rad);
    CHECK(qr.algebra.dim() == 2);
    REQUIRE(qr.algebra.unit_index().has_value());
    CHECK(qr.projection.apply(a.unity()) == qr.algebra.unity());
    CHECK(vec_is_zero(qr.projection.apply(u1)));

    // x^2 = -1 survives into the quotient
    Vec x = qr.projection.apply(unit_vec(f, 3, 2));
    CHECK(qr.algebra.product(x, x) == vec_scale(-Scalar::one(f), qr.algebra.unity()));

    Subspace not_ideal = Subspace::span(f, 3, std::vector<Vec>{unit_vec(f, 3, 2)});
    CHECK(!is_ideal(a, not_ideal));
    CHECK_THROWS_AS(quotient_algebra(a, not_ideal), input_error);

    QuotientResult whole = quotient_algebra(a, Subspace::full(f, 3));
    CHECK(whole.algebra.dim() == 0);
}

TEST_CASE("centers of a commutative associative algebra fill everything") {
    Field f = Field::gf(3);
    Algebra a = two_dim(f, Scalar::zero(f), Scalar::zero(f)); // dual numbers
    Centers zs = centers(a);
    CHECK(zs.K.dim() == 2);
    CHECK(zs.N.dim() == 2);
    CHECK(zs.Z.dim() == 2);
    CHECK(identity_predicates(a).associative);
}

TEST_CASE("centers collapse to the unity line when commutators do not vanish") {
    Field fq = Field::rationals();
    Matrix b(fq, 2, 2);
    b.at(0, 0) = Scalar::one(fq);
    b.at(0, 1) = Scalar::of_int(fq, 3);
    b.at(1, 1) = Scalar::one(fq);
    Algebra a = from_bilinear_form(fq, b).algebra;
    Centers zs = centers(a);
    CHECK(zs.K.dim() == 1);
    CHECK(zs.Z.dim() == 1);
    CHECK(zs.Z.contains(a.unity()));
    CHECK(zs.N == zs.Z);
}

TEST_CASE("identity predicates track the symmetry of the form") {
    Field fq = Field::rationals();
    Matrix sym = Matrix::identity(fq, 2);
    Algebra a_sym = from_bilinear_form(fq, sym).algebra;
    IdentityPredicates ps = identity_predicates(a_sym);
    CHECK(ps.commutative);
    CHECK(ps.flexible);
    CHECK(ps.jordan);
    CHECK(ps.power_assoc_deg2);
    CHECK(!ps.anticommutative);
    CHECK(!ps.associative); // (uv)w = -B(u,v)w but u(vw) = -B(v,w)u

    Matrix nonsym(fq, 2, 2);
    nonsym.at(0, 1) = Scalar::one(fq);
    Algebra a_non = from_bilinear_form(fq, nonsym).algebra;
    IdentityPredicates pn = identity_predicates(a_non);
    CHECK(!pn.commutative);
    CHECK(!pn.flexible);
    CHECK(!pn.jordan);
    CHECK(pn.power_assoc_deg2);
}

TEST_CASE("dim 2 instances are associative") {
    Field fq = Field::rationals();
    Matrix b(fq, 1, 1);
    b.at(0, 0) = Scalar::of_int(fq, -3);
    Algebra a = from_bilinear_form(fq, b).algebra;
    IdentityPredicates p = identity_predicates(a);
    CHECK(p.associative);
    CHECK(p.commutative);
    Centers zs = centers(a);
    CHECK(zs.Z.dim() == 2);
}

TEST_CASE("plus and minus algebras split the product") {
    Field fq = Field::rationals();
    Matrix b(fq, 2, 2);
    b.at(0, 0) = Scalar::one(fq);
    b.at(0, 1) = Scalar::of_int(fq, 3);
    b.at(1, 1) = Scalar::one(fq);
    Algebra a = from_bilinear_form(fq, b).algebra;
    auto [plus, minus] = plus_minus_algebras(a);
    CHECK(identity_predicates(plus).commutative);
    CHECK(identity_predicates(minus).anticommutative);
    CHECK(plus.unit_index() == a.unit_index());
    CHECK(!minus.unit_index().has_value());
    // x*y = plus(x,y) + minus(x,y)/2
    Scalar half = Scalar::of_int(fq, 2).inverse();
    for (const Vec& x : verification_set(a))
        for (const Vec& y : verification_set(a))
            CHECK(a.product(x, y) ==
                  vec_add(plus.product(x, y), vec_scale(half, minus.product(x, y))));

    Field g2 = Field::gf(2);
    Algebra a2 = support::algebra_from_form_raw(g2, Matrix::identity(g2, 2));
    CHECK_THROWS_AS(plus_minus_algebras(a2), input_error);
}

TEST_CASE("multiplication closures are closed under their operation") {
    Field f = Field::gf(5);
    Matrix b = support::random_matrix(f, 2, 2);
    Algebra a = from_bilinear_form(f, b).algebra;
    OperatorSpan mult = mult_algebra_closure(a);
    CHECK(mult.contains(Matrix::identity(f, a.dim())));
    auto mb = mult.basis_matrices();
    for (const auto& m1 : mb)
        for (const auto& m2 : mb) CHECK(mult.contains(m1 * m2));

    OperatorSpan lie = lie_mult_algebra_closure(a);
    auto lb = lie.basis_matrices();
    for (const auto& m1 : lb)
        for (const auto& m2 : lb) CHECK(lie.contains(m1 * m2 - m2 * m1));
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec e = unit_vec(f, a.dim(), i);
        CHECK(mult.contains(a.left_mult(e)));
        CHECK(mult.contains(a.right_mult(e)));
        CHECK(lie.contains(a.left_mult(e)));
        CHECK(lie.contains(a.right_mult(e)));
    }
}

TEST_CASE("generic derivations satisfy the Leibniz rule") {
    Field f = Field::gf(7);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix b = support::random_matrix(f, 3, 3);
        Algebra a = from_bilinear_form(f, b).algebra;
        OperatorSpan ders = derivations_generic(a);
        for (const auto& d : ders.basis_matrices())
            for (const Vec& x : verification_set(a))
                for (const Vec& y : verification_set(a))
                    CHECK(d.apply(a.product(x, y)) ==
                          vec_add(a.product(d.apply(x), y), a.product(x, d.apply(y))));
    }
}

TEST_CASE("ideal enumeration over small finite algebras") {
    Field g2 = Field::gf(2);
    // split pair of lines: e0, e1 orthogonal idempotents
    std::vector<Scalar> c(8, Scalar::zero(g2));
    c[(0 * 2 + 0) * 2 + 0] = Scalar::one(g2);
    c[(1 * 2 + 1) * 2 + 1] = Scalar::one(g2);
    Algebra split(g2, 2, std::move(c));
    auto ideals = enumerate_ideals(split);
    REQUIRE(ideals.size() == 4);
    CHECK(ideals[0].dim() == 0);
    CHECK(ideals[1].dim() == 1);
    CHECK(ideals[2].dim() == 1);
    CHECK(ideals[3].dim() == 2);

    Field g3 = Field::gf(3);
    Algebra dual = two_dim(g3, Scalar::zero(g3), Scalar::zero(g3));
    auto di = enumerate_ideals(dual);
    REQUIRE(di.size() == 3); // 0, the nilpotent line, everything
    CHECK(di[1].dim() == 1);
    CHECK(di[1].contains(unit_vec(g3, 2, 1)));

    Field fq = Field::rationals();
    Algebra ratl = two_dim(fq, Scalar::zero(fq), Scalar::zero(fq));
    CHECK_THROWS_AS(enumerate_ideals(ratl), input_error);

    Algebra big(g3, 13, std::vector<Scalar>(13 * 13 * 13, Scalar::zero(g3)));
    try {
        enumerate_ideals(big);
        FAIL("enumeration over 3^13 vectors should refuse");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("1000000") != std::string::npos);
    }
    CHECK_THROWS_AS(enumerate_ideals(dual, 5), input_error); // 3^2 exceeds a bound of 5
}
