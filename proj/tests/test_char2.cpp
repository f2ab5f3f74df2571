#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace vidinli;

namespace {

// basis {1, x} with x^2 = sq*1 + li*x
Algebra two_dim2(const Scalar& sq, const Scalar& li) {
    Field f = sq.field();
    std::vector<Scalar> c(8, Scalar::zero(f));
    Scalar one = Scalar::one(f);
    c[(0 * 2 + 0) * 2 + 0] = one;
    c[(0 * 2 + 1) * 2 + 1] = one;
    c[(1 * 2 + 0) * 2 + 1] = one;
    c[(1 * 2 + 1) * 2 + 0] = sq;
    c[(1 * 2 + 1) * 2 + 1] = li;
    return Algebra(f, 2, std::move(c), 0);
}

std::vector<Scalar> random_star(const Field& f, std::size_t m) {
    std::vector<Scalar> star(m * m * m, Scalar::zero(f));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                Scalar v = support::random_scalar(f);
                star[(i * m + j) * m + k] = v;
                star[(j * m + i) * m + k] = v; // anticommutative = symmetric over GF(2)
            }
    return star;
}

// every linear map with Υ(1) = 1, checked for invertibility and
// multiplicativity on basis pairs; complete because isomorphisms fix unity
std::size_t brute_force_iso_count(const Algebra& a, const Algebra& b) {
    const Field& f = a.field();
    std::size_t n = a.dim();
    REQUIRE(n == b.dim());
    REQUIRE(n == 3);
    std::size_t count = 0;
    for (std::size_t m1 = 0; m1 < 8; ++m1)
        for (std::size_t m2 = 0; m2 < 8; ++m2) {
            Matrix ups(f, n, n);
            ups.at(0, 0) = Scalar::one(f);
            for (std::size_t r = 0; r < n; ++r) {
                ups.at(r, 1) = Scalar::of_int(f, (m1 >> r) & 1);
                ups.at(r, 2) = Scalar::of_int(f, (m2 >> r) & 1);
            }
            if (!inverse(ups)) continue;
            bool mult = true;
            for (std::size_t i = 0; i < n && mult; ++i)
                for (std::size_t j = 0; j < n && mult; ++j)
                    if (ups.apply(a.basis_product(i, j)) !=
                        b.product(ups.col(i), ups.col(j)))
                        mult = false;
            if (mult) ++count;
        }
    return count;
}

} // namespace

TEST_CASE("star constants must be alternating") {
    Field f = Field::gf(2);
    Scalar one = Scalar::one(f);
    std::vector<Scalar> diag(8, Scalar::zero(f));
    diag[(0 * 2 + 0) * 2 + 1] = one; // e1 * e1 != 0
    CHECK_THROWS_AS(make_char2_presentation(f, diag, Matrix(f, 2, 2)), input_error);

    std::vector<Scalar> lop(8, Scalar::zero(f));
    lop[(0 * 2 + 1) * 2 + 0] = one; // e1 * e2 != e2 * e1
    CHECK_THROWS_AS(make_char2_presentation(f, lop, Matrix(f, 2, 2)), input_error);

    CHECK_THROWS_AS(make_char2_presentation(f, std::vector<Scalar>(7, Scalar::zero(f)),
                                            Matrix(f, 2, 2)),
                    input_error);
    CHECK_THROWS_AS(make_char2_presentation(f, std::vector<Scalar>(8, Scalar::zero(f)),
                                            Matrix(f, 2, 3)),
                    input_error);
    CHECK_THROWS_AS(make_char2_presentation(Field::gf(3), std::vector<Scalar>(8, Scalar::zero(Field::gf(3))),
                                            Matrix(Field::gf(3), 2, 2)),
                    input_error);
}

TEST_CASE("built products follow the split formula") {
    Field f = Field::gf(2);
    Scalar one = Scalar::one(f);
    std::vector<Scalar> star(27, Scalar::zero(f));
    star[(0 * 3 + 1) * 3 + 2] = one; // e1 * e2 = e3
    star[(1 * 3 + 0) * 3 + 2] = one;
    Matrix phi(f, 3, 3);
    phi.at(0, 0) = one;
    phi.at(0, 1) = one;
    Algebra a = build_char2(f, star, phi);
    REQUIRE(a.dim() == 4);

    Vec unity = a.unity();
    Vec e1 = unit_vec(f, 4, 1), e2 = unit_vec(f, 4, 2), e3 = unit_vec(f, 4, 3);
    CHECK(a.product(e1, e1) == vec_scale(phi.at(0, 0), unity));          // phi diagonal
    CHECK(a.product(e1, e2) == vec_add(vec_scale(phi.at(0, 1), unity), e3));
    CHECK(a.product(e2, e1) == e3);                                       // phi(1,0) = 0
    CHECK(vec_is_zero(a.product(e3, e3)));
    CHECK(a.product(unity, e2) == e2);
    CHECK(a.commutator(e1, e2) == unity); // phi asymmetry lands on the unity line
}

TEST_CASE("characteristic-2 acceptance and the vanishing polar against unity") {
    Field f = Field::gf(2);

    SECTION("every built presentation is accepted with q(x,1) = 0") {
        for (std::size_t m = 1; m <= 3; ++m)
            for (int trial = 0; trial < 8; ++trial) {
                Algebra a = build_char2(f, random_star(f, m), support::random_matrix(f, m, m));
                IsVidinli2Result res = is_vidinli_char2(a);
                REQUIRE(res.record.has_value());
                CHECK(res.reason.empty());
                CHECK(res.record->qA1_zero);
                CHECK(res.record->q_values[0].is_one());
            }
    }

    SECTION("diagonal of phi is the norm on the complement") {
        Matrix phi(f, 2, 2);
        phi.at(0, 0) = Scalar::one(f);
        Algebra a = build_char2(f, std::vector<Scalar>(8, Scalar::zero(f)), phi);
        auto rec = is_vidinli_char2(a).record;
        REQUIRE(rec.has_value());
        CHECK(rec->q_values == std::vector<Scalar>{Scalar::one(f), Scalar::one(f), Scalar::zero(f)});
    }

    SECTION("a cubic relation is rejected with the offending vector named") {
        std::vector<Scalar> c(27, Scalar::zero(f));
        Scalar one = Scalar::one(f);
        for (std::size_t k = 0; k < 3; ++k) {
            c[(0 * 3 + k) * 3 + k] = one;
            c[(k * 3 + 0) * 3 + k] = one;
        }
        c[(1 * 3 + 1) * 3 + 2] = one; // e1^2 = e2
        Algebra a(f, 3, std::move(c), 0);
        IsVidinli2Result res = is_vidinli_char2(a);
        CHECK(!res.record.has_value());
        CHECK(res.reason.find("basis vector 1") != std::string::npos);
    }

    SECTION("small dimensions always pass, possibly with a nonzero polar") {
        std::vector<Scalar> cc(1, Scalar::one(f));
        Algebra ground(f, 1, std::move(cc), 0);
        auto r1 = is_vidinli_char2(ground);
        REQUIRE(r1.record.has_value());
        CHECK(r1.record->qA1_zero);

        Algebra split = two_dim2(Scalar::zero(f), Scalar::one(f)); // x^2 = x
        auto r2 = is_vidinli_char2(split);
        REQUIRE(r2.record.has_value());
        CHECK(!r2.record->qA1_zero);

        Algebra dual = two_dim2(Scalar::zero(f), Scalar::zero(f)); // x^2 = 0
        auto r3 = is_vidinli_char2(dual);
        REQUIRE(r3.record.has_value());
        CHECK(r3.record->qA1_zero);
    }
}

TEST_CASE("presentation extraction inverts the build") {
    Field f = Field::gf(2);
    for (std::size_t m = 2; m <= 3; ++m)
        for (int trial = 0; trial < 8; ++trial) {
            auto star = random_star(f, m);
            Matrix phi = support::random_matrix(f, m, m);
            Char2Presentation p = make_char2_presentation(f, star, phi);
            Algebra a = build_char2(p);
            Char2Presentation back = extract_char2_presentation(a);
            CHECK(back.same_data(p));
        }

    Algebra dual = two_dim2(Scalar::zero(f), Scalar::zero(f));
    CHECK_THROWS_AS(extract_char2_presentation(dual), input_error);
}

TEST_CASE("changing the complement twists the data") {
    Field f = Field::gf(2);
    std::size_t m = 3, n = m + 1;
    for (int trial = 0; trial < 8; ++trial) {
        Char2Presentation p = make_char2_presentation(f, random_star(f, m),
                                                      support::random_matrix(f, m, m));
        Algebra a = build_char2(p);
        Vec fv = support::random_matrix(f, 1, m).row(0);

        Matrix comp(f, m, n);
        for (std::size_t i = 0; i < m; ++i) {
            comp.at(i, 0) = fv[i]; // w_i = e_{i+1} + f_i 1
            comp.at(i, i + 1) = Scalar::one(f);
        }
        Char2Presentation shifted = extract_char2_presentation(a, comp);
        Char2Presentation twisted = twist(p, fv);
        CHECK(shifted.same_data(twisted));

        // the twist formulas themselves
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                Vec sv = p.star_vec(i, j);
                Vec expect = sv;
                for (std::size_t k = 0; k < m; ++k) {
                    expect[k] = expect[k] + fv[i] * (j == k ? Scalar::one(f) : Scalar::zero(f));
                    expect[k] = expect[k] + fv[j] * (i == k ? Scalar::one(f) : Scalar::zero(f));
                }
                CHECK(twisted.star_vec(i, j) == expect);
                Scalar fdot = Scalar::zero(f);
                for (std::size_t k = 0; k < m; ++k) fdot = fdot + fv[k] * sv[k];
                CHECK(twisted.phi.at(i, j) == p.phi.at(i, j) + fv[i] * fv[j] + fdot);
            }

        CHECK(twist(twisted, fv).same_data(p));                        // involution
        CHECK(twist(p, zero_vec(f, m)).same_data(p));                  // identity
        CHECK_THROWS_AS(twist(p, zero_vec(f, m + 1)), input_error);
    }
}

TEST_CASE("twisted presentations are isomorphic with a verified witness") {
    Field f = Field::gf(2);
    std::size_t m = 2, n = m + 1;
    for (int trial = 0; trial < 10; ++trial) {
        Char2Presentation p = make_char2_presentation(f, random_star(f, m),
                                                      support::random_matrix(f, m, m));
        Vec fv = support::random_matrix(f, 1, m).row(0);
        Char2Presentation q = twist(p, fv);

        auto iso = iso_test_char2(p, q);
        REQUIRE(iso.has_value());

        Algebra a = build_char2(p);
        Algebra b = build_char2(q);
        const Matrix& ups = iso->Upsilon;
        CHECK(inverse(ups).has_value());
        CHECK(ups.apply(a.unity()) == b.unity());
        for (const Vec& x : verification_set(a))
            for (const Vec& y : verification_set(a))
                CHECK(ups.apply(a.product(x, y)) == b.product(ups.apply(x), ups.apply(y)));
        CHECK(iso->f.size() == m);
        CHECK(iso->Phi.rows() == m);
        CHECK(ups.rows() == n);
    }
    Char2Presentation self = make_char2_presentation(f, random_star(f, m),
                                                     support::random_matrix(f, m, m));
    CHECK(iso_test_char2(self, self).has_value());
}

TEST_CASE("isomorphism testing agrees with brute force") {
    Field f = Field::gf(2);
    std::size_t m = 2;
    std::vector<Char2Presentation> pool;
    for (int i = 0; i < 6; ++i)
        pool.push_back(make_char2_presentation(f, random_star(f, m),
                                               support::random_matrix(f, m, m)));
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            auto iso = iso_test_char2(pool[i], pool[j]);
            std::size_t oracle = brute_force_iso_count(build_char2(pool[i]), build_char2(pool[j]));
            CHECK(iso.has_value() == (oracle > 0));
        }
}

TEST_CASE("a zero star with distinct phi ranks separates two algebras") {
    Field f = Field::gf(2);
    std::vector<Scalar> star(8, Scalar::zero(f));
    Matrix phi0(f, 2, 2);
    Matrix phi1(f, 2, 2);
    phi1.at(0, 0) = Scalar::one(f);
    Char2Presentation p0 = make_char2_presentation(f, star, phi0);
    Char2Presentation p1 = make_char2_presentation(f, star, phi1);
    CHECK(!iso_test_char2(p0, p1).has_value());
    CHECK(brute_force_iso_count(build_char2(p0), build_char2(p1)) == 0);
}

TEST_CASE("isomorphism search guardrails") {
    Field f = Field::gf(2);
    Char2Presentation small = make_char2_presentation(f, random_star(f, 1), Matrix(f, 1, 1));
    Char2Presentation big = make_char2_presentation(f, random_star(f, 2), Matrix(f, 2, 2));
    CHECK(!iso_test_char2(small, big).has_value()); // dimension mismatch is decisive

    Char2Presentation wide = make_char2_presentation(f, random_star(f, 5), Matrix(f, 5, 5));
    try {
        iso_test_char2(wide, wide);
        FAIL("a 2^25 search space should refuse by default");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("--max-iso-dim") != std::string::npos);
    }

    Char2Presentation point = make_char2_presentation(f, {}, Matrix(f, 0, 0));
    CHECK(iso_test_char2(point, point).has_value());
}

TEST_CASE("two-dimensional algebras in characteristic 2") {
    Field f = Field::gf(2);
    Scalar z = Scalar::zero(f), o = Scalar::one(f);

    Dim2Class nil = classify_dim2(two_dim2(z, z));
    CHECK(nil.tag == Dim2Tag::dual_numbers);
    CHECK(nil.min_poly.degree() == 2);

    Dim2Class shifted = classify_dim2(two_dim2(o, z)); // x^2 = 1, so (x+1)^2 = 0
    CHECK(shifted.tag == Dim2Tag::dual_numbers);
    Algebra a = two_dim2(o, z);
    CHECK(vec_is_zero(a.product(shifted.witness, shifted.witness)));

    Dim2Class split = classify_dim2(two_dim2(z, o)); // x^2 = x
    CHECK(split.tag == Dim2Tag::split_FxF);
    CHECK(split.min_poly.eval(z).is_zero());
    CHECK(split.min_poly.eval(o).is_zero());

    Dim2Class field_ext = classify_dim2(two_dim2(o, o)); // x^2 = x + 1
    CHECK(field_ext.tag == Dim2Tag::separable_quadratic);
    CHECK(!field_ext.min_poly.eval(z).is_zero());
    CHECK(!field_ext.min_poly.eval(o).is_zero());
    CHECK(std::string(to_string(field_ext.tag)) == "separable_quadratic");

    std::vector<Scalar> cc(1, o);
    CHECK_THROWS_AS(classify_dim2(Algebra(f, 1, std::move(cc), 0)), input_error);
    Field g3 = Field::gf(3);
    CHECK_THROWS_AS(classify_dim2(Algebra(g3, 2, std::vector<Scalar>(8, Scalar::zero(g3)))),
                    input_error);
}

TEST_CASE("characteristic-2 centers") {
    Field f = Field::gf(2);
    std::vector<Scalar> star(8, Scalar::zero(f));

    Center2Report flat = center_char2(build_char2(f, star, Matrix(f, 2, 2)));
    CHECK(flat.branch == Center2Branch::commutative);
    CHECK(flat.Z.dim() == 3); // zero products on the complement: associative

    // phi = I is commutative but not associative, so the center still shrinks
    Center2Report comm = center_char2(build_char2(f, star, Matrix::identity(f, 2)));
    CHECK(comm.branch == Center2Branch::commutative);
    CHECK(comm.Z.dim() == 1);
    CHECK(comm.N == comm.Z);

    Matrix skewish(f, 2, 2);
    skewish.at(0, 1) = Scalar::one(f); // phi not symmetric
    Center2Report line = center_char2(build_char2(f, star, skewish));
    CHECK(line.branch == Center2Branch::Z_is_unity_line);
    CHECK(line.Z.dim() == 1);
    CHECK(line.N == line.Z);

    Center2Report small = center_char2(two_dim2(Scalar::zero(f), Scalar::one(f)));
    CHECK(small.branch == Center2Branch::commutative);
    CHECK(small.Z.dim() == 2);
}
