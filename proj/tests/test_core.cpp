#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <weilkit/rational.hpp>
#include <weilkit/poly.hpp>
#include <weilkit/series.hpp>
#include <weilkit/qmatrix.hpp>
#include <weilkit/lie.hpp>
#include <weilkit/element.hpp>
#include <weilkit/pbw.hpp>
#include <weilkit/weil.hpp>

using namespace weilkit;

static Rational Q(long p, long q = 1) { return Rational(p, q); }

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/4") == Q(3, 4));
    CHECK(parse_rational("-2") == Q(-2));
    CHECK_THROWS_AS(parse_rational("1/0"), BadRational);
    CHECK_THROWS_AS(parse_rational("x"), BadRational);
}

TEST_CASE("series: frozen leading coefficients") {
    auto fd = taylor_coeffs("f_dyn", 6);
    CHECK(fd.c[0] == 0);
    CHECK(fd.c[1] == Q(-1, 12));
    CHECK(fd.c[2] == 0);
    CHECK(fd.c[3] == Q(1, 720));
    CHECK(fd.c[5] == Q(-1, 30240));
    auto lg = taylor_coeffs("log_g", 6);
    CHECK(lg.c[0] == 0);
    CHECK(lg.c[1] == Q(-1, 2));
    CHECK(lg.c[2] == Q(1, 24));
    CHECK(lg.c[3] == 0);
    CHECK(lg.c[4] == Q(-1, 2880));
    auto ex = taylor_coeffs("exp", 4);
    CHECK(ex.c[4] == Q(1, 24));
    auto rs = taylor_coeffs("ratio_sinh", 4);
    CHECK(rs.c[0] == 1);
    CHECK(rs.c[2] == Q(1, 6));
    auto ch = taylor_coeffs("cosh", 4);
    CHECK(ch.c[2] == Q(1, 2));
}

TEST_CASE("qmatrix: rank and kernel") {
    QMatrix M(2, 3);
    M.at(0, 0) = 1; M.at(0, 1) = 2; M.at(0, 2) = 3;
    M.at(1, 0) = 2; M.at(1, 1) = 4; M.at(1, 2) = 6;
    CHECK(rank(M) == 1);
    auto K = kernel_basis(M);
    REQUIRE(K.size() == 2);
    // deterministic: free columns ascending, unit in the free slot
    CHECK(K[0][1] == 1);
    CHECK(K[1][2] == 1);
}

TEST_CASE("lie algebra catalog and validation") {
    LieAlgebra su2 = catalog("su2");
    CHECK(su2.n == 3);
    CHECK(su2.f(0, 1, 2) == 1);
    CHECK(su2.f(1, 0, 2) == -1);
    su2.validate();
    CHECK(su2.f_dot_f() == 6);

    LieAlgebra so4 = catalog("so4");
    CHECK(so4.n == 6);
    so4.validate();
    CHECK(so4.f_dot_f() == 12);

    LieAlgebra so5 = catalog("so5");
    CHECK(so5.n == 10);
    so5.validate();

    LieAlgebra ab = catalog("abelian(2)");
    CHECK(ab.n == 2);
    CHECK(ab.f_dot_f() == 0);

    // Jacobi violation detection
    LieAlgebra bad("bad", 3);
    bad.f(0, 1, 2) = 1;
    bad.f(0, 2, 1) = 1; // breaks antisymmetry
    CHECK_THROWS_AS(bad.validate(), NotTotallyAntisymmetric);
}

TEST_CASE("structure series: T, logJ, Jhalf for su2") {
    LieAlgebra su2 = catalog("su2");
    AdSeriesBundle b = structure_series(su2, 6);
    // T_ab = -1/12 (ad_mu)_ab + ..., (ad_mu)_12 = mu_c f_c21 = -mu_3
    // so T_12 = mu_3/12 + higher order
    std::vector<int> e3(3, 0);
    e3[2] = 1;
    CHECK(b.T[0][1].coeff(e3) == Q(1, 12));
    CHECK(b.T[1][0].coeff(e3) == Q(-1, 12));
    // lnJ = -|mu|^2/12 - |mu|^4/1440 + O(mu^6)
    std::vector<int> sq(3, 0);
    sq[0] = 2;
    CHECK(b.logJ.coeff(sq) == Q(-1, 12));
    std::vector<int> q4(3, 0);
    q4[0] = 4;
    CHECK(b.logJ.coeff(q4) == Q(-1, 1440));
    // J^1/2 = 1 - |mu|^2/24 + |mu|^4/1920 + cross/960 + ...
    CHECK(b.Jhalf.coeff(std::vector<int>(3, 0)) == 1);
    CHECK(b.Jhalf.coeff(sq) == Q(-1, 24));
    CHECK(b.Jhalf.coeff(q4) == Q(1, 1920));
    std::vector<int> cr(3, 0);
    cr[0] = 2;
    cr[1] = 2;
    CHECK(b.Jhalf.coeff(cr) == Q(1, 960));
}

TEST_CASE("exterior and Lie derivative basics") {
    LieAlgebra su2 = catalog("su2");
    GradedElement y1 = GradedElement::odd_gen(Tag::EXT, &su2, 0);
    GradedElement y2 = GradedElement::odd_gen(Tag::EXT, &su2, 1);
    GradedElement y12 = mul(y1, y2);
    CHECK(mul(y2, y1) == y12 * Q(-1));
    CHECK(mul(y1, y1).is_zero());
    // L_1(y^2) = f_123 y^3 = y^3
    GradedElement y3 = GradedElement::odd_gen(Tag::EXT, &su2, 2);
    CHECK(lie_deriv(0, y2) == y3);
    // iota_1(y1 y2) = y2
    CHECK(contract(0, y12) == y2);
    CHECK(contract(1, y12) == y1 * Q(-1));
    // Koszul differential: d y^1 = -y^2 y^3
    GradedElement y23 = mul(y2, y3);
    CHECK(koszul_d(y1) == y23 * Q(-1));
    CHECK(koszul_d(koszul_d(mul(y12, y3))).is_zero());
}

TEST_CASE("g-hat relation suite on EXT and W (su2 degree 6, so4 degree 4)") {
    for (auto& [name, maxdeg] : std::vector<std::pair<std::string, int>>{{"su2", 6}, {"so4", 4}}) {
        LieAlgebra alg = catalog(name);
        for (Tag tag : {Tag::EXT, Tag::W}) {
            auto d_op = [tag](const GradedElement& w) {
                return tag == Tag::EXT ? koszul_d(w) : weil_d(w);
            };
            LinOperator D{d_op, 1};
            CHECK(op_equal(op_compose(D, D), zero_op(), tag, alg, maxdeg).pass);
            for (int a = 0; a < alg.n; ++a) {
                LinOperator Ia{[a](const GradedElement& w) { return contract(a, w); }, 1};
                LinOperator La{[a](const GradedElement& w) { return lie_deriv(a, w); }, 0};
                CHECK(op_equal(super_comm(Ia, D), La, tag, alg, maxdeg).pass);
                CHECK(op_equal(super_comm(La, D), zero_op(), tag, alg, maxdeg).pass);
                for (int b = 0; b < alg.n; ++b) {
                    LinOperator Ib{[b](const GradedElement& w) { return contract(b, w); }, 1};
                    LinOperator Lb{[b](const GradedElement& w) { return lie_deriv(b, w); }, 0};
                    CHECK(op_equal(super_comm(Ia, Ib), zero_op(), tag, alg, maxdeg).pass);
                    LinOperator rhs{[&alg, a, b](const GradedElement& w) {
                                        GradedElement r(w.tag, w.alg);
                                        for (int c = 0; c < alg.n; ++c)
                                            if (alg.f(a, b, c) != 0)
                                                r += contract(c, w) * alg.f(a, b, c);
                                        return r;
                                    },
                                    1};
                    CHECK(op_equal(super_comm(La, Ib), rhs, tag, alg, maxdeg).pass);
                }
            }
        }
    }
}

TEST_CASE("PBW: normal ordering, associativity, symmetrization") {
    LieAlgebra su2 = catalog("su2");
    GradedElement u1 = GradedElement::even_gen(Tag::ENV, &su2, 0);
    GradedElement u2 = GradedElement::even_gen(Tag::ENV, &su2, 1);
    GradedElement u3 = GradedElement::even_gen(Tag::ENV, &su2, 2);
    // u2 u1 = u1 u2 - u3
    CHECK(u_mul(u2, u1) == u_mul(u1, u2) - u3);
    // associativity on generators
    GradedElement a = u_mul(u_mul(u2, u3), u1);
    GradedElement b = u_mul(u2, u_mul(u3, u1));
    CHECK(a == b);
    // sym(v1 v2) = u1 u2 - 1/2 u3
    GradedElement v1 = GradedElement::even_gen(Tag::SYM, &su2, 0);
    GradedElement v2 = GradedElement::even_gen(Tag::SYM, &su2, 1);
    CHECK(sym_map(mul(v1, v2)) == u_mul(u1, u2) - u3 * Q(1, 2));
    // Casimir is central
    GradedElement cas(Tag::ENV, &su2);
    for (int i = 0; i < 3; ++i) {
        std::vector<int> e(3, 0);
        e[i] = 2;
        cas.add_term({e, 0u}, 1);
    }
    CHECK(is_central(cas));
    // gr recovers the top symbol
    GradedElement top = gr(u_mul(u2, u1));
    CHECK(top == mul(v1, v2));
}

TEST_CASE("Weil differential generator images") {
    LieAlgebra su2 = catalog("su2");
    GradedElement y1 = GradedElement::odd_gen(Tag::W, &su2, 0);
    GradedElement v1 = GradedElement::even_gen(Tag::W, &su2, 0);
    GradedElement y2 = GradedElement::odd_gen(Tag::W, &su2, 1);
    GradedElement y3 = GradedElement::odd_gen(Tag::W, &su2, 2);
    // d y^1 = v^1 - y^2 y^3
    CHECK(weil_d(y1) == v1 - mul(y2, y3));
    // d v^1 = L-image: d(v^a) with d^2 = 0
    CHECK(weil_d(weil_d(v1)).is_zero());
    CHECK(weil_d(weil_d(mul(v1, y1))).is_zero());
}

TEST_CASE("tau0 conjugation identities and operator dictionary") {
    LieAlgebra su2 = catalog("su2");
    auto res = tau0_conj_check(su2, 4);
    CHECK_MESSAGE(res.pass, res.detail);
}

TEST_CASE("horizontal projection") {
    LieAlgebra su2 = catalog("su2");
    GradedElement y1 = GradedElement::odd_gen(Tag::W, &su2, 0);
    GradedElement v1 = GradedElement::even_gen(Tag::W, &su2, 0);
    CHECK(p_hor(y1).is_zero());
    CHECK(p_hor(v1 + y1) == v1);
    CHECK(p_hor(p_hor(v1 + y1)) == p_hor(v1 + y1));
}
