#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <weilkit/clifford.hpp>

using namespace weilkit;
using Q = Rational;

namespace {

GradedElement gen(Tag t, const LieAlgebra& alg, int a) {
    return GradedElement::odd_gen(t, &alg, a);
}

std::vector<MonoKey> ext_keys(int n) {
    std::vector<MonoKey> out;
    for (std::uint32_t e = 0; e < (1u << n); ++e) out.push_back({std::vector<int>(n, 0), e});
    return out;
}

GradedElement from_key(Tag t, const LieAlgebra& alg, const MonoKey& k) {
    GradedElement w(t, &alg);
    w.terms[k] = 1;
    return w;
}

// Deterministic random element with small rational coefficients.
GradedElement random_elem(Tag t, const LieAlgebra& alg, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    GradedElement w(t, &alg);
    for (auto& k : ext_keys(alg.n)) {
        int p = num(rng);
        if (p != 0) w.terms[k] = Q(p, den(rng));
    }
    return w;
}

QMatrix skew2(const Q& s) {
    QMatrix S(2, 2);
    S.at(0, 1) = s;
    S.at(1, 0) = -s;
    return S;
}

QMatrix random_skew(std::size_t m, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    QMatrix S(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Q v(num(rng), den(rng));
            S.at(i, j) = v;
            S.at(j, i) = -v;
        }
    return S;
}

int filtration_degree(const GradedElement& w) {
    int d = -1;
    for (auto& [k, c] : w.terms)
        if (c != 0) d = std::max(d, popcount(k.ext));
    return d;
}

} // namespace

TEST_CASE("Clifford product basics (n<=4)") {
    for (auto name : {std::string("su2"), std::string("abelian(4)")}) {
        LieAlgebra alg = catalog(name);
        GradedElement y1 = gen(Tag::CL, alg, 0), y2 = gen(Tag::CL, alg, 1);
        CHECK(cl_mul(y1, y1) == GradedElement::unit(Tag::CL, &alg) * Q(1, 2));
        // disjoint indices: no contraction term, just the wedge
        GradedElement y12(Tag::CL, &alg);
        y12.terms[{std::vector<int>(alg.n, 0), 0b11u}] = 1;
        CHECK(cl_mul(y1, y2) == y12);
        GradedElement one = GradedElement::unit(Tag::CL, &alg);
        CHECK(cl_mul(one, y12) == y12);
    }
}

TEST_CASE("cl_mul equals the rewriting oracle") {
    for (auto& [name, exhaustive] :
         std::vector<std::pair<std::string, bool>>{{"su2", true}, {"so4", true}}) {
        LieAlgebra alg = catalog(name);
        auto keys = ext_keys(alg.n);
        for (auto& ka : keys)
            for (auto& kb : keys) {
                GradedElement a = from_key(Tag::CL, alg, ka), b = from_key(Tag::CL, alg, kb);
                CHECK(cl_mul(a, b) == cl_mul_oracle(a, b));
            }
    }
    // so5: 1000 random basis pairs.
    LieAlgebra so5 = catalog("so5");
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<std::uint32_t> pick(0, (1u << so5.n) - 1);
    for (int i = 0; i < 1000; ++i) {
        MonoKey ka{std::vector<int>(so5.n, 0), pick(rng)};
        MonoKey kb{std::vector<int>(so5.n, 0), pick(rng)};
        GradedElement a = from_key(Tag::CL, so5, ka), b = from_key(Tag::CL, so5, kb);
        CHECK(cl_mul(a, b) == cl_mul_oracle(a, b));
    }
}

TEST_CASE("associativity and filtration compatibility") {
    LieAlgebra so4 = catalog("so4");
    std::mt19937 rng(7);
    for (int i = 0; i < 10; ++i) {
        GradedElement a = random_elem(Tag::CL, so4, rng);
        GradedElement b = random_elem(Tag::CL, so4, rng);
        GradedElement c = random_elem(Tag::CL, so4, rng);
        CHECK(cl_mul(cl_mul(a, b), c) == cl_mul(a, cl_mul(b, c)));
        int da = filtration_degree(a), db = filtration_degree(b);
        GradedElement p = cl_mul(a, b);
        if (!p.is_zero()) CHECK(filtration_degree(p) <= da + db);
    }
    // gr of a product of basis monomials: top-degree part is the wedge.
    auto keys = ext_keys(so4.n);
    for (auto& ka : keys)
        for (auto& kb : keys) {
            if (ka.ext & kb.ext) continue; // wedge vanishes otherwise
            GradedElement p =
                cl_mul(from_key(Tag::CL, so4, ka), from_key(Tag::CL, so4, kb));
            MonoKey top{std::vector<int>(so4.n, 0), ka.ext | kb.ext};
            Q expect = detail::concat_sign(ka.ext, kb.ext);
            CHECK(p.terms.at(top) == expect);
        }
}

TEST_CASE("left multiplication realized by y_a + (1/2) iota_a") {
    LieAlgebra su2 = catalog("su2");
    for (int a = 0; a < su2.n; ++a)
        for (auto& k : ext_keys(su2.n)) {
            GradedElement w = from_key(Tag::CL, su2, k);
            GradedElement lhs = y_wedge(a, w) + contract(a, w) * Q(1, 2);
            CHECK(lhs == cl_mul(gen(Tag::CL, su2, a), w));
        }
}

TEST_CASE("g_a and the cubic element") {
    LieAlgebra su2 = catalog("su2");
    auto [gs, gamma] = g_and_gamma(su2);
    // symbol of the cubic element for su2: -y1 y2 y3
    GradedElement expect(Tag::CL, &su2);
    expect.terms[{std::vector<int>(3, 0), 0b111u}] = Q(-1);
    CHECK(gamma == expect);
    // quadratic pieces have filtration degree 2 and match -1/2 f_ars y_r y_s
    for (int a = 0; a < 3; ++a) {
        CHECK(filtration_degree(gs[a]) == 2);
        for (int c = 0; c < su2.n; ++c) CHECK(lie_deriv(c, gamma).is_zero());
    }
    // square of the cubic element: -(1/48) f.f
    CHECK(cl_mul(gamma, gamma) == GradedElement::unit(Tag::CL, &su2) * Q(-1, 8));
    CHECK(cl_mul_oracle(gamma, gamma) == GradedElement::unit(Tag::CL, &su2) * Q(-1, 8));
    LieAlgebra so4 = catalog("so4");
    auto [gs4, gamma4] = g_and_gamma(so4);
    CHECK(cl_mul(gamma4, gamma4) == GradedElement::unit(Tag::CL, &so4) * Q(-1, 4));
    LieAlgebra ab = catalog("abelian(2)");
    CHECK(g_and_gamma(ab).second.is_zero());
}

TEST_CASE("inner derivation by the cubic element") {
    LieAlgebra su2 = catalog("su2");
    GradedElement y1 = gen(Tag::CL, su2, 0);
    GradedElement m23(Tag::CL, &su2);
    m23.terms[{std::vector<int>(3, 0), 0b110u}] = Q(-1);
    CHECK(ad_gamma(y1) == m23);
    CHECK(ad_gamma(GradedElement::unit(Tag::CL, &su2)).is_zero());
    GradedElement y123(Tag::CL, &su2);
    y123.terms[{std::vector<int>(3, 0), 0b111u}] = 1;
    CHECK(ad_gamma(y123) == GradedElement::unit(Tag::CL, &su2) * Q(1, 4));

    for (auto name : {std::string("su2"), std::string("so4")}) {
        LieAlgebra alg = catalog(name);
        LinOperator A{[](const GradedElement& w) { return ad_gamma(w); }, 1};
        LinOperator B{[](const GradedElement& w) { return ad_gamma_comm(w); }, 1};
        CHECK(op_equal(A, B, Tag::CL, alg, 0).pass);
        CHECK(op_equal(op_compose(A, A), zero_op(), Tag::CL, alg, 0).pass);
    }
}

TEST_CASE("contracting homotopy and trivial Clifford cohomology") {
    LieAlgebra su2 = catalog("su2");
    Q scale = Q(-24) / su2.f_dot_f();
    auto [gs, gamma] = g_and_gamma(su2);
    GradedElement H = gamma * scale;
    // ad_gamma and left-multiplication by H are both odd: the super-commutator
    // is the anticommutator, and it must be the identity.
    LinOperator A{[](const GradedElement& w) { return ad_gamma(w); }, 1};
    LinOperator HL{[&](const GradedElement& w) { return cl_mul(H, w); }, 1};
    LinOperator Id{[](const GradedElement& w) { return w; }, 0};
    CHECK(op_equal(super_comm(A, HL), Id, Tag::CL, su2, 0).pass);
    auto betti = homology(ComplexKind::CL_adgamma, su2, 0);
    for (int b : betti) CHECK(b == 0);
}

TEST_CASE("Koszul and Weil cohomology reference values") {
    LieAlgebra su2 = catalog("su2");
    auto koszul = homology(ComplexKind::EXT_koszul, su2, 3);
    CHECK(koszul == std::vector<int>{1, 0, 0, 1});
    auto weil = homology(ComplexKind::W_full, su2, 6);
    std::vector<int> expect(weil.size(), 0);
    expect[0] = 1;
    CHECK(weil == expect);
}

TEST_CASE("pfaffian") {
    CHECK(pfaffian(skew2(Q(3))) == 3);
    CHECK(pfaffian(skew2(Q(0))) == 0);
    QMatrix S4(4, 4);
    S4.at(0, 1) = 2;
    S4.at(1, 0) = -2;
    S4.at(2, 3) = 5;
    S4.at(3, 2) = -5;
    CHECK(pfaffian(S4) == 10);
    CHECK_THROWS_AS(pfaffian(QMatrix(3, 3)), std::invalid_argument);
    std::mt19937 rng(99);
    for (int i = 0; i < 5; ++i) {
        QMatrix S = random_skew(4, rng);
        Q p = pfaffian(S);
        CHECK(p * p == det(S));
    }
}

TEST_CASE("exterior and series exponentials of quadratics") {
    LieAlgebra ab2 = catalog("abelian(2)");
    GradedElement e = exp_quadratic_ext(skew2(Q(3)), ab2);
    GradedElement expect = GradedElement::unit(Tag::EXT, &ab2);
    expect.terms[{std::vector<int>(2, 0), 0b11u}] = 3;
    CHECK(e == expect);
    GradedElement z = exp_quadratic_ext(QMatrix(2, 2), ab2);
    CHECK(z == GradedElement::unit(Tag::EXT, &ab2));

    // Clifford series exponential of a 2x2 block with parameter s:
    // scalar part cos(ts/2), top part 2 sin(ts/2).
    Q s(3);
    ClKSeries E = exp_quadratic_series(skew2(s), 4);
    TruncSeries sc = E.terms.at({0u, 0u});
    CHECK(sc.c[0] == 1);
    CHECK(sc.c[1] == 0);
    CHECK(sc.c[2] == -s * s / 8);
    CHECK(sc.c[3] == 0);
    CHECK(sc.c[4] == s * s * s * s / 384);
    TruncSeries top = E.terms.at({3u, 0u});
    CHECK(top.c[0] == 0);
    CHECK(top.c[1] == s);
    CHECK(top.c[2] == 0);
    CHECK(top.c[3] == -s * s * s / 24);
    ClKSeries E0 = exp_quadratic_series(QMatrix(2, 2), 4);
    CHECK(E0.terms.size() == 1);
    CHECK(E0.terms.at({0u, 0u}).c[0] == 1);
}

TEST_CASE("Gaussian integration identity (exact rational skew matrices)") {
    LieAlgebra ab2 = catalog("abelian(2)");
    CHECK(berezin_check(skew2(Q(3)), ab2).pass);
    CHECK_THROWS_AS(berezin_check(skew2(Q(0)), ab2), SingularS);
    LieAlgebra ab4 = catalog("abelian(4)");
    LieAlgebra ab6 = catalog("abelian(6)");
    std::mt19937 rng(42);
    int done4 = 0, done6 = 0;
    while (done4 < 10) {
        QMatrix S = random_skew(4, rng);
        if (pfaffian(S) == 0) continue;
        CHECK(berezin_check(S, ab4).pass);
        ++done4;
    }
    while (done6 < 10) {
        QMatrix S = random_skew(6, rng);
        if (pfaffian(S) == 0) continue;
        CHECK(berezin_check(S, ab6).pass);
        ++done6;
    }
}

TEST_CASE("factorization of exp(-iota_a kappa_a) against a quadratic exponential") {
    CHECK(di_check(QMatrix(2, 2), 4).pass);
    CHECK(di_check(skew2(Q(2)), 6).pass);
    QMatrix S4(4, 4);
    S4.at(0, 1) = 2;
    S4.at(1, 0) = -2;
    S4.at(2, 3) = Q(1, 2);
    S4.at(3, 2) = Q(-1, 2);
    CHECK(di_check(S4, 6).pass);
}

TEST_CASE("symbol of the quadratic group element") {
    LieAlgebra ab2 = catalog("abelian(2)");
    CHECK(tau_symbol_check(ab2, {Q(1), Q(2)}, 4).pass);
    LieAlgebra su2 = catalog("su2");
    CHECK(tau_symbol_check(su2, {Q(0), Q(0), Q(1)}, 6).pass);
    CHECK(tau_symbol_check(su2, {Q(1), Q(1), Q(0)}, 6).pass);
}
