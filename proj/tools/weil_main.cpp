#include <weilkit/cartan.hpp>
#include <weilkit/expr.hpp>
#include <weilkit/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace weilkit;

namespace {

LieAlgebra load_algebra(const std::string& spec) {
    if (spec.find('/') != std::string::npos || spec.ends_with(".json") ||
        std::ifstream(spec).good()) {
        std::ifstream in(spec);
        if (!in) throw std::runtime_error("cannot open algebra file: " + spec);
        nlohmann::json doc;
        in >> doc;
        return load_lie(doc);
    }
    return catalog(spec);
}

int default_degree(const LieAlgebra& alg) { return alg.n <= 3 ? 6 : 4; }

GradedElement sym_casimir(const LieAlgebra& alg) {
    GradedElement r(Tag::SYM, &alg);
    for (int a = 0; a < alg.n; ++a)
        r += mul(GradedElement::even_gen(Tag::SYM, &alg, a),
                 GradedElement::even_gen(Tag::SYM, &alg, a));
    return r;
}

bool commutes_with_generators(const GradedElement& z) {
    const LieAlgebra& alg = *z.alg;
    for (int a = 0; a < alg.n; ++a) {
        GradedElement u = GradedElement::even_gen(Tag::NCW, &alg, a);
        GradedElement x = GradedElement::odd_gen(Tag::NCW, &alg, a);
        if (!(mul(z, u) - mul(u, z)).is_zero()) return false;
        if (!(mul(z, x) - mul(x, z)).is_zero()) return false;
    }
    return true;
}

void suite_core(Report& rep, const LieAlgebra& alg, int deg) {
    // the bracket relations on the exterior, commutative and noncommutative pictures
    for (auto [tag, label] : {std::pair{Tag::EXT, "ext"}, {Tag::W, "weil"}, {Tag::NCW, "ncweil"}}) {
        auto d_op = [tag](const GradedElement& w) {
            return tag == Tag::EXT ? koszul_d(w) : (tag == Tag::W ? weil_d(w) : nc_weil_d(w));
        };
        bool ok = true;
        LinOperator D{d_op, 1};
        ok = ok && op_equal(op_compose(D, D), zero_op(), tag, alg, deg).pass;
        for (int a = 0; a < alg.n && ok; ++a) {
            LinOperator Ia{[a](const GradedElement& w) { return contract(a, w); }, 1};
            LinOperator La{[a](const GradedElement& w) { return lie_deriv(a, w); }, 0};
            ok = ok && op_equal(super_comm(Ia, D), La, tag, alg, deg).pass;
            ok = ok && op_equal(super_comm(La, D), zero_op(), tag, alg, deg).pass;
            for (int b = 0; b < alg.n && ok; ++b) {
                LinOperator Lb{[b](const GradedElement& w) { return lie_deriv(b, w); }, 0};
                LinOperator rhs{[&alg, a, b](const GradedElement& w) {
                                    GradedElement r(w.tag, w.alg);
                                    for (int c = 0; c < alg.n; ++c)
                                        if (alg.f(a, b, c) != 0)
                                            r += lie_deriv(c, w) * alg.f(a, b, c);
                                    return r;
                                },
                                0};
                ok = ok && op_equal(super_comm(La, Lb), rhs, tag, alg, deg).pass;
            }
        }
        rep.add_check(std::string("ghat_relations_") + label, ok, deg);
    }
    // Clifford product against the word-rewriting oracle
    {
        bool ok = true;
        std::mt19937 rng(12345);
        std::uniform_int_distribution<std::uint32_t> pick(0, (1u << alg.n) - 1);
        int pairs = alg.n <= 4 ? 0 : 1000;
        auto check_pair = [&](std::uint32_t ea, std::uint32_t eb) {
            GradedElement a(Tag::CL, &alg), b(Tag::CL, &alg);
            a.terms[{std::vector<int>(alg.n, 0), ea}] = 1;
            b.terms[{std::vector<int>(alg.n, 0), eb}] = 1;
            return cl_mul(a, b) == cl_mul_oracle(a, b);
        };
        if (alg.n <= 4) {
            for (std::uint32_t ea = 0; ea < (1u << alg.n) && ok; ++ea)
                for (std::uint32_t eb = 0; eb < (1u << alg.n) && ok; ++eb)
                    ok = check_pair(ea, eb);
        } else {
            for (int i = 0; i < pairs && ok; ++i) ok = check_pair(pick(rng), pick(rng));
        }
        rep.add_check("clifford_product_vs_oracle", ok, deg);
    }
    // square of the cubic Dirac-type element, two routes, and centrality
    {
        GradedElement D = dirac(alg);
        GradedElement sq = mul(D, D);
        GradedElement expect(Tag::NCW, &alg);
        for (int a = 0; a < alg.n; ++a) {
            GradedElement u = GradedElement::even_gen(Tag::NCW, &alg, a);
            expect += mul(u, u) * Rational(1, 2);
        }
        expect += GradedElement::unit(Tag::NCW, &alg) * (alg.f_dot_f() * Rational(-1, 48));
        rep.add_check("dirac_square", sq == expect && commutes_with_generators(sq), deg);
    }
    // homology reference patterns
    {
        auto w = homology(ComplexKind::W_full, alg, std::min(deg, 5));
        bool okw = !w.empty() && w[0] == 1;
        for (std::size_t k = 1; k < w.size(); ++k) okw = okw && w[k] == 0;
        rep.add_check("homology_weil_contractible", okw, std::min(deg, 5));
        auto cl = homology(ComplexKind::CL_adgamma, alg, 0);
        bool okc = true;
        for (int b : cl) okc = okc && b == 0;
        rep.add_check("homology_clifford_trivial", okc, alg.n);
        auto ko = homology(ComplexKind::EXT_koszul, alg, alg.n);
        rep.add_check("homology_koszul_poincare", ko.front() == 1 && ko.back() == 1, alg.n);
    }
}

void suite_duflo(Report& rep, const LieAlgebra& alg, int deg) {
    DufloContext ctx = make_duflo_context(alg, deg + 4);
    rep.add_check("chain_map", chain_check(ctx, deg).pass, deg);
    rep.add_check("cdyb", cdyb_check(alg, deg).pass, deg);
    rep.add_check("dlogj", dlogj_check(alg, deg).pass, deg);
    GradedElement lam = sym_casimir(alg);
    rep.add_check("ring_property_casimir", duflo_ring_check(ctx, lam, lam).pass, deg);
}

void suite_cartan(Report& rep, const LieAlgebra& alg, int deg) {
    int D = std::min(deg, alg.n <= 3 ? 5 : 3);
    TrivialGDA triv{&alg};
    ExtGDA ext{&alg};
    rep.add_check("weil_vs_cartan_comm_trivial", weil_vs_cartan_check(Model::COMM, triv, alg, D).pass, D);
    rep.add_check("weil_vs_cartan_nc_trivial", weil_vs_cartan_check(Model::NC, triv, alg, D).pass, D);
    rep.add_check("weil_vs_cartan_comm_ext", weil_vs_cartan_check(Model::COMM, ext, alg, D).pass, D);
    rep.add_check("weil_vs_cartan_nc_ext", weil_vs_cartan_check(Model::NC, ext, alg, D).pass, D);
    rep.add_check("twisted_d_trivial", twisted_d_check(triv, alg, D).pass, D);
    rep.add_check("twisted_d_ext", twisted_d_check(ext, alg, std::min(D, alg.n)).pass, std::min(D, alg.n));
    int DK = std::min(D, 4);
    rep.add_check("kalkman_ext", kalkman_check(ext, alg, DK).pass, DK);
}

void suite_sphere(Report& rep, const LieAlgebra& alg, int deg) {
    if (alg.n != 3 || alg.f_dot_f() != 6)
        throw std::runtime_error("the sphere suite requires the 3-dimensional rotation algebra");
    DufloContext ctx = make_duflo_context(alg, std::max(deg, 8));
    SphereGDA sph;
    SphereSuiteReport r = sphere_suite(ctx, sph);
    rep.add_check("sphere_closed", r.closed.pass, 2);
    rep.add_check("sphere_classical_square", r.classical_square.pass, 4);
    rep.add_check("sphere_quantized_form", r.quantized_form.pass, 2);
    rep.add_check("sphere_double_contraction_quarter", r.double_contraction == Rational(1, 4), 4);
    rep.add_check("sphere_quantum_square_vs_casimir", r.duflo_constant.pass, 4);
    rep.set("resolved_casimir_image", r.duflo_of_casimir.str());
}

void suite_clifford(Report& rep, const LieAlgebra& alg, int deg) {
    std::mt19937 rng(2718);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    auto random_skew = [&](std::size_t m) {
        QMatrix S(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                Rational v(num(rng), den(rng));
                S.at(i, j) = v;
                S.at(j, i) = -v;
            }
        return S;
    };
    for (std::size_t m : {std::size_t(4), std::size_t(6)}) {
        LieAlgebra ambient("ambient", int(m));
        bool ok = true;
        int done = 0;
        while (done < 10) {
            QMatrix S = random_skew(m);
            if (pfaffian(S) == 0) continue;
            ok = ok && berezin_check(S, ambient).pass;
            ++done;
        }
        rep.add_check("berezin_" + std::to_string(m) + "x" + std::to_string(m), ok, int(m));
    }
    {
        QMatrix S2(2, 2);
        S2.at(0, 1) = 2;
        S2.at(1, 0) = -2;
        QMatrix S4(4, 4);
        S4.at(0, 1) = 2;
        S4.at(1, 0) = -2;
        S4.at(2, 3) = Rational(1, 2);
        S4.at(3, 2) = Rational(-1, 2);
        rep.add_check("di_2dim", di_check(S2, 6).pass, 6);
        rep.add_check("di_4dim", di_check(S4, 6).pass, 6);
    }
    {
        std::vector<Rational> mu1(alg.n, 0), mu2(alg.n, 0);
        mu1[alg.n - 1] = 1;
        mu2[0] = 1;
        if (alg.n > 1) mu2[1] = 1;
        int N = std::min(deg, 6);
        rep.add_check("tau_symbol_dir1", tau_symbol_check(alg, mu1, N).pass, N);
        rep.add_check("tau_symbol_dir2", tau_symbol_check(alg, mu2, N).pass, N);
    }
}

int run_verify(const std::string& algspec, const std::string& suite, int deg,
               const std::string& json_path) {
    LieAlgebra alg = load_algebra(algspec);
    if (deg <= 0) deg = default_degree(alg);
    Report rep("verify --suite " + suite, alg.name);
    rep.set("degree", deg);
    if (suite == "core")
        suite_core(rep, alg, deg);
    else if (suite == "duflo")
        suite_duflo(rep, alg, deg);
    else if (suite == "cartan")
        suite_cartan(rep, alg, deg);
    else if (suite == "sphere")
        suite_sphere(rep, alg, deg);
    else if (suite == "clifford")
        suite_clifford(rep, alg, deg);
    else
        throw std::runtime_error("unknown suite: " + suite);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << rep.dump();
    } else {
        std::cout << rep.dump();
    }
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic toolkit for equivariant algebra computations"};
    app.require_subcommand(1);

    std::string algspec, expr_text, suite = "core", space = "ext", json_path;
    int deg = 0, order = 0;

    auto* validate = app.add_subcommand("validate", "validate structure constants");
    validate->add_option("algebra", algspec, "catalog name or JSON file")->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--alg", algspec)->required();
    verify->add_option("--suite", suite, "core|duflo|cartan|sphere|clifford");
    verify->add_option("--deg", deg);
    verify->add_option("--json", json_path, "write the JSON report to this file");

    auto* duflo = app.add_subcommand("duflo", "apply the symmetrization-with-correction map");
    duflo->add_option("--alg", algspec)->required();
    duflo->add_option("--expr", expr_text)->required();
    duflo->add_option("--order", order);

    auto* quantize = app.add_subcommand("quantize", "quantize a Weil-algebra element");
    quantize->add_option("--alg", algspec)->required();
    quantize->add_option("--expr", expr_text)->required();
    quantize->add_option("--order", order);

    auto* coh = app.add_subcommand("cohomology", "exact Betti numbers");
    coh->add_option("--alg", algspec)->required();
    coh->add_option("--space", space, "ext|cl|weil|sphere");
    coh->add_option("--deg", deg);

    auto* casimir = app.add_subcommand("casimir", "image of the quadratic Casimir");
    casimir->add_option("--alg", algspec)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) {
            LieAlgebra alg = load_algebra(algspec);
            std::cout << "ok: " << alg.name << " dim " << alg.n << " f.f "
                      << rat_str(alg.f_dot_f()) << "\n";
            return 0;
        }
        if (*verify) return run_verify(algspec, suite, deg, json_path);
        if (*duflo) {
            LieAlgebra alg = load_algebra(algspec);
            DufloContext ctx = make_duflo_context(alg, order > 0 ? order : default_degree(alg) + 4);
            GradedElement p = parse_expr(expr_text, Tag::SYM, alg);
            std::cout << duflo_map(ctx, p).str() << "\n";
            return 0;
        }
        if (*quantize) {
            LieAlgebra alg = load_algebra(algspec);
            DufloContext ctx = make_duflo_context(alg, order > 0 ? order : default_degree(alg) + 4);
            GradedElement w = parse_expr(expr_text, Tag::W, alg);
            std::cout << weilkit::quantize(ctx, w).str() << "\n";
            return 0;
        }
        if (*coh) {
            LieAlgebra alg = load_algebra(algspec);
            if (deg <= 0) deg = default_degree(alg);
            std::vector<int> betti;
            if (space == "ext")
                betti = homology(ComplexKind::EXT_koszul, alg, std::min(deg, alg.n));
            else if (space == "cl")
                betti = homology(ComplexKind::CL_adgamma, alg, 0);
            else if (space == "weil")
                betti = homology(ComplexKind::W_full, alg, deg);
            else if (space == "sphere") {
                if (alg.n != 3 || alg.f_dot_f() != 6)
                    throw std::runtime_error(
                        "sphere cohomology requires the 3-dimensional rotation algebra");
                SphereGDA sph;
                sph.n_bound = deg;
                betti = equivariant_cohomology(sph, alg, deg);
            } else
                throw std::runtime_error("unknown space: " + space);
            for (std::size_t k = 0; k < betti.size(); ++k)
                std::cout << "H^" << k << " = " << betti[k] << "\n";
            return 0;
        }
        if (*casimir) {
            LieAlgebra alg = load_algebra(algspec);
            DufloContext ctx = make_duflo_context(alg, 4);
            std::cout << duflo_map(ctx, sym_casimir(alg)).str() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
