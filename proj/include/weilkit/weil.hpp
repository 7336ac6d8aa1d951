#pragma once
#include "element.hpp"
#include "pbw.hpp"
#include "qmatrix.hpp"
#include <optional>

namespace weilkit {

// Weil differential on W = Sg (x) /\g:
//   d y^a = v^a - 1/2 f_{ajk} y^j y^k,   d v^a = -f_{ajk} y^j v^k.
inline GradedElement weil_d(const GradedElement& w) {
    if (w.tag != Tag::W) throw TagMismatch("weil_d expects a W element");
    const LieAlgebra& alg = *w.alg;
    int n = alg.n;
    GradedElement r(Tag::W, w.alg);
    for (auto& [k, c] : w.terms) {
        for (int i = 0; i < n; ++i) { // v-letters (even: no prefix sign)
            if (!k.sym[i]) continue;
            std::vector<int> s1(k.sym);
            s1[i] -= 1;
            Rational mult = c * k.sym[i];
            for (int j = 0; j < n; ++j)
                for (int kk = 0; kk < n; ++kk) {
                    const Rational& fj = alg.f(i, j, kk);
                    if (fj == 0) continue;
                    int sj = ins_sign(k.ext, j);
                    if (!sj) continue;
                    std::vector<int> s2(s1);
                    s2[kk] += 1;
                    r.add_term({std::move(s2), k.ext | (1u << j)}, -mult * fj * sj);
                }
        }
        for (int i = 0; i < n; ++i) { // y-letters
            if (!(k.ext >> i & 1u)) continue;
            int pref = rm_sign(k.ext, i);
            std::uint32_t e1 = k.ext & ~(1u << i);
            std::vector<int> s2(k.sym);
            s2[i] += 1;
            r.add_term({std::move(s2), e1}, pref > 0 ? c : -c);
            for (int j = 0; j < n; ++j)
                for (int kk = 0; kk < n; ++kk) {
                    const Rational& fj = alg.f(i, j, kk);
                    if (fj == 0) continue;
                    int sk = ins_sign(e1, kk);
                    if (!sk) continue;
                    std::uint32_t ek = e1 | (1u << kk);
                    int sj = ins_sign(ek, j);
                    if (!sj) continue;
                    r.add_term({k.sym, ek | (1u << j)}, c * fj * Rational(-pref * sk * sj, 2));
                }
        }
    }
    return r;
}

// gamma = -(1/6) f_abc x_a x_b x_c (pure wedge symbol: indices distinct).
inline GradedElement gamma_elem(Tag tag, const LieAlgebra& alg) {
    int n = alg.n;
    GradedElement g(tag, &alg);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const Rational& fv = alg.f(a, b, c);
                if (fv == 0) continue;
                std::uint32_t e = 0;
                int sg = 1;
                bool ok = true;
                for (int idx : {a, b, c}) { // right-append: sign counts bits above
                    if (e >> idx & 1u) { ok = false; break; }
                    if (popcount(e & ~((2u << idx) - 1)) % 2) sg = -sg;
                    e |= 1u << idx;
                }
                if (ok) g.add_term({std::vector<int>(n, 0), e}, fv * Rational(-sg, 6));
            }
    return g;
}

// Dirac element D = x_a u_a + gamma in the non-commutative Weil algebra.
inline GradedElement dirac(const LieAlgebra& alg) {
    int n = alg.n;
    GradedElement D = gamma_elem(Tag::NCW, alg);
    for (int a = 0; a < n; ++a) {
        MonoKey k{std::vector<int>(n, 0), 1u << a};
        k.sym[a] = 1;
        D.add_term(k, 1);
    }
    return D;
}

// d = ad(D): super-commutator with the Dirac element, term by term.
inline GradedElement nc_weil_d(const GradedElement& w) {
    if (w.tag != Tag::NCW) throw TagMismatch("nc_weil_d expects an NCW element");
    GradedElement D = dirac(*w.alg);
    GradedElement r(Tag::NCW, w.alg);
    for (auto& [k, c] : w.terms) {
        GradedElement t(Tag::NCW, w.alg);
        t.terms[k] = c;
        int sg = GradedElement::parity(k) ? -1 : 1;
        GradedElement Dt = mul(D, t), tD = mul(t, D);
        r += sg > 0 ? Dt - tD : Dt + tD;
    }
    return r;
}

// Independent closed form of the same differential:
//   d = y_a ^ (L_a on the PBW leg)
//     + [ (u_a^L + u_a^R)/2 - (1/2) f_abc y_b ^ y_c ^ ] iota_a
//     - (1/24) f_abc iota_a iota_b iota_c,
// every y-multiplication exterior in the symbol picture.
inline GradedElement nc_weil_d_closed(const GradedElement& w) {
    if (w.tag != Tag::NCW) throw TagMismatch("nc_weil_d_closed expects an NCW element");
    const LieAlgebra& alg = *w.alg;
    int n = alg.n;
    auto ywedge = [&](int a, const GradedElement& x) {
        GradedElement r(Tag::NCW, x.alg);
        for (auto& [k, c] : x.terms) {
            int sg = ins_sign(k.ext, a);
            if (sg) r.add_term({k.sym, k.ext | (1u << a)}, sg > 0 ? c : -c);
        }
        return r;
    };
    auto lieU = [&](int a, const GradedElement& x) { // ad(u_a) on the PBW leg only
        GradedElement r(Tag::NCW, x.alg);
        std::vector<int> ua(n, 0);
        ua[a] = 1;
        for (auto& [k, c] : x.terms) {
            std::map<std::vector<int>, Rational> m;
            detail::pbw_word_mul(alg, ua, k.sym, c, m);
            detail::pbw_word_mul(alg, k.sym, ua, -c, m);
            for (auto& [s, cc] : m) r.add_term({s, k.ext}, cc);
        }
        return r;
    };
    auto umul_side = [&](int a, const GradedElement& x, bool left) {
        GradedElement r(Tag::NCW, x.alg);
        std::vector<int> ua(n, 0);
        ua[a] = 1;
        for (auto& [k, c] : x.terms) {
            std::map<std::vector<int>, Rational> m;
            if (left) detail::pbw_word_mul(alg, ua, k.sym, c, m);
            else detail::pbw_word_mul(alg, k.sym, ua, c, m);
            for (auto& [s, cc] : m) r.add_term({s, k.ext}, cc);
        }
        return r;
    };
    GradedElement r(Tag::NCW, w.alg);
    for (int a = 0; a < n; ++a) {
        r += ywedge(a, lieU(a, w));
        GradedElement iw = contract(a, w);
        r += (umul_side(a, iw, true) + umul_side(a, iw, false)) * Rational(1, 2);
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const Rational& fv = alg.f(a, b, c);
                if (fv != 0) r += ywedge(b, ywedge(c, iw)) * (fv * Rational(-1, 2));
            }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const Rational& fv = alg.f(a, b, c);
                if (fv != 0)
                    r += contract(a, contract(b, contract(c, w))) * (fv * Rational(-1, 24));
            }
    return r;
}

// Horizontal projection: keeps the terms with empty exterior bitset.
inline GradedElement p_hor(const GradedElement& w) {
    GradedElement r(w.tag, w.alg);
    for (auto& [k, c] : w.terms)
        if (k.ext == 0) r.terms[k] = c;
    return r;
}

// ---- operator dictionary for the distribution shadow: mu_a = d/dv_a ----

inline GradedElement mu_op(int a, const GradedElement& w) {
    GradedElement r(w.tag, w.alg);
    for (auto& [k, c] : w.terms) {
        if (!k.sym[a]) continue;
        MonoKey k2 = k;
        k2.sym[a] -= 1;
        r.add_term(k2, c * k.sym[a]);
    }
    return r;
}
inline GradedElement v_mul(int a, const GradedElement& w) {
    GradedElement r(w.tag, w.alg);
    for (auto& [k, c] : w.terms) {
        MonoKey k2 = k;
        k2.sym[a] += 1;
        r.add_term(k2, c);
    }
    return r;
}
inline GradedElement y_wedge(int a, const GradedElement& w) {
    GradedElement r(w.tag, w.alg);
    for (auto& [k, c] : w.terms) {
        int sg = ins_sign(k.ext, a);
        if (sg) r.add_term({k.sym, k.ext | (1u << a)}, sg > 0 ? c : -c);
    }
    return r;
}

// A = -1/2 f_abc (d/dv_a)(y_b ^ y_c ^); tau0 = exp(A) (finite on each element).
inline GradedElement tau0_generator(const GradedElement& w, int sign) {
    const LieAlgebra& alg = *w.alg;
    int n = alg.n;
    GradedElement r(w.tag, w.alg);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const Rational& fv = alg.f(a, b, c);
                if (fv == 0) continue;
                r += mu_op(a, y_wedge(b, y_wedge(c, w))) * (fv * Rational(-sign, 2));
            }
    return r;
}
inline GradedElement tau0_apply(const GradedElement& w, int sign) {
    GradedElement tot = w, cur = w;
    int k = 1;
    while (!cur.is_zero()) {
        cur = tau0_generator(cur, sign) * (Rational(1) / k);
        tot += cur;
        ++k;
    }
    return tot;
}

struct CheckResult {
    bool pass = true;
    std::string detail;
};

// Lemma-level operator identities for tau0-conjugation on W:
//   Ad(tau0^{-1}) d      = v^a iota_a
//   Ad(tau0^{-1}) iota_a = iota_a - f_abc mu_c y_b
//   L_a                  = -f_abc v_b mu_c  on the Sym sector
inline CheckResult tau0_conj_check(const LieAlgebra& alg, int max_degree) {
    int n = alg.n;
    auto conj = [&](const LinOperator& op) {
        return LinOperator{[op](const GradedElement& w) {
                               return tau0_apply(op(tau0_apply(w, +1)), -1);
                           },
                           op.parity};
    };
    LinOperator d{[](const GradedElement& w) { return weil_d(w); }, 1};
    LinOperator rhs_d{[n](const GradedElement& w) {
                          GradedElement r(w.tag, w.alg);
                          for (int a = 0; a < n; ++a) r += v_mul(a, contract(a, w));
                          return r;
                      },
                      1};
    auto v1 = op_equal(conj(d), rhs_d, Tag::W, alg, max_degree);
    if (!v1.pass) return {false, "Ad(tau0^-1) d != v^a iota_a"};
    for (int a = 0; a < n; ++a) {
        LinOperator ia{[a](const GradedElement& w) { return contract(a, w); }, 1};
        LinOperator rhs{[a, n, &alg](const GradedElement& w) {
                            GradedElement r = contract(a, w);
                            for (int b = 0; b < n; ++b)
                                for (int c = 0; c < n; ++c) {
                                    const Rational& fv = alg.f(a, b, c);
                                    if (fv != 0) r += y_wedge(b, mu_op(c, w)) * (-fv);
                                }
                            return r;
                        },
                        1};
        auto v = op_equal(conj(ia), rhs, Tag::W, alg, max_degree);
        if (!v.pass) return {false, "Ad(tau0^-1) iota_" + std::to_string(a + 1)};
    }
    for (int a = 0; a < n; ++a) {
        LinOperator La{[a](const GradedElement& w) { return lie_deriv(a, w); }, 0};
        LinOperator rhs{[a, n, &alg](const GradedElement& w) {
                            GradedElement r(w.tag, w.alg);
                            for (int b = 0; b < n; ++b)
                                for (int c = 0; c < n; ++c) {
                                    const Rational& fv = alg.f(a, b, c);
                                    if (fv != 0) r += v_mul(b, mu_op(c, w)) * (-fv);
                                }
                            return r;
                        },
                        0};
        for (auto& k : basis_monomials(alg, max_degree, false)) {
            GradedElement w(Tag::W, &alg);
            w.terms[k] = 1;
            if (!(La(w) - rhs(w)).is_zero())
                return {false, "L_a != -f_abc v_b mu_c on Sym sector"};
        }
    }
    return {};
}

} // namespace weilkit
