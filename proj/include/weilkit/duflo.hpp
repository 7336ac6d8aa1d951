#pragma once
#include "weil.hpp"
#include "pbw.hpp"
#include "clifford.hpp"

namespace weilkit {

struct TruncationTooLow : std::runtime_error {
    explicit TruncationTooLow(const std::string& m) : std::runtime_error("TruncationTooLow: " + m) {}
};
struct NotInvariant : std::runtime_error {
    explicit NotInvariant(const std::string& m) : std::runtime_error("NotInvariant: " + m) {}
};

struct DufloContext {
    const LieAlgebra* alg = nullptr;
    int order = 0;
    AdSeriesBundle bundle;
    // optional mutation hook for the sign-convention lock tests
    int t_sign = +1;
};

inline DufloContext make_duflo_context(const LieAlgebra& alg, int order, int t_sign = +1) {
    DufloContext ctx;
    ctx.alg = &alg;
    ctx.order = order;
    ctx.bundle = structure_series(alg, order);
    ctx.t_sign = t_sign;
    if (t_sign != +1)
        for (auto& row : ctx.bundle.T)
            for (auto& p : row) p = p * Rational(t_sign);
    return ctx;
}

// Apply a polynomial in mu as a constant-coefficient operator: each monomial
// mu^alpha acts as the composition (d/dv)^alpha; constants are annihilated by
// every mu factor.
inline GradedElement apply_mu_poly(const Poly& P, const GradedElement& w) {
    GradedElement r(w.tag, w.alg);
    for (auto& [alpha, coef] : P.terms) {
        GradedElement cur = w * coef;
        for (std::size_t a = 0; a < alpha.size() && !cur.is_zero(); ++a)
            for (int rep = 0; rep < alpha[a] && !cur.is_zero(); ++rep) cur = mu_op(int(a), cur);
        r += cur;
    }
    return r;
}

inline GradedElement duflo_map(const DufloContext& ctx, const GradedElement& p) {
    if (p.tag != Tag::SYM) throw TagMismatch("duflo_map expects a SYM element");
    int deg = 0;
    for (auto& [k, c] : p.terms) deg = std::max(deg, GradedElement::sym_total(k));
    if (deg > ctx.order) throw TruncationTooLow("duflo_map: input degree exceeds context order");
    return sym_map(apply_mu_poly(ctx.bundle.Jhalf, p));
}

// exp(-1/2 T_bc(d/dv) iota_b iota_c) applied to a W element; terminates since
// every application removes two exterior legs.
inline GradedElement t_exp_apply(const DufloContext& ctx, const GradedElement& w) {
    int n = ctx.alg->n;
    auto quad = [&](const GradedElement& x) {
        GradedElement r(x.tag, x.alg);
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const Poly& T = ctx.bundle.T[b][c];
                if (T.terms.empty()) continue;
                GradedElement cc = contract(b, contract(c, x));
                if (cc.is_zero()) continue;
                r += apply_mu_poly(T, cc) * Rational(-1, 2);
            }
        return r;
    };
    GradedElement tot = w, cur = w;
    for (int k = 1; k <= n / 2 + 1; ++k) {
        cur = quad(cur) * (Rational(1) / k);
        if (cur.is_zero()) break;
        tot += cur;
    }
    return tot;
}

inline GradedElement quantize(const DufloContext& ctx, const GradedElement& w) {
    if (w.tag != Tag::W) throw TagMismatch("quantize expects a W element");
    if (w.w_degree() > 2 * ctx.order)
        throw TruncationTooLow("quantize: degree exceeds context order");
    GradedElement after_t = apply_mu_poly(ctx.bundle.Jhalf, t_exp_apply(ctx, w));
    // symbol-inverse on the exterior leg is the identity dictionary; symmetrize
    // the polynomial leg monomial by monomial.
    GradedElement r(Tag::NCW, w.alg);
    int n = ctx.alg->n;
    for (auto& [k, c] : after_t.terms) {
        GradedElement mono(Tag::SYM, w.alg);
        mono.terms[{k.sym, 0u}] = c;
        GradedElement env = sym_map(mono);
        for (auto& [ke, ce] : env.terms) r.add_term({ke.sym, k.ext}, ce);
    }
    return r;
}

// Verifies Q d_W = d_NCW Q, Q iota_a = iota_a Q and Q L_a = L_a Q on every
// basis monomial of W-degree <= max_degree; returns the first counterexample.
inline CheckResult chain_check(const DufloContext& ctx, int max_degree) {
    const LieAlgebra& alg = *ctx.alg;
    if (ctx.order < max_degree)
        throw TruncationTooLow("chain_check: order must cover max_degree");
    for (auto& k : basis_monomials(alg, max_degree)) {
        GradedElement w(Tag::W, &alg);
        w.terms[k] = 1;
        GradedElement qw = quantize(ctx, w);
        if (!(quantize(ctx, weil_d(w)) == nc_weil_d(qw)))
            return {false, "d intertwining fails on " + w.str()};
        for (int a = 0; a < alg.n; ++a) {
            if (!(quantize(ctx, contract(a, w)) == contract(a, qw)))
                return {false, "iota intertwining fails on " + w.str()};
            if (!(quantize(ctx, lie_deriv(a, w)) == lie_deriv(a, qw)))
                return {false, "Lie-derivative intertwining fails on " + w.str()};
        }
    }
    return {};
}

// Classical dynamical Yang-Baxter identity for the T series:
//   Cycl_{abc} ( dT_bc/dmu_a + T_ar f_rbs T_sc ) = 1/4 f_abc,
// compared modulo terms of polynomial degree > order-1.
inline CheckResult cdyb_check(const LieAlgebra& alg, int order, int t_sign = +1) {
    if (order < 2) throw std::invalid_argument("cdyb_check: order >= 2 required");
    AdSeriesBundle b = structure_series(alg, order);
    if (t_sign != +1)
        for (auto& row : b.T)
            for (auto& p : row) p = p * Rational(t_sign);
    int n = alg.n;
    auto one_term = [&](int a, int aa, int cc) {
        Poly r = b.T[aa][cc].diff(a);
        for (int rr = 0; rr < n; ++rr)
            for (int s = 0; s < n; ++s)
                if (alg.f(rr, aa, s) != 0)
                    r = r + b.T[a][rr] * b.T[s][cc] * alg.f(rr, aa, s);
        return r;
    };
    for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb)
            for (int c = 0; c < n; ++c) {
                Poly lhs = one_term(a, bb, c) + one_term(bb, c, a) + one_term(c, a, bb);
                Poly rhs = Poly::constant(n, alg.f(a, bb, c) * Rational(1, 4));
                if (!((lhs - rhs).truncated(order - 1).terms.empty()))
                    return {false, "cdyb fails at indices " + std::to_string(a + 1) + "," +
                                       std::to_string(bb + 1) + "," + std::to_string(c + 1)};
            }
    return {};
}

// d(logJ)/dmu_a = -f_abc T_bc, compared modulo degree > order-1.
inline CheckResult dlogj_check(const LieAlgebra& alg, int order) {
    if (order < 2) throw std::invalid_argument("dlogj_check: order >= 2 required");
    AdSeriesBundle bd = structure_series(alg, order);
    int n = alg.n;
    for (int a = 0; a < n; ++a) {
        Poly lhs = bd.logJ.diff(a);
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (alg.f(a, b, c) != 0) lhs = lhs + bd.T[b][c] * alg.f(a, b, c);
        if (!lhs.truncated(order - 1).terms.empty())
            return {false, "dlogJ identity fails at index " + std::to_string(a + 1)};
    }
    return {};
}

inline void require_invariant_sym(const GradedElement& p) {
    for (int a = 0; a < p.alg->n; ++a)
        if (!lie_deriv(a, p).is_zero())
            throw NotInvariant("element is not annihilated by L_" + std::to_string(a + 1));
}

inline CheckResult duflo_ring_check(const DufloContext& ctx, const GradedElement& p,
                                    const GradedElement& q) {
    if (p.tag != Tag::SYM || q.tag != Tag::SYM)
        throw TagMismatch("duflo_ring_check expects SYM elements");
    require_invariant_sym(p);
    require_invariant_sym(q);
    GradedElement lhs = duflo_map(ctx, mul(p, q));
    GradedElement rhs = u_mul(duflo_map(ctx, p), duflo_map(ctx, q));
    if (lhs == rhs) return {};
    return {false, "Duf(pq) != Duf(p)Duf(q): residual " + (lhs - rhs).str()};
}

} // namespace weilkit
