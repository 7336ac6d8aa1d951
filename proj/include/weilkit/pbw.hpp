#pragma once
#include "element.hpp"
#include <algorithm>

namespace weilkit {

// u_mul is mul() on Tag::ENV; these are the remaining S(g) <-> U(g) bridges.

inline GradedElement u_mul(const GradedElement& a, const GradedElement& b) {
    if (a.tag != Tag::ENV) throw TagMismatch("u_mul expects ENV elements");
    return mul(a, b);
}

// Birkhoff-Witt symmetrization: a SYM monomial maps to the exact average of
// the normal-ordered products over all distinct orderings of its letters.
inline GradedElement sym_map(const GradedElement& p) {
    if (p.tag != Tag::SYM) throw TagMismatch("sym_map expects a SYM element");
    const LieAlgebra& alg = *p.alg;
    int n = alg.n;
    GradedElement r(Tag::ENV, p.alg);
    for (auto& [k, c] : p.terms) {
        std::vector<int> word;
        for (int i = 0; i < n; ++i) word.insert(word.end(), k.sym[i], i);
        std::sort(word.begin(), word.end());
        // Average over distinct permutations; each appears once in
        // next_permutation order, with equal multinomial weight.
        std::map<std::vector<int>, Rational> acc;
        long long count = 0;
        do {
            std::map<std::vector<int>, Rational> cur{{std::vector<int>(n, 0), Rational(1)}};
            for (int g : word) {
                std::map<std::vector<int>, Rational> nxt;
                for (auto& [s, cc] : cur) detail::pbw_append(alg, s, g, cc, nxt);
                cur = std::move(nxt);
            }
            for (auto& [s, cc] : cur) acc[s] += cc;
            ++count;
        } while (std::next_permutation(word.begin(), word.end()));
        Rational w = c / Rational(count);
        for (auto& [s, cc] : acc) r.add_term({s, 0u}, cc * w);
    }
    return r;
}

// The associated-graded image: forgets normal ordering (ENV -> SYM) or takes
// the top filtration piece of an NCW element (-> W).
inline GradedElement gr(const GradedElement& w) {
    Tag t = w.tag == Tag::ENV ? Tag::SYM : (w.tag == Tag::NCW ? Tag::W : w.tag);
    GradedElement r(t, w.alg);
    int top = w.w_degree();
    for (auto& [k, c] : w.terms)
        if (GradedElement::w_degree(k) == top) r.terms[k] = c;
    return r;
}

inline bool is_central(const GradedElement& w) {
    if (w.tag != Tag::ENV) throw TagMismatch("is_central expects an ENV element");
    for (int a = 0; a < w.alg->n; ++a) {
        GradedElement ua = GradedElement::even_gen(Tag::ENV, w.alg, a);
        if (!(mul(w, ua) - mul(ua, w)).is_zero()) return false;
    }
    return true;
}

} // namespace weilkit
