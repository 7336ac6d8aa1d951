#pragma once
#include "gda.hpp"
#include "duflo.hpp"

namespace weilkit {

enum class Model { COMM, NC };

// The non-commutative Cartan differential carries a cubic contraction term
// f_abc iota_a iota_b iota_c / 24. d_G^2 = 0 holds for either sign on the
// invariants tried, so the sign is pinned instead by agreement with the full
// tensor-complex differential on basic elements (weil_vs_cartan_check, see
// tests): +1 agrees, -1 fails.
inline constexpr int kNCCubicSign = +1;

// Element of a Cartan complex: polynomial (COMM) or PBW (NC) exponent vectors
// on the left leg, B-elements on the right.
template <class B>
struct CartanElem {
    Model model = Model::COMM;
    const LieAlgebra* alg = nullptr;
    const B* b = nullptr;
    std::map<std::vector<int>, typename B::Elem> terms;

    bool is_zero() const {
        for (auto& [k, x] : terms)
            if (!x.is_zero()) return false;
        return true;
    }
    void add_term(const std::vector<int>& k, const typename B::Elem& x) {
        if (x.is_zero()) return;
        auto it = terms.find(k);
        if (it == terms.end()) terms.emplace(k, x);
        else {
            it->second = it->second + x;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    CartanElem& operator+=(const CartanElem& o) {
        for (auto& [k, x] : o.terms) add_term(k, x);
        return *this;
    }
    friend CartanElem operator+(CartanElem a, const CartanElem& b2) { return a += b2; }
    friend CartanElem operator-(CartanElem a, const CartanElem& b2) {
        for (auto& [k, x] : b2.terms) a.add_term(k, x * Rational(-1));
        return a;
    }
    friend CartanElem operator*(const CartanElem& a, const Rational& c) {
        CartanElem r{a.model, a.alg, a.b, {}};
        if (c == 0) return r;
        for (auto& [k, x] : a.terms) r.add_term(k, x * c);
        return r;
    }
    bool operator==(const CartanElem& o) const { return (*this - o).is_zero(); }
    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        const char* g = model == Model::COMM ? "v" : "u";
        for (auto& [k, x] : terms) {
            if (!s.empty()) s += "  +  ";
            std::string left;
            for (std::size_t i = 0; i < k.size(); ++i)
                for (int r = 0; r < k[i]; ++r) left += std::string(g) + std::to_string(i + 1);
            if (left.empty()) left = "1";
            s += left + " (x) [" + x.str() + "]";
        }
        return s;
    }
};

namespace cartan_detail {

// left-leg monomial as a graded element (SYM for COMM, ENV for NC)
inline GradedElement left_mono(Model model, const LieAlgebra& alg, const std::vector<int>& k,
                               const Rational& c = 1) {
    GradedElement x(model == Model::COMM ? Tag::SYM : Tag::ENV, &alg);
    x.terms[{k, 0u}] = c;
    return x;
}

} // namespace cartan_detail

// Total Lie action L_a on Sym (x) B resp. U(g) (x) B. The B leg carries the
// instance's orientation sign kappa so that the two legs realize the same
// bracket convention (equivariance of d_G fixes this pairing).
template <class B>
inline CartanElem<B> lie_total(int a, const CartanElem<B>& xi) {
    const LieAlgebra& alg = *xi.alg;
    CartanElem<B> r{xi.model, xi.alg, xi.b, {}};
    Rational kap(xi.b->kappa());
    for (auto& [k, x] : xi.terms) {
        // left leg
        GradedElement lm = cartan_detail::left_mono(xi.model, alg, k);
        GradedElement la = lie_deriv(a, lm);
        for (auto& [k2, c2] : la.terms) r.add_term(k2.sym, x * c2);
        // right leg
        r.add_term(k, xi.b->lie(a, x) * kap);
    }
    return r;
}

template <class B>
inline bool is_invariant(const CartanElem<B>& xi) {
    for (int a = 0; a < xi.alg->n; ++a)
        if (!lie_total(a, xi).is_zero()) return false;
    return true;
}

template <class B>
inline CartanElem<B> cartan_d(const CartanElem<B>& xi, bool check_invariance = true,
                              int cubic_sign = kNCCubicSign) {
    const LieAlgebra& alg = *xi.alg;
    const B& b = *xi.b;
    if (check_invariance && !is_invariant(xi))
        throw NotInvariant("cartan_d input is not invariant");
    CartanElem<B> r{xi.model, xi.alg, xi.b, {}};
    int n = alg.n;
    for (auto& [k, x] : xi.terms) {
        r.add_term(k, b.d(x)); // 1 (x) d
        if (xi.model == Model::COMM) {
            for (int a = 0; a < n; ++a) {
                typename B::Elem ix = b.iota(a, x);
                if (ix.is_zero()) continue;
                auto k2 = k;
                ++k2[a];
                r.add_term(k2, ix * Rational(-1));
            }
        } else {
            GradedElement um = cartan_detail::left_mono(Model::NC, alg, k);
            for (int a = 0; a < n; ++a) {
                typename B::Elem ix = b.iota(a, x);
                if (ix.is_zero()) continue;
                GradedElement ua(Tag::ENV, &alg);
                std::vector<int> ek(n, 0);
                ek[a] = 1;
                ua.terms[{ek, 0u}] = 1;
                GradedElement both = u_mul(ua, um) + u_mul(um, ua);
                for (auto& [k2, c2] : both.terms) r.add_term(k2.sym, ix * (c2 * Rational(-1, 2)));
            }
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb)
                    for (int c = 0; c < n; ++c) {
                        const Rational& fv = alg.f(a, bb, c);
                        if (fv == 0) continue;
                        typename B::Elem ix = b.iota(a, b.iota(bb, b.iota(c, x)));
                        if (ix.is_zero()) continue;
                        r.add_term(k, ix * (fv * Rational(cubic_sign, 24)));
                    }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Linear algebra over B coordinates.
// ---------------------------------------------------------------------------

namespace cartan_detail {

template <class Elem>
using KeyOf = typename std::remove_cvref_t<decltype(std::declval<Elem>().terms)>::key_type;

// Flattens an element into totally ordered coordinates, recursing through
// nested coefficient containers (CartanElem/TensorElem carry B::Elem values).
template <class Elem>
inline auto coords(const Elem& x) {
    using M = std::remove_cvref_t<decltype(x.terms)>;
    using K = typename M::key_type;
    using V = typename M::mapped_type;
    if constexpr (std::is_same_v<V, Rational>) {
        std::map<K, Rational> out;
        for (auto& [k, c] : x.terms)
            if (c != 0) out[k] = c;
        return out;
    } else {
        using Inner = std::remove_cvref_t<decltype(coords(std::declval<V>()))>;
        std::map<std::pair<K, typename Inner::key_type>, Rational> out;
        for (auto& [k, e] : x.terms)
            for (auto& [k2, c] : coords(e))
                out[{k, k2}] = c;
        return out;
    }
}

template <class Elem>
using CoordKey = typename std::remove_cvref_t<decltype(coords(std::declval<Elem>()))>::key_type;

// Reduce a spanning list to an independent sublist (pivot columns of the
// coordinate matrix, deterministic order).
template <class Elem>
inline std::vector<Elem> independent_subset(const std::vector<Elem>& span) {
    std::map<CoordKey<Elem>, std::size_t> keyidx;
    std::vector<std::map<CoordKey<Elem>, Rational>> co;
    for (auto& x : span) {
        co.push_back(coords(x));
        for (auto& [k, c] : co.back()) keyidx.emplace(k, 0);
    }
    std::size_t i = 0;
    for (auto& [k, v] : keyidx) v = i++;
    QMatrix M(keyidx.size(), span.size());
    for (std::size_t j = 0; j < span.size(); ++j)
        for (auto& [k, c] : co[j]) M.at(keyidx.at(k), j) = c;
    std::vector<Elem> r;
    for (std::size_t pc : M.rref()) r.push_back(span[pc]);
    return r;
}

// Kernel of a family of linear maps given by images of basis elements.
template <class Elem, class Img>
inline std::vector<Elem> joint_kernel(const std::vector<Elem>& basis,
                                      const std::vector<std::vector<Img>>& images) {
    if (basis.empty()) return {};
    std::map<CoordKey<Img>, std::size_t> keyidx;
    std::vector<std::vector<std::map<CoordKey<Img>, Rational>>> co(images.size());
    for (std::size_t f = 0; f < images.size(); ++f)
        for (auto& y : images[f]) {
            co[f].push_back(coords(y));
            for (auto& [k, c] : co[f].back()) keyidx.emplace(k, 0);
        }
    std::size_t i = 0;
    for (auto& [k, v] : keyidx) v = i++;
    QMatrix M(std::max<std::size_t>(1, keyidx.size() * images.size()), basis.size());
    for (std::size_t f = 0; f < images.size(); ++f)
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (auto& [k, c] : co[f][j]) M.at(f * keyidx.size() + keyidx.at(k), j) = c;
    std::vector<Elem> r;
    for (auto& v : kernel_basis(M)) {
        Elem x = basis[0] * Rational(0);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (v[j] != 0) x += basis[j] * v[j];
        r.push_back(x);
    }
    return r;
}

template <class Elem>
inline std::size_t rank_of(const std::vector<Elem>& vecs) {
    std::map<CoordKey<Elem>, std::size_t> keyidx;
    std::vector<std::map<CoordKey<Elem>, Rational>> co;
    for (auto& x : vecs) {
        co.push_back(coords(x));
        for (auto& [k, c] : co.back()) keyidx.emplace(k, 0);
    }
    std::size_t i = 0;
    for (auto& [k, v] : keyidx) v = i++;
    if (keyidx.empty()) return 0;
    QMatrix M(keyidx.size(), vecs.size());
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (auto& [k, c] : co[j]) M.at(keyidx.at(k), j) = c;
    return rank(M);
}

} // namespace cartan_detail

// Exact basis of the invariants of B itself per degree 0..D.
template <class B>
inline std::vector<std::vector<typename B::Elem>> invariants(const B& b, const LieAlgebra& alg,
                                                             int D) {
    std::vector<std::vector<typename B::Elem>> out;
    for (int q = 0; q <= D; ++q) {
        auto span = cartan_detail::independent_subset(b.basis(q));
        std::vector<std::vector<typename B::Elem>> images(alg.n);
        for (int a = 0; a < alg.n; ++a)
            for (auto& x : span) images[a].push_back(b.lie(a, x));
        out.push_back(cartan_detail::joint_kernel(span, images));
    }
    return out;
}

// Invariant basis of the COMM Cartan complex per total degree 0..D
// (degree = 2 * polynomial degree + B-degree).
template <class B>
inline std::vector<std::vector<CartanElem<B>>> cartan_invariant_basis(const B& b,
                                                                      const LieAlgebra& alg,
                                                                      int D) {
    int n = alg.n;
    std::vector<std::vector<CartanElem<B>>> out(D + 1);
    // sym multi-indices by degree
    std::vector<std::vector<std::vector<int>>> alphas(D / 2 + 1);
    std::function<void(int, std::vector<int>&, int)> gen = [&](int i, std::vector<int>& e,
                                                               int used) {
        if (i == n) {
            alphas[used].push_back(e);
            return;
        }
        for (int k = 0; used + k <= D / 2; ++k) {
            e[i] = k;
            gen(i + 1, e, used + k);
            e[i] = 0;
        }
    };
    std::vector<int> e0(n, 0);
    gen(0, e0, 0);
    for (int k = 0; k <= D; ++k) {
        std::vector<CartanElem<B>> span;
        for (int s = 0; 2 * s <= k; ++s) {
            int q = k - 2 * s;
            auto bb = cartan_detail::independent_subset(b.basis(q));
            for (auto& alpha : alphas[s])
                for (auto& x : bb) {
                    CartanElem<B> xi{Model::COMM, &alg, &b, {}};
                    xi.add_term(alpha, x);
                    span.push_back(xi);
                }
        }
        if (span.empty()) continue;
        std::vector<std::vector<CartanElem<B>>> images(n);
        for (int a = 0; a < n; ++a)
            for (auto& xi : span) images[a].push_back(lie_total(a, xi));
        out[k] = cartan_detail::joint_kernel(span, images);
    }
    return out;
}

// Betti numbers of (C_G(B), d_G) for degrees 0..D; the value at degree D is
// a truncation-boundary estimate (flagged by the caller contract).
template <class B>
inline std::vector<int> equivariant_cohomology(const B& b, const LieAlgebra& alg, int D) {
    auto inv = cartan_invariant_basis(b, alg, D + 1);
    std::vector<std::size_t> ranks(D + 2, 0);
    for (int k = 0; k <= D; ++k) {
        std::vector<CartanElem<B>> imgs;
        for (auto& xi : inv[k]) imgs.push_back(cartan_d(xi, false));
        ranks[k] = cartan_detail::rank_of(imgs);
    }
    std::vector<int> betti(D + 1);
    for (int k = 0; k <= D; ++k)
        betti[k] = int(inv[k].size() - ranks[k] - (k ? ranks[k - 1] : 0));
    return betti;
}

// ---------------------------------------------------------------------------
// The odot ring on the NC model: multiplication composed with
// exp(-1/2 sum_a iota_a^(1) iota_a^(2)) acting on the B legs.
// ---------------------------------------------------------------------------

template <class B>
inline CartanElem<B> odot(const CartanElem<B>& xi1, const CartanElem<B>& xi2,
                          bool check_invariance = true) {
    if (xi1.model != Model::NC || xi2.model != Model::NC)
        throw TagMismatch("odot expects NC Cartan elements");
    if (check_invariance && (!is_invariant(xi1) || !is_invariant(xi2)))
        throw NotInvariant("odot operand is not invariant");
    const LieAlgebra& alg = *xi1.alg;
    const B& b = *xi1.b;
    CartanElem<B> r{Model::NC, xi1.alg, xi1.b, {}};
    int n = alg.n;
    for (auto& [k1, x1] : xi1.terms)
        for (auto& [k2, x2] : xi2.terms) {
            // pair list: coefficient * (first, second); iterate the quadratic
            // contraction operator, splitting the first factor by parity.
            struct P { typename B::Elem x, y; Rational c; };
            std::vector<P> cur{{x1, x2, Rational(1)}}, acc = cur;
            for (int step = 1; step <= n + 1 && !cur.empty(); ++step) {
                std::vector<P> nxt;
                for (auto& p : cur) {
                    auto parts = xi1.b->split_parity(p.x);
                    for (int par = 0; par < 2; ++par) {
                        if (parts[par].is_zero()) continue;
                        int sg = par ? -1 : 1;
                        for (int a = 0; a < n; ++a) {
                            typename B::Elem ix = b.iota(a, parts[par]);
                            typename B::Elem iy = b.iota(a, p.y);
                            if (ix.is_zero() || iy.is_zero()) continue;
                            nxt.push_back({ix, iy, p.c * Rational(-sg, 2) / step});
                        }
                    }
                }
                cur = std::move(nxt);
                for (auto& p : cur) acc.push_back(p);
            }
            // multiply the U legs and the processed B legs
            GradedElement um = u_mul(cartan_detail::left_mono(Model::NC, alg, k1),
                                     cartan_detail::left_mono(Model::NC, alg, k2));
            for (auto& p : acc) {
                typename B::Elem prod = b.product(p.x, p.y) * p.c;
                if (prod.is_zero()) continue;
                for (auto& [ku, cu] : um.terms) r.add_term(ku.sym, prod * cu);
            }
        }
    return r;
}

// ---------------------------------------------------------------------------
// Quantization on the Cartan model: Duf o exp(-1/2 T_ab (1 (x) iota_a iota_b))
// with T_ab's mu-monomials acting as d/dv on the polynomial leg.
// ---------------------------------------------------------------------------

template <class B>
inline CartanElem<B> q_cartan(const DufloContext& ctx, const CartanElem<B>& xi,
                              bool check_invariance = true) {
    if (xi.model != Model::COMM) throw TagMismatch("q_cartan expects a COMM element");
    if (check_invariance && !is_invariant(xi)) throw NotInvariant("q_cartan input not invariant");
    const LieAlgebra& alg = *xi.alg;
    const B& b = *xi.b;
    int n = alg.n;
    for (auto& [k, x] : xi.terms) {
        int deg = 0;
        for (int v : k) deg += v;
        if (deg > ctx.order) throw TruncationTooLow("q_cartan: context order too low");
    }
    // apply mu^gamma as (d/dv)^gamma to a sym exponent vector
    auto deriv = [&](const std::vector<int>& alpha, const std::vector<int>& gamma,
                     Rational& coef) -> std::vector<int> {
        std::vector<int> res = alpha;
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < gamma[i]; ++r) {
                if (res[i] == 0) {
                    coef = 0;
                    return res;
                }
                coef *= res[i];
                --res[i];
            }
        return res;
    };
    CartanElem<B> work = xi, acc = xi;
    for (int step = 1; step <= n / 2 + 1 && !work.is_zero(); ++step) {
        CartanElem<B> nxt{Model::COMM, xi.alg, xi.b, {}};
        for (auto& [k, x] : work.terms)
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb) {
                    const Poly& T = ctx.bundle.T[a][bb];
                    if (T.terms.empty()) continue;
                    typename B::Elem ix = b.iota(a, b.iota(bb, x));
                    if (ix.is_zero()) continue;
                    for (auto& [gamma, tc] : T.terms) {
                        Rational coef = tc * Rational(-1, 2) / step;
                        auto k2 = deriv(k, gamma, coef);
                        if (coef != 0) nxt.add_term(k2, ix * coef);
                    }
                }
        work = nxt;
        acc += nxt;
    }
    // Duf on the polynomial leg
    CartanElem<B> r{Model::NC, xi.alg, xi.b, {}};
    for (auto& [k, x] : acc.terms) {
        for (auto& [gamma, jc] : ctx.bundle.Jhalf.terms) {
            Rational coef = jc;
            auto k2 = deriv(k, gamma, coef);
            if (coef == 0) continue;
            GradedElement mono(Tag::SYM, &alg);
            mono.terms[{k2, 0u}] = coef;
            for (auto& [ku, cu] : sym_map(mono).terms) r.add_term(ku.sym, x * cu);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Twisted differential d + 1/24 f_abc iota_a iota_b iota_c on B^G.
// ---------------------------------------------------------------------------

template <class B>
inline CheckResult twisted_d_check(const B& b, const LieAlgebra& alg, int D) {
    int n = alg.n;
    auto tw = [&](const typename B::Elem& x) {
        typename B::Elem r = b.d(x);
        for (int a = 0; a < n; ++a)
            for (int bb = 0; bb < n; ++bb)
                for (int c = 0; c < n; ++c) {
                    const Rational& fv = alg.f(a, bb, c);
                    if (fv == 0) continue;
                    r = r + b.iota(a, b.iota(bb, b.iota(c, x))) * (fv * Rational(1, 24));
                }
        return r;
    };
    auto inv = invariants(b, alg, D);
    for (auto& level : inv)
        for (auto& x : level)
            if (!tw(tw(x)).is_zero()) return {false, "twisted differential does not square to zero"};
    return {};
}

// ---------------------------------------------------------------------------
// Tensor complex W (x) B (or NCW (x) B) and the Weil <-> Cartan comparison.
// ---------------------------------------------------------------------------

template <class B>
struct TensorElem {
    Model model = Model::COMM; // COMM: W leg; NC: NCW leg
    const LieAlgebra* alg = nullptr;
    const B* b = nullptr;
    std::map<MonoKey, typename B::Elem> terms;

    bool is_zero() const {
        for (auto& [k, x] : terms)
            if (!x.is_zero()) return false;
        return true;
    }
    void add_term(const MonoKey& k, const typename B::Elem& x) {
        if (x.is_zero()) return;
        auto it = terms.find(k);
        if (it == terms.end()) terms.emplace(k, x);
        else {
            it->second = it->second + x;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    TensorElem& operator+=(const TensorElem& o) {
        for (auto& [k, x] : o.terms) add_term(k, x);
        return *this;
    }
    friend TensorElem operator+(TensorElem a, const TensorElem& b2) { return a += b2; }
    friend TensorElem operator*(const TensorElem& a, const Rational& c) {
        TensorElem r{a.model, a.alg, a.b, {}};
        if (c == 0) return r;
        for (auto& [k, x] : a.terms) r.add_term(k, x * c);
        return r;
    }
};

namespace tensor_detail {

template <class B, class Fn>
inline TensorElem<B> on_left(const TensorElem<B>& z, Fn&& f) {
    TensorElem<B> r{z.model, z.alg, z.b, {}};
    Tag tag = z.model == Model::COMM ? Tag::W : Tag::NCW;
    for (auto& [k, x] : z.terms) {
        GradedElement w(tag, z.alg);
        w.terms[k] = 1;
        GradedElement img = f(w);
        for (auto& [k2, c2] : img.terms) r.add_term(k2, x * c2);
    }
    return r;
}

} // namespace tensor_detail

template <class B>
inline TensorElem<B> tensor_iota_total(int a, const TensorElem<B>& z) {
    TensorElem<B> r =
        tensor_detail::on_left(z, [&](const GradedElement& w) { return contract(a, w); });
    for (auto& [k, x] : z.terms) {
        int sg = GradedElement::parity(k) ? -1 : 1;
        r.add_term(k, z.b->iota(a, x) * Rational(sg));
    }
    return r;
}

template <class B>
inline TensorElem<B> tensor_lie_total(int a, const TensorElem<B>& z) {
    TensorElem<B> r =
        tensor_detail::on_left(z, [&](const GradedElement& w) { return lie_deriv(a, w); });
    Rational kap(z.b->kappa());
    for (auto& [k, x] : z.terms) r.add_term(k, z.b->lie(a, x) * kap);
    return r;
}

template <class B>
inline TensorElem<B> tensor_d_total(const TensorElem<B>& z) {
    TensorElem<B> r = tensor_detail::on_left(
        z, [&](const GradedElement& w) { return z.model == Model::COMM ? weil_d(w) : nc_weil_d(w); });
    for (auto& [k, x] : z.terms) {
        int sg = GradedElement::parity(k) ? -1 : 1;
        r.add_term(k, z.b->d(x) * Rational(sg));
    }
    return r;
}

// Kalkman map phi = exp(y^a (x) iota_a) (COMM) or exp(x_a (x) iota_a) (NC);
// sign = -1 gives the inverse in the COMM case.
template <class B>
inline TensorElem<B> kalkman_apply(const TensorElem<B>& z, int sign) {
    const LieAlgebra& alg = *z.alg;
    int n = alg.n;
    Tag tag = z.model == Model::COMM ? Tag::W : Tag::NCW;
    auto once = [&](const TensorElem<B>& w) {
        TensorElem<B> r{z.model, z.alg, z.b, {}};
        for (auto& [k, x] : w.terms) {
            int sg = GradedElement::parity(k) ? -1 : 1;
            GradedElement wk(tag, &alg);
            wk.terms[k] = 1;
            for (int a = 0; a < n; ++a) {
                typename B::Elem ix = z.b->iota(a, x);
                if (ix.is_zero()) continue;
                // left-multiply the left leg by its odd generator (wedge for
                // the Weil model, Clifford product for the non-commutative one)
                GradedElement ga = GradedElement::odd_gen(tag, &alg, a);
                GradedElement gw = mul(ga, wk);
                for (auto& [k2, c2] : gw.terms)
                    r.add_term(k2, ix * (c2 * Rational(sign * sg)));
            }
        }
        return r;
    };
    TensorElem<B> acc = z, cur = z;
    for (int k = 1; k <= n + 1; ++k) {
        cur = once(cur) * (Rational(1) / k);
        if (cur.is_zero()) break;
        acc += cur;
    }
    return acc;
}

// Ad_phi iota_a^total = iota_a (x) 1 on basis elements up to the given degree.
template <class B>
inline CheckResult kalkman_check(const B& b, const LieAlgebra& alg, int D) {
    for (auto& k : basis_monomials(alg, D))
        for (int q = 0; q + GradedElement::w_degree(k) <= D; ++q)
            for (auto& x : b.basis(q)) {
                TensorElem<B> z{Model::COMM, &alg, &b, {}};
                z.add_term(k, x);
                for (int a = 0; a < alg.n; ++a) {
                    TensorElem<B> lhs = kalkman_apply(tensor_iota_total(a, kalkman_apply(z, -1)), +1);
                    TensorElem<B> rhs = tensor_detail::on_left(
                        z, [&](const GradedElement& w) { return contract(a, w); });
                    if (!(lhs + rhs * Rational(-1)).is_zero())
                        return {false, "Kalkman conjugation failed"};
                }
            }
    return {};
}

// Basic subcomplex of (Weil (x) B): joint kernel of all total iota_a and L_a.
template <class B>
inline std::vector<TensorElem<B>> basic_subcomplex(Model model, const B& b, const LieAlgebra& alg,
                                                   int D) {
    std::vector<TensorElem<B>> span;
    for (auto& k : basis_monomials(alg, D))
        for (int q = 0; q + GradedElement::w_degree(k) <= D; ++q)
            for (auto& x : cartan_detail::independent_subset(b.basis(q))) {
                TensorElem<B> z{model, &alg, &b, {}};
                z.add_term(k, x);
                span.push_back(z);
            }
    if (span.empty()) return {};
    std::vector<std::vector<TensorElem<B>>> images;
    for (int a = 0; a < alg.n; ++a) {
        std::vector<TensorElem<B>> im1, im2;
        for (auto& z : span) {
            im1.push_back(tensor_iota_total(a, z));
            im2.push_back(tensor_lie_total(a, z));
        }
        images.push_back(std::move(im1));
        images.push_back(std::move(im2));
    }
    return cartan_detail::joint_kernel(span, images);
}

// Horizontal projection on the left leg followed by the Cartan-model cast.
template <class B>
inline CartanElem<B> tensor_to_cartan(const TensorElem<B>& z) {
    CartanElem<B> r{z.model, z.alg, z.b, {}};
    for (auto& [k, x] : z.terms)
        if (k.ext == 0) r.add_term(k.sym, x);
    return r;
}

// d_G o (P_hor (x) 1) = (P_hor (x) 1) o d_total on basic elements.
template <class B>
inline CheckResult weil_vs_cartan_check(Model model, const B& b, const LieAlgebra& alg, int D,
                                        int cubic_sign = kNCCubicSign) {
    for (auto& z : basic_subcomplex(model, b, alg, D)) {
        CartanElem<B> lhs = cartan_d(tensor_to_cartan(z), false, cubic_sign);
        CartanElem<B> rhs = tensor_to_cartan(tensor_d_total(z));
        if (!(lhs == rhs)) return {false, "Weil/Cartan intertwining failed"};
    }
    return {};
}

// ---------------------------------------------------------------------------
// The complete sphere example for su(2).
// ---------------------------------------------------------------------------

struct SphereSuiteReport {
    CheckResult closed;          // (i)   d_G omega = 0
    CheckResult classical_square;// (ii)  omega^2 = lambda + d_G(f v n dn)
    CheckResult quantized_form;  // (iii) q_cartan(omega) as quoted
    Rational double_contraction; // (iv)  expected 1/4
    CheckResult duflo_constant;  // (v)   Q(omega) odot Q(omega) - d_G(f u n dn) = Duf(lambda)
    GradedElement duflo_of_casimir; // the resolved Duf(v.v) in U(g)
    bool pass() const {
        return closed.pass && classical_square.pass && quantized_form.pass &&
               double_contraction == Rational(1, 4) && duflo_constant.pass;
    }
};

inline SphereSuiteReport sphere_suite(const DufloContext& ctx, const SphereGDA& sph) {
    const LieAlgebra& alg = *ctx.alg;
    SphereSuiteReport rep{{}, {}, {}, 0, {}, GradedElement(Tag::ENV, &alg)};
    int n = alg.n;
    auto nvar = [&](int a) {
        std::array<int, 3> e{0, 0, 0};
        ++e[a];
        return sphere_normalize({{e, 0u, Rational(1)}});
    };
    SphereElem sigma;
    {
        std::vector<std::tuple<std::array<int, 3>, std::uint32_t, Rational>> raw;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    if (alg.f(a, b, c) != 0) {
                        std::array<int, 3> e{0, 0, 0};
                        ++e[a];
                        std::uint32_t dn = (1u << b) | (1u << c);
                        if (popcount(dn) == 2) {
                            int sg = detail::concat_sign(1u << b, 1u << c);
                            if (sg) raw.push_back({e, dn, alg.f(a, b, c) * Rational(sg, 2)});
                        }
                    }
        sigma = sphere_normalize(raw);
    }
    // omega = sigma + n_a v^a
    CartanElem<SphereGDA> omega{Model::COMM, &alg, &sph, {}};
    omega.add_term(std::vector<int>(n, 0), sigma);
    for (int a = 0; a < n; ++a) {
        std::vector<int> k(n, 0);
        k[a] = 1;
        omega.add_term(k, nvar(a));
    }
    // (i) invariance and closedness
    if (!is_invariant(omega)) {
        rep.closed = {false, "omega is not invariant"};
        return rep;
    }
    {
        auto dwo = cartan_d(omega);
        rep.closed = dwo.is_zero() ? CheckResult{} : CheckResult{false, "d_G omega = " + dwo.str()};
    }
    // psi = f_abc v^a (x) n_b dn_c
    CartanElem<SphereGDA> psi{Model::COMM, &alg, &sph, {}};
    for (int a = 0; a < n; ++a) {
        std::vector<int> k(n, 0);
        k[a] = 1;
        std::vector<std::tuple<std::array<int, 3>, std::uint32_t, Rational>> raw;
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                if (alg.f(a, b, c) != 0) {
                    std::array<int, 3> e{0, 0, 0};
                    ++e[b];
                    raw.push_back({e, 1u << c, alg.f(a, b, c)});
                }
        psi.add_term(k, sphere_normalize(raw));
    }
    // (ii) omega^2 = lambda + d_G psi  (COMM product: multiply both legs)
    {
        CartanElem<SphereGDA> sq{Model::COMM, &alg, &sph, {}};
        for (auto& [k1, x1] : omega.terms)
            for (auto& [k2, x2] : omega.terms) {
                std::vector<int> k(n);
                for (int i = 0; i < n; ++i) k[i] = k1[i] + k2[i];
                sq.add_term(k, sph.product(x1, x2));
            }
        CartanElem<SphereGDA> lambda{Model::COMM, &alg, &sph, {}};
        for (int a = 0; a < n; ++a) {
            std::vector<int> k(n, 0);
            k[a] = 2;
            lambda.add_term(k, sph.unit());
        }
        CartanElem<SphereGDA> rhs = lambda + cartan_d(psi, false);
        rep.classical_square = (sq == rhs)
                                   ? CheckResult{}
                                   : CheckResult{false, "omega^2 residual: " + (sq - rhs).str()};
    }
    // (iii) q_cartan(omega) = sigma + n_a u^a
    CartanElem<SphereGDA> qomega = q_cartan(ctx, omega);
    {
        CartanElem<SphereGDA> expect{Model::NC, &alg, &sph, {}};
        expect.add_term(std::vector<int>(n, 0), sigma);
        for (int a = 0; a < n; ++a) {
            std::vector<int> k(n, 0);
            k[a] = 1;
            expect.add_term(k, nvar(a));
        }
        rep.quantized_form = (qomega == expect)
                                 ? CheckResult{}
                                 : CheckResult{false, "Q(omega) = " + qomega.str()};
    }
    // (iv) (1/8) sum_ab (iota_a iota_b Q(omega))^2
    {
        // iota_a iota_b annihilates the 0-form coefficients, so only the
        // scalar-U-leg area-form term of Q(omega) contributes.
        SphereElem total;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                SphereElem x;
                for (auto& [k, e] : qomega.terms) {
                    SphereElem c2 = sph.iota(a, sph.iota(b, e));
                    if (c2.is_zero()) continue;
                    bool scalar_leg = true;
                    for (int i : k)
                        if (i) scalar_leg = false;
                    if (!scalar_leg) {
                        rep.double_contraction = 0;
                        return rep;
                    }
                    x += c2;
                }
                total += sph.product(x, x);
            }
        SphereElem quarter = total * Rational(1, 8);
        SKey unitk{{0, 0, 0}, 0};
        auto it = quarter.terms.find(unitk);
        rep.double_contraction =
            (quarter.terms.size() == 1 && it != quarter.terms.end()) ? it->second : Rational(0);
    }
    // (v) Q(omega) odot Q(omega) - d_G(f_abc u^a (x) n_b dn_c) = Duf(lambda) (x) 1
    {
        CartanElem<SphereGDA> sq = odot(qomega, qomega);
        CartanElem<SphereGDA> chi{Model::NC, &alg, &sph, psi.terms};
        CartanElem<SphereGDA> lhs = sq - cartan_d(chi, false);
        // Duf(v.v)
        GradedElement vv(Tag::SYM, &alg);
        for (int a = 0; a < n; ++a) {
            std::vector<int> e(n, 0);
            e[a] = 2;
            vv.add_term({e, 0u}, 1);
        }
        GradedElement duf = duflo_map(ctx, vv);
        rep.duflo_of_casimir = duf;
        CartanElem<SphereGDA> rhs{Model::NC, &alg, &sph, {}};
        for (auto& [k, c] : duf.terms) rhs.add_term(k.sym, sph.unit() * c);
        rep.duflo_constant = (lhs == rhs)
                                 ? CheckResult{}
                                 : CheckResult{false, "residual: " + (lhs - rhs).str()};
    }
    return rep;
}

} // namespace weilkit
