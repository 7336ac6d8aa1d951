#pragma once
#include "rational.hpp"
#include "lie.hpp"
#include <map>
#include <vector>
#include <cstdint>
#include <bit>
#include <sstream>
#include <functional>

namespace weilkit {

// Which product applies to a GradedElement.
enum class Tag { EXT, CL, SYM, ENV, W, NCW };

struct TagMismatch : std::runtime_error {
    explicit TagMismatch(const std::string& s) : std::runtime_error("TagMismatch: " + s) {}
};

// Basis monomial: exponent vector for the even letters (v or u, by tag) and a
// bitset for the odd letters (y or x), kept canonically sorted; all signs are
// derived from inversion counts.
struct MonoKey {
    std::vector<int> sym;
    std::uint32_t ext = 0;
    auto operator<=>(const MonoKey&) const = default;
};

inline int popcount(std::uint32_t x) { return std::popcount(x); }

// Sign for left-multiplying a sorted exterior monomial by letter j
// (moving y_j right past the letters < j): (-1)^{#bits below j}.
// Returns 0 if j already present.
inline int ins_sign(std::uint32_t bits, int j) {
    if (bits >> j & 1u) return 0;
    return popcount(bits & ((1u << j) - 1)) % 2 ? -1 : 1;
}
// Sign for extracting letter j to the front. Returns 0 if absent.
inline int rm_sign(std::uint32_t bits, int j) {
    if (!(bits >> j & 1u)) return 0;
    return popcount(bits & ((1u << j) - 1)) % 2 ? -1 : 1;
}

class GradedElement {
public:
    Tag tag = Tag::W;
    const LieAlgebra* alg = nullptr;
    std::map<MonoKey, Rational> terms;

    GradedElement() = default;
    GradedElement(Tag t, const LieAlgebra* a) : tag(t), alg(a) {}

    int dim() const { return alg ? alg->n : 0; }
    bool is_zero() const { return terms.empty(); }

    static GradedElement unit(Tag t, const LieAlgebra* a) {
        GradedElement e(t, a);
        e.terms[{std::vector<int>(a->n, 0), 0u}] = 1;
        return e;
    }
    // Even generator (v_i or u_i).
    static GradedElement even_gen(Tag t, const LieAlgebra* a, int i) {
        GradedElement e(t, a);
        MonoKey k{std::vector<int>(a->n, 0), 0u};
        k.sym[i] = 1;
        e.terms[k] = 1;
        return e;
    }
    // Odd generator (y_i or x_i).
    static GradedElement odd_gen(Tag t, const LieAlgebra* a, int i) {
        GradedElement e(t, a);
        e.terms[{std::vector<int>(a->n, 0), 1u << i}] = 1;
        return e;
    }

    void add_term(const MonoKey& k, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(k);
        if (it == terms.end()) terms.emplace(k, c);
        else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    GradedElement& operator+=(const GradedElement& o) {
        for (auto& [k, c] : o.terms) add_term(k, c);
        return *this;
    }
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) {
        for (auto& [k, c] : b.terms) a.add_term(k, -c);
        return a;
    }
    friend GradedElement operator*(const GradedElement& a, const Rational& c) {
        GradedElement r(a.tag, a.alg);
        if (c == 0) return r;
        for (auto& [k, co] : a.terms) r.terms[k] = co * c;
        return r;
    }
    friend bool operator==(const GradedElement& a, const GradedElement& b) {
        return a.tag == b.tag && a.terms == b.terms;
    }

    static int sym_total(const MonoKey& k) {
        int s = 0;
        for (int x : k.sym) s += x;
        return s;
    }
    // W-degree (grading on the commutative side, filtration degree on NCW).
    static int w_degree(const MonoKey& k) { return 2 * sym_total(k) + popcount(k.ext); }
    int w_degree() const {
        int d = 0;
        for (auto& [k, c] : terms) d = std::max(d, w_degree(k));
        return d;
    }
    // Parity of a term = popcount(ext) mod 2.
    static int parity(const MonoKey& k) { return popcount(k.ext) % 2; }

    std::string str() const {
        if (terms.empty()) return "0";
        const char* even_name = (tag == Tag::ENV || tag == Tag::NCW) ? "u" : "v";
        const char* odd_name = (tag == Tag::CL || tag == Tag::NCW || tag == Tag::ENV) ? "x" : "y";
        std::ostringstream os;
        bool first = true;
        // Reverse key order prints leading generators first, e.g. "u1 - x2*x3".
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            auto& [k, c] = *it;
            Rational co = c;
            if (first) {
                if (co < 0) { os << "-"; co = -co; }
            } else {
                os << (co < 0 ? " - " : " + ");
                if (co < 0) co = -co;
            }
            first = false;
            bool printed = false;
            if (co != 1 || (sym_total(k) == 0 && k.ext == 0)) {
                os << rat_str(co);
                printed = true;
            }
            for (std::size_t i = 0; i < k.sym.size(); ++i) {
                if (!k.sym[i]) continue;
                if (printed) os << "*";
                os << even_name << (i + 1);
                if (k.sym[i] > 1) os << "^" << k.sym[i];
                printed = true;
            }
            for (std::size_t i = 0; i < k.sym.size(); ++i) {
                if (!(k.ext >> i & 1u)) continue;
                if (printed) os << "*";
                os << odd_name << (i + 1);
                printed = true;
            }
        }
        return os.str();
    }
};

namespace detail {

// Sign of concatenating two sorted exterior monomials a*b (each letter of b
// moves left past the letters of a above it). Returns 0 on overlap.
inline int concat_sign(std::uint32_t ea, std::uint32_t eb) {
    if (ea & eb) return 0;
    int s = 1;
    std::uint32_t rest = eb;
    while (rest) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        if (popcount(ea & ~((2u << j) - 1)) % 2) s = -s;
    }
    return s;
}

// Exterior part of the Clifford product in the symbol picture (Kostant):
// wedge after exp(-1/2 sum_a iota_a(1) iota_a(2)).  Emits (ext, coeff) pairs.
inline void cl_ext_mul(int n, std::uint32_t ea, std::uint32_t eb, const Rational& c,
                       const std::function<void(std::uint32_t, const Rational&)>& emit) {
    struct Pair { std::uint32_t a, b; Rational c; };
    std::vector<Pair> cur{{ea, eb, c}};
    for (int i = 0; i < n; ++i) {
        std::size_t sz = cur.size();
        for (std::size_t t = 0; t < sz; ++t) {
            auto [xa, xb, cc] = cur[t];
            int sb = rm_sign(xb, i);
            if (!sb) continue;
            int sa = rm_sign(xa, i);
            if (!sa) continue;
            int koszul = popcount(xa) % 2 ? -1 : 1; // iota on the second leg first
            cur.push_back({xa & ~(1u << i), xb & ~(1u << i),
                           cc * Rational(-sa * sb * koszul, 2)});
        }
    }
    for (auto& p : cur) {
        int s = concat_sign(p.a, p.b);
        if (s) emit(p.a | p.b, s > 0 ? p.c : -p.c);
    }
}

// PBW normal ordering: appends generator g on the right of the normal word s,
// recursing through the bracket terms (which may create larger letters).
inline void pbw_append(const LieAlgebra& alg, const std::vector<int>& s, int g, const Rational& c,
                       std::map<std::vector<int>, Rational>& out) {
    int n = alg.n;
    int big = -1;
    for (int b = n - 1; b > g; --b)
        if (s[b] > 0) { big = b; break; }
    if (big < 0) {
        std::vector<int> s2(s);
        s2[g] += 1;
        auto it = out.find(s2);
        if (it == out.end()) out.emplace(std::move(s2), c);
        else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
        return;
    }
    std::vector<int> s1(s);
    s1[big] -= 1;
    std::map<std::vector<int>, Rational> tmp;
    pbw_append(alg, s1, g, c, tmp);
    for (auto& [ss, cc] : tmp) {
        bool clean = true;
        for (int b = big + 1; b < n; ++b)
            if (ss[b] > 0) { clean = false; break; }
        if (clean) {
            std::vector<int> s2(ss);
            s2[big] += 1;
            auto it = out.find(s2);
            if (it == out.end()) out.emplace(std::move(s2), cc);
            else {
                it->second += cc;
                if (it->second == 0) out.erase(it);
            }
        } else {
            pbw_append(alg, ss, big, cc, out);
        }
    }
    for (int k = 0; k < n; ++k) {
        const Rational& fk = alg.f(big, g, k);
        if (fk != 0) pbw_append(alg, s1, k, c * fk, out);
    }
}

// Normal-ordered product of two PBW exponent words.
inline void pbw_word_mul(const LieAlgebra& alg, const std::vector<int>& ua, const std::vector<int>& ub,
                         const Rational& c, std::map<std::vector<int>, Rational>& out) {
    std::map<std::vector<int>, Rational> cur{{ua, c}};
    for (int i = 0; i < alg.n; ++i)
        for (int rep = 0; rep < ub[i]; ++rep) {
            std::map<std::vector<int>, Rational> nxt;
            for (auto& [s, cc] : cur) pbw_append(alg, s, i, cc, nxt);
            cur = std::move(nxt);
        }
    for (auto& [s, cc] : cur) {
        auto it = out.find(s);
        if (it == out.end()) out.emplace(s, cc);
        else {
            it->second += cc;
            if (it->second == 0) out.erase(it);
        }
    }
}

} // namespace detail

// The product of the tagged algebra:
//   EXT / W : super-commutative (polynomial x wedge)
//   SYM     : polynomial
//   CL      : Kostant's Clifford product in the symbol picture
//   ENV     : PBW normal-ordered product
//   NCW     : PBW on the even leg x Clifford on the odd leg
inline GradedElement mul(const GradedElement& A, const GradedElement& B) {
    if (A.tag != B.tag || A.alg != B.alg) throw TagMismatch("mul: incompatible elements");
    const LieAlgebra& alg = *A.alg;
    int n = alg.n;
    GradedElement R(A.tag, A.alg);
    bool cl = (A.tag == Tag::CL || A.tag == Tag::NCW);
    bool env = (A.tag == Tag::ENV || A.tag == Tag::NCW);
    for (auto& [ka, ca] : A.terms)
        for (auto& [kb, cb] : B.terms) {
            if ((A.tag == Tag::SYM || A.tag == Tag::ENV) && (ka.ext || kb.ext))
                throw TagMismatch("mul: exterior letters in a purely even algebra");
            // even legs
            std::map<std::vector<int>, Rational> evens;
            if (env) {
                detail::pbw_word_mul(alg, ka.sym, kb.sym, ca * cb, evens);
            } else {
                std::vector<int> s(ka.sym);
                for (int i = 0; i < n; ++i) s[i] += kb.sym[i];
                evens.emplace(std::move(s), ca * cb);
            }
            // odd legs
            if (cl) {
                detail::cl_ext_mul(n, ka.ext, kb.ext, Rational(1),
                                   [&](std::uint32_t e, const Rational& ce) {
                                       for (auto& [s, cs] : evens) R.add_term({s, e}, cs * ce);
                                   });
            } else {
                int sg = detail::concat_sign(ka.ext, kb.ext);
                if (sg)
                    for (auto& [s, cs] : evens)
                        R.add_term({s, ka.ext | kb.ext}, sg > 0 ? cs : -cs);
            }
        }
    return R;
}

// iota_a: odd derivation, kills even letters, iota_a y^b = delta_a^b.
// On CL/NCW it is the same symbol-picture contraction.
inline GradedElement contract(int a, const GradedElement& w) {
    GradedElement r(w.tag, w.alg);
    for (auto& [k, c] : w.terms) {
        int sg = rm_sign(k.ext, a);
        if (!sg) continue;
        r.add_term({k.sym, k.ext & ~(1u << a)}, sg > 0 ? c : -c);
    }
    return r;
}

// L_a as the even derivation with L_a(gen_i) = sum_j f_{aij} gen_j on every
// generator picture. On PBW legs (ENV/NCW) it is realized as ad(u_a), which
// agrees with the letterwise action after normal ordering.
inline GradedElement lie_deriv(int a, const GradedElement& w) {
    const LieAlgebra& alg = *w.alg;
    int n = alg.n;
    GradedElement r(w.tag, w.alg);
    bool env = (w.tag == Tag::ENV || w.tag == Tag::NCW);
    for (auto& [k, c] : w.terms) {
        if (env) {
            // [u_a, u-word] by PBW multiplication.
            std::vector<int> ua(n, 0);
            ua[a] = 1;
            std::map<std::vector<int>, Rational> m;
            detail::pbw_word_mul(alg, ua, k.sym, c, m);
            detail::pbw_word_mul(alg, k.sym, ua, -c, m);
            for (auto& [s, cc] : m) r.add_term({s, k.ext}, cc);
        } else {
            for (int i = 0; i < n; ++i) {
                if (!k.sym[i]) continue;
                for (int j = 0; j < n; ++j) {
                    const Rational& fj = alg.f(a, i, j);
                    if (fj == 0) continue;
                    MonoKey k2 = k;
                    k2.sym[i] -= 1;
                    k2.sym[j] += 1;
                    r.add_term(k2, c * k.sym[i] * fj);
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            if (!(k.ext >> i & 1u)) continue;
            int s1 = rm_sign(k.ext, i);
            std::uint32_t e1 = k.ext & ~(1u << i);
            for (int j = 0; j < n; ++j) {
                const Rational& fj = alg.f(a, i, j);
                if (fj == 0) continue;
                int s2 = ins_sign(e1, j);
                if (!s2) continue;
                r.add_term({k.sym, e1 | (1u << j)}, c * fj * (s1 * s2));
            }
        }
    }
    return r;
}

// Koszul differential on the exterior algebra: d y^a = -1/2 f_{ajk} y^j y^k.
inline GradedElement koszul_d(const GradedElement& w) {
    const LieAlgebra& alg = *w.alg;
    int n = alg.n;
    GradedElement r(w.tag, w.alg);
    for (auto& [k, c] : w.terms) {
        for (int i = 0; i < n; ++i) {
            if (!(k.ext >> i & 1u)) continue;
            int pref = rm_sign(k.ext, i);
            std::uint32_t e1 = k.ext & ~(1u << i);
            for (int j = 0; j < n; ++j)
                for (int kk = 0; kk < n; ++kk) {
                    const Rational& fj = alg.f(i, j, kk);
                    if (fj == 0) continue;
                    // y_j y_k * rest: insert k then j (left multiplications)
                    int sk = ins_sign(e1, kk);
                    if (!sk) continue;
                    std::uint32_t ek = e1 | (1u << kk);
                    int sj = ins_sign(ek, j);
                    if (!sj) continue;
                    r.add_term({k.sym, ek | (1u << j)},
                               c * fj * Rational(-pref * sk * sj, 2));
                }
    }
    }
    return r;
}

// Composable linear map with parity; the workhorse carrier for operator
// identities checked by op_equal.
struct LinOperator {
    std::function<GradedElement(const GradedElement&)> fn;
    int parity = 0; // 0 even, 1 odd

    GradedElement operator()(const GradedElement& w) const { return fn(w); }
};

inline LinOperator op_compose(const LinOperator& A, const LinOperator& B) {
    return {[A, B](const GradedElement& w) { return A(B(w)); }, (A.parity + B.parity) % 2};
}
inline LinOperator op_sub(const LinOperator& A, const LinOperator& B) {
    return {[A, B](const GradedElement& w) { return A(w) - B(w); },
            A.parity == B.parity ? A.parity : 0};
}
// Super-commutator [A,B] = AB - (-1)^{|A||B|} BA.
inline LinOperator super_comm(const LinOperator& A, const LinOperator& B) {
    int sgn = (A.parity && B.parity) ? -1 : 1;
    return {[A, B, sgn](const GradedElement& w) {
                GradedElement r = A(B(w));
                GradedElement s = B(A(w));
                return sgn > 0 ? r - s : r + s;
            },
            (A.parity + B.parity) % 2};
}

// Deterministic lexicographic enumeration of basis monomials of W-degree <= D.
inline std::vector<MonoKey> basis_monomials(const LieAlgebra& alg, int D, bool with_ext = true) {
    int n = alg.n;
    std::vector<MonoKey> out;
    std::vector<int> sym(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == n) {
            if (with_ext) {
                for (std::uint32_t e = 0; e < (1u << n); ++e)
                    if (popcount(e) <= rem) out.push_back({sym, e});
            } else {
                out.push_back({sym, 0u});
            }
            return;
        }
        for (int k = 0; 2 * k <= rem; ++k) {
            sym[pos] = k;
            rec(pos + 1, rem - 2 * k);
        }
        sym[pos] = 0;
    };
    rec(0, D);
    std::sort(out.begin(), out.end());
    return out;
}

struct OpVerdict {
    bool pass = true;
    MonoKey counterexample;
    GradedElement difference;
};

// Applies A - B to every basis monomial of W-degree <= max_degree in
// deterministic order; reports the first (lowest) counterexample.
inline OpVerdict op_equal(const LinOperator& A, const LinOperator& B, Tag tag,
                          const LieAlgebra& alg, int max_degree) {
    for (auto& k : basis_monomials(alg, max_degree)) {
        if ((tag == Tag::SYM || tag == Tag::ENV) && k.ext) continue;
        if ((tag == Tag::EXT || tag == Tag::CL) && GradedElement::sym_total(k) != 0) continue;
        GradedElement w(tag, &alg);
        w.terms[k] = 1;
        GradedElement d = A(w) - B(w);
        if (!d.is_zero()) return {false, k, d};
    }
    return {};
}

inline LinOperator zero_op() {
    return {[](const GradedElement& w) { return GradedElement(w.tag, w.alg); }, 0};
}

} // namespace weilkit
