#pragma once
#include "rational.hpp"
#include "poly.hpp"
#include "series.hpp"
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>
#include <cassert>

namespace weilkit {

struct JacobiViolation : std::runtime_error {
    explicit JacobiViolation(const std::string& s) : std::runtime_error("JacobiViolation: " + s) {}
};
struct NotTotallyAntisymmetric : std::runtime_error {
    explicit NotTotallyAntisymmetric(const std::string& s)
        : std::runtime_error("NotTotallyAntisymmetric: " + s) {}
};
struct BadIndex : std::runtime_error {
    explicit BadIndex(const std::string& s) : std::runtime_error("BadIndex: " + s) {}
};

// Compact Lie algebra in an orthonormal basis: totally antisymmetric rational
// structure constants f[a][b][c] (0-based internally) with [e_a,e_b] = f_abc e_c.
class LieAlgebra {
public:
    std::string name;
    int n = 0;
    std::vector<Rational> fdata; // n^3, f(a,b,c)

    LieAlgebra() = default;
    LieAlgebra(std::string nm, int dim) : name(std::move(nm)), n(dim), fdata(std::size_t(dim) * dim * dim, Rational(0)) {}

    Rational& f(int a, int b, int c) { return fdata[(std::size_t(a) * n + b) * n + c]; }
    const Rational& f(int a, int b, int c) const { return fdata[(std::size_t(a) * n + b) * n + c]; }

    void validate() const {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (f(a, b, c) != -f(b, a, c) || f(a, b, c) != -f(a, c, b))
                        throw NotTotallyAntisymmetric(
                            "f(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
                            std::to_string(c + 1) + ")");
                }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        Rational s(0);
                        for (int r = 0; r < n; ++r)
                            s += f(a, b, r) * f(r, c, d) + f(b, c, r) * f(r, a, d) +
                                 f(c, a, r) * f(r, b, d);
                        if (s != 0)
                            throw JacobiViolation("quadruple (" + std::to_string(a + 1) + "," +
                                                  std::to_string(b + 1) + "," + std::to_string(c + 1) +
                                                  "," + std::to_string(d + 1) + ")");
                    }
    }

    Rational f_dot_f() const {
        Rational s(0);
        for (auto& x : fdata) s += x * x;
        return s;
    }
};

// File format: { "name": str, "dim": n, "f": [[a,b,c,"p/q"], ...] }, 1-based,
// unlisted entries 0, redundant entries must be consistent under total
// antisymmetry. Validates before returning.
inline LieAlgebra load_lie(const nlohmann::json& doc) {
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw BadIndex("missing or non-integer dim");
    int n = doc["dim"].get<int>();
    if (n <= 0) throw BadIndex("dim must be positive");
    LieAlgebra alg(doc.value("name", std::string("unnamed")), n);
    std::vector<bool> set(alg.fdata.size(), false);
    auto place = [&](int a, int b, int c, const Rational& v) {
        std::size_t idx = (std::size_t(a) * n + b) * n + c;
        if (set[idx]) {
            if (alg.fdata[idx] != v)
                throw NotTotallyAntisymmetric("inconsistent duplicate f(" + std::to_string(a + 1) +
                                              "," + std::to_string(b + 1) + "," +
                                              std::to_string(c + 1) + ")");
        } else {
            set[idx] = true;
            alg.fdata[idx] = v;
        }
    };
    if (doc.contains("f")) {
        for (auto& ent : doc["f"]) {
            if (!ent.is_array() || ent.size() != 4) throw BadIndex("f entry must be [a,b,c,value]");
            int a = ent[0].get<int>(), b = ent[1].get<int>(), c = ent[2].get<int>();
            if (a < 1 || a > n || b < 1 || b > n || c < 1 || c > n)
                throw BadIndex("index out of range in f entry");
            Rational v = ent[3].is_string() ? parse_rational(ent[3].get<std::string>())
                                            : Rational(ent[3].get<long long>());
            --a; --b; --c;
            // All six signed images of the entry.
            place(a, b, c, v);
            place(b, a, c, -v);
            place(a, c, b, -v);
            place(c, b, a, -v);
            place(b, c, a, v);
            place(c, a, b, v);
        }
    }
    alg.validate();
    return alg;
}

inline LieAlgebra lie_su2() {
    LieAlgebra alg("su2", 3);
    int eps[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {1, 0, 2, -1}, {2, 1, 0, -1}, {0, 2, 1, -1}};
    for (auto& e : eps) alg.f(e[0], e[1], e[2]) = e[3];
    return alg;
}

inline LieAlgebra direct_sum(const LieAlgebra& A, const LieAlgebra& B, const std::string& name) {
    LieAlgebra alg(name, A.n + B.n);
    for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < A.n; ++b)
            for (int c = 0; c < A.n; ++c) alg.f(a, b, c) = A.f(a, b, c);
    for (int a = 0; a < B.n; ++a)
        for (int b = 0; b < B.n; ++b)
            for (int c = 0; c < B.n; ++c) alg.f(A.n + a, A.n + b, A.n + c) = B.f(a, b, c);
    return alg;
}

// so(5) with basis L_ij = E_ij - E_ji (i<j), orthonormal under -tr/2;
// [L_ij, L_kl] = d_jk L_il - d_ik L_jl - d_jl L_ik + d_il L_jk.
inline LieAlgebra lie_so(int m, const std::string& name) {
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) basis.emplace_back(i, j);
    int n = int(basis.size());
    LieAlgebra alg(name, n);
    auto idx = [&](int i, int j) -> std::pair<int, int> { // (basis index, sign)
        int sgn = 1;
        if (j < i) {
            std::swap(i, j);
            sgn = -1;
        }
        if (i < j)
            for (int k = 0; k < n; ++k)
                if (basis[k] == std::make_pair(i, j)) return {k, sgn};
        return {-1, 0};
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto [i, j] = basis[a];
            auto [k, l] = basis[b];
            // coefficients of the bracket
            int terms[4][3] = {{j == k, i, l}, {-(i == k), j, l}, {-(j == l), i, k}, {i == l, j, k}};
            for (auto& t : terms) {
                if (t[0] == 0 || t[1] == t[2]) continue;
                auto [c, s] = idx(t[1], t[2]);
                if (c >= 0) alg.f(a, b, c) += Rational(t[0] * s);
            }
        }
    return alg;
}

inline LieAlgebra catalog(const std::string& name) {
    if (name == "su2") {
        auto a = lie_su2();
        a.validate();
        return a;
    }
    if (name == "so4") {
        auto a = direct_sum(lie_su2(), lie_su2(), "so4");
        a.validate();
        return a;
    }
    if (name == "so5") {
        auto a = lie_so(5, "so5");
        a.validate();
        return a;
    }
    if (name.rfind("abelian(", 0) == 0 && name.back() == ')') {
        int k = std::stoi(name.substr(8, name.size() - 9));
        if (k <= 0) throw std::invalid_argument("catalog: abelian dimension must be positive");
        return LieAlgebra(name, k);
    }
    throw std::invalid_argument("catalog: unknown algebra '" + name + "'");
}

using PolyMatrix = std::vector<std::vector<Poly>>;

// (ad_mu)_{ab} = coefficient of e_a in [mu, e_b] = sum_c mu_c f_{cba};
// linear in mu and antisymmetric.
inline PolyMatrix ad_matrix(const LieAlgebra& alg) {
    int n = alg.n;
    PolyMatrix M(n, std::vector<Poly>(n, Poly(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (alg.f(c, b, a) != 0) M[a][b] += Poly::var(n, c, alg.f(c, b, a));
    return M;
}

inline PolyMatrix pm_mul(const PolyMatrix& A, const PolyMatrix& B, int maxdeg) {
    int n = int(A.size());
    PolyMatrix C(n, std::vector<Poly>(n, Poly(n)));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (A[i][k].is_zero()) continue;
            for (int j = 0; j < n; ++j)
                C[i][j] += (A[i][k] * B[k][j]).truncated(maxdeg);
        }
    for (auto& row : C)
        for (auto& p : row) p = p.truncated(maxdeg);
    return C;
}

// Dynamical tensor T = f_dyn(ad_mu), lnJ = tr log g(ad_mu), Jhalf = exp(lnJ/2),
// all truncated at total mu-degree <= order.
struct AdSeriesBundle {
    int order = 0;
    PolyMatrix T;
    Poly logJ;
    Poly Jhalf;
};

inline Poly poly_exp_trunc(const Poly& x, int maxdeg) {
    // exp(x) for x with zero constant term, truncated.
    Poly r = Poly::constant(x.nvars, 1), term = r;
    for (int k = 1; k <= maxdeg; ++k) {
        term = (term * x).truncated(maxdeg) * (Rational(1) / k);
        if (term.is_zero()) break;
        r += term;
    }
    return r;
}

inline AdSeriesBundle structure_series(const LieAlgebra& alg, int order) {
    int n = alg.n;
    AdSeriesBundle B;
    B.order = order;
    TruncSeries cf = taylor_coeffs("f_dyn", order);
    TruncSeries cl = taylor_coeffs("log_g", order);
    PolyMatrix M = ad_matrix(alg);
    // tr(ad_mu) must vanish (compactness / total antisymmetry).
    Poly tr0(n);
    for (int i = 0; i < n; ++i) tr0 += M[i][i];
    assert(tr0.is_zero());
    B.T = PolyMatrix(n, std::vector<Poly>(n, Poly(n)));
    B.logJ = Poly(n);
    PolyMatrix P = M;
    for (int k = 1; k <= order; ++k) {
        if (k > 1) P = pm_mul(P, M, order);
        if (cf.c[k] != 0)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) B.T[i][j] += P[i][j] * cf.c[k];
        if (cl.c[k] != 0) {
            Poly tr(n);
            for (int i = 0; i < n; ++i) tr += P[i][i];
            B.logJ += tr * cl.c[k];
        }
    }
    B.Jhalf = poly_exp_trunc(B.logJ * Rational(1, 2), order);
    return B;
}

} // namespace weilkit
