#pragma once
#include "rational.hpp"
#include <map>
#include <vector>
#include <string>
#include <sstream>

namespace weilkit {

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Exponent vectors are ordered lexicographically, giving deterministic
// iteration and rendering.
class Poly {
public:
    using Expo = std::vector<int>;
    int nvars = 0;
    std::map<Expo, Rational> terms;

    Poly() = default;
    explicit Poly(int nv) : nvars(nv) {}

    static Poly constant(int nv, const Rational& c) {
        Poly p(nv);
        if (c != 0) p.terms[Expo(nv, 0)] = c;
        return p;
    }
    static Poly var(int nv, int i, const Rational& c = 1) {
        Poly p(nv);
        Expo e(nv, 0);
        e[i] = 1;
        if (c != 0) p.terms[e] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const Expo& e, const Rational& c) {
        if (c == 0) return;
        auto it = terms.find(e);
        if (it == terms.end()) terms.emplace(e, c);
        else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [e, c] : o.terms) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.nvars);
        for (auto& [ea, ca] : a.terms)
            for (auto& [eb, cb] : b.terms) {
                Expo e(ea);
                for (int i = 0; i < r.nvars; ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend Poly operator*(const Poly& a, const Rational& c) {
        Poly r(a.nvars);
        if (c == 0) return r;
        for (auto& [e, co] : a.terms) r.terms[e] = co * c;
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms == b.terms; }

    int total_degree() const {
        int d = 0;
        for (auto& [e, c] : terms) {
            int s = 0;
            for (int x : e) s += x;
            if (s > d) d = s;
        }
        return d;
    }

    // Drops every term of total degree > deg.
    Poly truncated(int deg) const {
        Poly r(nvars);
        for (auto& [e, c] : terms) {
            int s = 0;
            for (int x : e) s += x;
            if (s <= deg) r.terms[e] = c;
        }
        return r;
    }

    Poly diff(int var) const {
        Poly r(nvars);
        for (auto& [e, c] : terms) {
            if (e[var] == 0) continue;
            Expo e2(e);
            e2[var] -= 1;
            r.add_term(e2, c * e[var]);
        }
        return r;
    }

    Rational coeff(const Expo& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? Rational(0) : it->second;
    }

    std::string str(const std::string& varname = "m") const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << rat_str(c);
            for (int i = 0; i < nvars; ++i) {
                if (e[i] == 0) continue;
                os << "*" << varname << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }
};

} // namespace weilkit
