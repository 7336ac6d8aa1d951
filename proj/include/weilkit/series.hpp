#pragma once
#include "rational.hpp"
#include <vector>
#include <stdexcept>
#include <string>

namespace weilkit {

// Exact univariate power series truncated at a fixed order N: arithmetic is
// closed modulo s^{N+1} and never extends precision silently.
class TruncSeries {
public:
    int order = 0;
    std::vector<Rational> c; // c[k] = coefficient of s^k, size order+1

    TruncSeries() : c(1, Rational(0)) {}
    explicit TruncSeries(int N) : order(N), c(N + 1, Rational(0)) {}
    TruncSeries(int N, std::vector<Rational> coeffs) : order(N), c(std::move(coeffs)) {
        c.resize(N + 1, Rational(0));
    }

    static TruncSeries constant(int N, const Rational& a) {
        TruncSeries s(N);
        s.c[0] = a;
        return s;
    }
    static TruncSeries variable(int N) {
        TruncSeries s(N);
        if (N >= 1) s.c[1] = 1;
        return s;
    }

    bool is_zero() const {
        for (auto& x : c)
            if (x != 0) return false;
        return true;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.order, b.order));
        for (int k = 0; k <= r.order; ++k) r.c[k] = a.c[k] + b.c[k];
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.order, b.order));
        for (int k = 0; k <= r.order; ++k) r.c[k] = a.c[k] - b.c[k];
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        TruncSeries r(std::min(a.order, b.order));
        for (int i = 0; i <= r.order; ++i)
            for (int j = 0; i + j <= r.order; ++j)
                if (j <= b.order) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& a, const Rational& x) {
        TruncSeries r = a;
        for (auto& v : r.c) v *= x;
        return r;
    }
    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        if (a.order != b.order) return false;
        return a.c == b.c;
    }

    // 1/this; requires an invertible constant term.
    TruncSeries inverse() const {
        if (c[0] == 0) throw std::domain_error("TruncSeries::inverse: zero constant term");
        TruncSeries r(order);
        r.c[0] = Rational(1) / c[0];
        for (int k = 1; k <= order; ++k) {
            Rational s(0);
            for (int j = 1; j <= k; ++j) s += c[j] * r.c[k - j];
            r.c[k] = -s / c[0];
        }
        return r;
    }

    // Multiplies by s^k (k may be negative; dropping requires divisibility).
    TruncSeries shift(int k) const {
        TruncSeries r(order);
        if (k >= 0) {
            for (int i = 0; i + k <= order; ++i) r.c[i + k] = c[i];
        } else {
            for (int i = 0; i < -k; ++i)
                if (c[i] != 0) throw std::domain_error("TruncSeries::shift: not divisible");
            for (int i = -k; i <= order; ++i) r.c[i + k] = c[i];
        }
        return r;
    }

    // Term-by-term antiderivative with zero constant term.
    TruncSeries integrate() const {
        TruncSeries r(order);
        for (int k = 0; k < order; ++k) r.c[k + 1] = c[k] / (k + 1);
        return r;
    }
};

inline Rational factorial_q(int k) {
    Rational r(1);
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

// Named scalar series used throughout: all coefficients exact at s = 0.
//   exp        : e^s
//   cosh       : cosh(s)
//   ratio_sinh : sinh(s)/s
//   log_g      : ln g(s) with g(s) = (1 - e^{-s})/s
//   f_dyn      : 1/s - (1/2) coth(s/2)   (analytic at 0, odd)
inline TruncSeries taylor_coeffs(const std::string& fn, int N) {
    TruncSeries r(N);
    if (fn == "exp") {
        for (int k = 0; k <= N; ++k) r.c[k] = Rational(1) / factorial_q(k);
    } else if (fn == "cosh") {
        for (int k = 0; k <= N; k += 2) r.c[k] = Rational(1) / factorial_q(k);
    } else if (fn == "ratio_sinh") {
        for (int k = 0; k <= N; k += 2) r.c[k] = Rational(1) / factorial_q(k + 1);
    } else if (fn == "log_g") {
        // g(s) = sum_k (-1)^k s^k/(k+1)!;  ln g = integral of g'/g.
        TruncSeries g(N);
        for (int k = 0; k <= N; ++k) {
            g.c[k] = Rational(1) / factorial_q(k + 1);
            if (k % 2) g.c[k] = -g.c[k];
        }
        TruncSeries gp(N);
        for (int k = 0; k < N; ++k) gp.c[k] = g.c[k + 1] * (k + 1);
        r = (gp * g.inverse()).integrate();
    } else if (fn == "f_dyn") {
        // With x = s/2: f(s) = (1/s)(A - B)/A, A = sinh(x)/x, B = cosh(x).
        // Work in the s variable: A(s) = sum (s/2)^{2k}/(2k+1)!, etc.
        TruncSeries A(N + 2), B(N + 2);
        Rational pow2(1);
        for (int k = 0; k <= N + 2; ++k) {
            if (k % 2 == 0) {
                A.c[k] = Rational(1) / (factorial_q(k + 1) * pow2);
                B.c[k] = Rational(1) / (factorial_q(k) * pow2);
            }
            pow2 *= 2;
        }
        TruncSeries num = A - B; // starts at s^2
        TruncSeries q = (num * A.inverse()).shift(-1);
        r = TruncSeries(N);
        for (int k = 0; k <= N; ++k) r.c[k] = q.c[k];
    } else {
        throw std::invalid_argument("taylor_coeffs: unknown function id '" + fn + "'");
    }
    return r;
}

} // namespace weilkit
