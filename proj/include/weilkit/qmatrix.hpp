#pragma once
#include "rational.hpp"
#include <vector>
#include <cstddef>

namespace weilkit {

// Dense exact rational matrix with deterministic reduced row echelon form
// (first-pivot tie-breaking), so kernel bases are byte-stable across runs.
class QMatrix {
public:
    std::size_t rows = 0, cols = 0;
    std::vector<Rational> a; // row-major

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}

    Rational& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    // Reduced row echelon in place; returns pivot column per pivot row.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t sel = r;
            while (sel < rows && at(sel, c) == 0) ++sel;
            if (sel == rows) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols; ++j) std::swap(at(sel, j), at(r, j));
            Rational inv = Rational(1) / at(r, c);
            for (std::size_t j = c; j < cols; ++j) at(r, j) *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || at(i, c) == 0) continue;
                Rational f = at(i, c);
                for (std::size_t j = c; j < cols; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }
};

inline std::size_t rank(QMatrix M) { return M.rref().size(); }

// Determinant by Gaussian elimination with partial (first nonzero) pivoting.
inline Rational det(QMatrix M) {
    if (M.rows != M.cols) throw std::invalid_argument("det: square matrix required");
    Rational d(1);
    for (std::size_t c = 0; c < M.cols; ++c) {
        std::size_t sel = c;
        while (sel < M.rows && M.at(sel, c) == 0) ++sel;
        if (sel == M.rows) return Rational(0);
        if (sel != c) {
            for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(c, j));
            d = -d;
        }
        d *= M.at(c, c);
        for (std::size_t i = c + 1; i < M.rows; ++i) {
            Rational t = M.at(i, c) / M.at(c, c);
            if (t == 0) continue;
            for (std::size_t j = c; j < M.cols; ++j) M.at(i, j) -= t * M.at(c, j);
        }
    }
    return d;
}

// Deterministic basis of the null space {x : Mx = 0}; free variables in
// increasing column order, each basis vector has a 1 in its free slot.
inline std::vector<std::vector<Rational>> kernel_basis(QMatrix M) {
    auto pivots = M.rref();
    std::vector<bool> is_pivot(M.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t fc = 0; fc < M.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> v(M.cols, Rational(0));
        v[fc] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -M.at(pr, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace weilkit
