#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "field.hpp"

namespace gsca {

/// Dense row-major matrix over a Field. The Field is passed into every
/// operation rather than stored, keeping values plain data.
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

    Scalar& at(size_t r, size_t c) { return a[r * cols + c]; }
    const Scalar& at(size_t r, size_t c) const { return a[r * cols + c]; }

    /// Reshape to r x c and zero all entries, reusing storage.
    void reset(size_t r, size_t c) {
        rows = r;
        cols = c;
        a.assign(r * c, Scalar{});
    }

    void add_row(const Vec& row) {
        rows += 1;
        a.insert(a.end(), row.begin(), row.end());
    }

    Vec row(size_t r) const { return Vec(a.begin() + r * cols, a.begin() + (r + 1) * cols); }
};

inline Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

/// In-place reduced row echelon form with the fixed pivot policy: columns
/// scanned left to right, first nonzero row below the frontier becomes the
/// pivot, pivots scaled to 1, eliminated above and below. Returns the pivot
/// columns (rank = their count). Deterministic for fixed input.
inline std::vector<size_t> rref(const Field& F, Mat& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t sel = r;
        while (sel < m.rows && F.is_zero(m.at(sel, c))) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (size_t j = c; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        Scalar s = F.inv(m.at(r, c));
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), s);
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || F.is_zero(m.at(i, c))) continue;
            Scalar f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t rank(const Field& F, Mat m) { return rref(F, m).size(); }

/// Basis of the right null space {x : m x = 0}, one row per free column in
/// ascending column order (the canonical rref-derived basis).
inline Mat null_space(const Field& F, Mat m) {
    std::vector<size_t> pivots = rref(F, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    Mat basis(0, m.cols);
    for (size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vec x(m.cols, F.zero());
        x[fc] = F.one();
        for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = F.neg(m.at(i, fc));
        basis.add_row(x);
    }
    return basis;
}

/// One solution of m x = b (free variables set to zero under the fixed pivot
/// policy), or nullopt if inconsistent.
inline std::optional<Vec> solve(const Field& F, const Mat& m, const Vec& b) {
    Mat aug(m.rows, m.cols + 1);
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    std::vector<size_t> pivots = rref(F, aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    Vec x(m.cols, F.zero());
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols);
    return x;
}

/// Coefficients expressing target in the row span of rows, or nullopt.
inline std::optional<Vec> in_row_span(const Field& F, const Mat& rows, const Vec& target) {
    return solve(F, transpose(rows), target);
}

} // namespace gsca
