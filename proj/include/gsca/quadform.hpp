#pragma once

#include <utility>
#include <vector>

#include "skew.hpp"

namespace gsca {

/// Canonical indexing of unordered pairs (i, j), 0 <= i <= j < n, in
/// lexicographic order: (0,0), (0,1), ..., (0,n-1), (1,1), ...
struct PairBasis {
    static int count(int n) { return n * (n + 1) / 2; }

    static int index(int n, int i, int j) {
        // offset of row i = i*n - i(i-1)/2
        return i * n - i * (i - 1) / 2 + (j - i);
    }

    static std::pair<int, int> unindex(int n, int idx) {
        int i = 0;
        while (idx >= n - i) {
            idx -= n - i;
            ++i;
        }
        return {i, i + idx};
    }
};

/// A quadratic form in S_2 as its canonical coefficient vector c_ij over the
/// normal-order monomials z_i z_j, i <= j. The zero form is representable.
struct QuadForm {
    std::vector<Scalar> c; // size n(n+1)/2

    static QuadForm zero(int n) { return {std::vector<Scalar>(PairBasis::count(n), Scalar{})}; }
};

/// An n x n matrix intended to satisfy M_ij = mu_ij M_ji (checked by
/// is_mu_symmetric / tau). Row-major scalars.
struct MuSymMatrix {
    std::vector<Scalar> m; // n*n
    Scalar& at(int n, int i, int j) { return m[static_cast<size_t>(i) * n + j]; }
    const Scalar& at(int n, int i, int j) const { return m[static_cast<size_t>(i) * n + j]; }

    static MuSymMatrix zero(int n) { return {std::vector<Scalar>(static_cast<size_t>(n) * n, Scalar{})}; }
};

inline bool is_mu_symmetric(const SkewRing& R, const MuSymMatrix& M) {
    const Field& F = R.field();
    int n = R.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(M.at(n, i, j) == F.mul(R.mu().at(i, j), M.at(n, j, i)))) return false;
    return true;
}

/// tau(M) = z^T M z in normal form: c_ii = M_ii and c_ij = 2 M_ij for i < j,
/// using M_ij + mu_ij M_ji = 2 M_ij on mu-symmetric matrices.
inline QuadForm tau(const SkewRing& R, const MuSymMatrix& M) {
    require(is_mu_symmetric(R, M), errc::not_mu_symmetric, "tau requires a mu-symmetric matrix");
    const Field& F = R.field();
    int n = R.n();
    QuadForm q = QuadForm::zero(n);
    Scalar two = F.from_int(2);
    for (int i = 0; i < n; ++i) {
        q.c[PairBasis::index(n, i, i)] = M.at(n, i, i);
        for (int j = i + 1; j < n; ++j) q.c[PairBasis::index(n, i, j)] = F.mul(two, M.at(n, i, j));
    }
    return q;
}

/// Inverse of tau (char != 2): M_ii = c_ii, M_ij = c_ij / 2, M_ji = mu_ji M_ij.
inline MuSymMatrix tau_inv(const SkewRing& R, const QuadForm& q) {
    const Field& F = R.field();
    int n = R.n();
    MuSymMatrix M = MuSymMatrix::zero(n);
    Scalar half = F.inv(F.from_int(2));
    for (int i = 0; i < n; ++i) {
        M.at(n, i, i) = q.c[PairBasis::index(n, i, i)];
        for (int j = i + 1; j < n; ++j) {
            Scalar mij = F.mul(q.c[PairBasis::index(n, i, j)], half);
            M.at(n, i, j) = mij;
            M.at(n, j, i) = F.mul(R.mu().at(j, i), mij);
        }
    }
    return M;
}

/// Phi(a, b): the mu-symmetric matrix (a_i b_j + mu_ij a_j b_i). Satisfies
/// tau(Phi(a,b)) = 2 (sum a_i z_i)(sum b_i z_i).
inline MuSymMatrix phi(const SkewRing& R, const Vec& a, const Vec& b) {
    const Field& F = R.field();
    int n = R.n();
    MuSymMatrix M = MuSymMatrix::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M.at(n, i, j) = F.add(F.mul(a[i], b[j]), F.mul(R.mu().at(i, j), F.mul(a[j], b[i])));
    return M;
}

/// Product (sum a_i z_i)(sum b_i z_i) in canonical coefficients:
/// z_i^2 picks up a_i b_i, z_i z_j (i < j) picks up a_i b_j + mu_ij a_j b_i.
inline QuadForm linear_product(const SkewRing& R, const Vec& a, const Vec& b) {
    const Field& F = R.field();
    int n = R.n();
    QuadForm q = QuadForm::zero(n);
    for (int i = 0; i < n; ++i) {
        q.c[PairBasis::index(n, i, i)] = F.mul(a[i], b[i]);
        for (int j = i + 1; j < n; ++j)
            q.c[PairBasis::index(n, i, j)] =
                F.add(F.mul(a[i], b[j]), F.mul(R.mu().at(i, j), F.mul(a[j], b[i])));
    }
    return q;
}

inline bool form_is_zero(const Field& F, const QuadForm& q) {
    for (const Scalar& s : q.c)
        if (!F.is_zero(s)) return false;
    return true;
}

inline QuadForm form_add(const Field& F, const QuadForm& a, const QuadForm& b) {
    QuadForm r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(r.c[i], b.c[i]);
    return r;
}

inline QuadForm form_scale(const Field& F, const QuadForm& a, const Scalar& s) {
    QuadForm r = a;
    for (auto& c : r.c) c = F.mul(c, s);
    return r;
}

inline SkewPoly form_to_poly(const SkewRing& R, const QuadForm& q) {
    int n = R.n();
    SkewPoly f;
    for (int idx = 0; idx < PairBasis::count(n); ++idx) {
        if (R.field().is_zero(q.c[idx])) continue;
        auto [i, j] = PairBasis::unindex(n, idx);
        Monomial m(n, 0);
        m[i] += 1;
        m[j] += 1;
        f[m] = q.c[idx];
    }
    return f;
}

inline QuadForm poly_to_form(const SkewRing& R, const SkewPoly& f) {
    int n = R.n();
    QuadForm q = QuadForm::zero(n);
    for (const auto& [m, c] : f) {
        require(monomial_degree(m) == 2, errc::non_homogeneous, "expected a homogeneous degree-2 element");
        int i = -1, j = -1;
        for (int t = 0; t < n; ++t) {
            if (m[t] == 2) i = j = t;
            if (m[t] == 1) (i < 0 ? i : j) = t;
        }
        q.c[PairBasis::index(n, i, j)] = c;
    }
    return q;
}

/// Ordinary matrix rank; the commutative cross-check applies it to symmetric
/// matrices (mu identically 1).
inline int classical_rank(const Field& F, const MuSymMatrix& M, int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = M.at(n, i, j);
    return static_cast<int>(rank(F, std::move(m)));
}

} // namespace gsca
