#pragma once

#include <vector>

#include "quadsys.hpp"

namespace gsca {

/// Presentation of the graded skew Clifford algebra A(mu, M_1..M_n) on the
/// x_i alone, obtained by eliminating the degree-two generators y_k from
///   x_i x_j + mu_ij x_j x_i = sum_k (M_k)_ij y_k.
///
/// alpha: n(n-1)/2 rows over pair coordinates; row m encodes the relator
///        sum_{i<=j} alpha_ijm Y_ij = 0 with Y_ij = x_i x_j + mu_ij x_j x_i.
///        The rows form the row-reduced basis of the left null space of the
///        pair-coordinate matrix of the M_k.
/// gamma: n rows; row k expresses y_k = sum_{i<=j} gamma_ijk Y_ij, a
///        particular solution of gamma . (M_l) = delta_kl under the fixed
///        row-reduction pivot policy.
struct Presentation {
    SkewRing ring;
    Mat alpha;
    Mat gamma;

    int relator_count() const { return static_cast<int>(alpha.rows); }
};

inline Presentation build_presentation(const QuadricSystem& sys) {
    require(check_independence(sys), errc::dependent_matrices,
            "the matrices M_1..M_n are linearly dependent");
    const Field& F = sys.ring.field();
    const int n = sys.ring.n();
    Mat B = pair_coordinate_matrix(sys); // n rows, one per M_k

    Presentation pres;
    pres.ring = sys.ring;
    pres.alpha = null_space(F, B); // rows x with sum_pairs x . (M_k) = 0 for all k
    rref(F, pres.alpha);
    require(static_cast<int>(pres.alpha.rows) == n * (n - 1) / 2, errc::internal,
            "relation space has unexpected dimension");

    pres.gamma = Mat(0, PairBasis::count(n));
    for (int k = 0; k < n; ++k) {
        Vec ek(n, F.zero());
        ek[k] = F.one();
        auto g = solve(F, B, ek); // sum_pair gamma_pair (M_l)_pair = delta_kl
        require(g.has_value(), errc::internal, "no y-expression despite independence");
        pres.gamma.add_row(*g);
    }
    return pres;
}

/// The relator as an element of the free algebra T(V)_2 over the ordered
/// pair basis x_i x_j (row-major n x n): pair (i, j), i < j, contributes
/// alpha at (i,j) and alpha * mu_ij at (j,i); the diagonal contributes
/// 2 alpha at (i,i).
inline Vec relator_free(const Presentation& pres, int m) {
    const Field& F = pres.ring.field();
    const int n = pres.ring.n();
    Vec r(static_cast<size_t>(n) * n, F.zero());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Scalar al = pres.alpha.at(m, PairBasis::index(n, i, j));
            if (F.is_zero(al)) continue;
            if (i == j) {
                r[static_cast<size_t>(i) * n + i] = F.add(r[static_cast<size_t>(i) * n + i], F.mul(F.from_int(2), al));
            } else {
                r[static_cast<size_t>(i) * n + j] = F.add(r[static_cast<size_t>(i) * n + j], al);
                r[static_cast<size_t>(j) * n + i] =
                    F.add(r[static_cast<size_t>(j) * n + i], F.mul(al, pres.ring.mu().at(i, j)));
            }
        }
    return r;
}

/// dim A_d for d = 0..dmax, computed as n^d minus the rank of the span of
/// u * r * v over free words u, v and relators r. Exact row reduction over
/// the degree-d word basis.
inline std::vector<uint64_t> hilbert_dimensions(const Presentation& pres, int dmax, uint64_t budget) {
    const Field& F = pres.ring.field();
    const uint64_t n = static_cast<uint64_t>(pres.ring.n());
    std::vector<uint64_t> dims;
    std::vector<Vec> relators;
    for (int m = 0; m < pres.relator_count(); ++m) relators.push_back(relator_free(pres, m));
    for (int d = 0; d <= dmax; ++d) {
        if (d == 0) {
            dims.push_back(1);
            continue;
        }
        if (d == 1) {
            dims.push_back(n);
            continue;
        }
        uint64_t words = 1;
        for (int i = 0; i < d; ++i) words *= n;
        uint64_t row_count = relators.size() * (d - 1);
        uint64_t pairs = 1;
        for (int i = 0; i < d - 2; ++i) pairs *= n;
        row_count *= pairs;
        require(words <= budget && row_count * words <= budget * 8, errc::budget_exceeded,
                "hilbert dimension at degree " + std::to_string(d) + " exceeds budget");
        Mat rows(0, words);
        for (const Vec& r : relators) {
            for (int lu = 0; lu + 2 <= d; ++lu) {
                int lv = d - 2 - lu;
                uint64_t nu = 1, nv = 1;
                for (int i = 0; i < lu; ++i) nu *= n;
                for (int i = 0; i < lv; ++i) nv *= n;
                for (uint64_t u = 0; u < nu; ++u)
                    for (uint64_t v = 0; v < nv; ++v) {
                        Vec row(words, F.zero());
                        for (uint64_t i = 0; i < n; ++i)
                            for (uint64_t j = 0; j < n; ++j) {
                                const Scalar& cc = r[i * n + j];
                                if (F.is_zero(cc)) continue;
                                uint64_t col = ((u * n + i) * n + j) * nv + v;
                                row[col] = F.add(row[col], cc);
                            }
                        rows.add_row(row);
                    }
            }
        }
        dims.push_back(words - rank(F, std::move(rows)));
    }
    return dims;
}

/// Consistency audit of a presentation against its quadric system:
/// substituting Y_ij -> sum_k (M_k)_ij y_k into every relator must vanish,
/// gamma must reconstruct the identity on span{M_k}, the q_k must re-derive
/// from the M_k, and the degree-2 dimension bookkeeping must match
/// (dim W = n(n-1)/2 in T(V)_2, complement of dimension n(n+1)/2).
inline bool verify_presentation(const Presentation& pres, const QuadricSystem& sys) {
    const Field& F = pres.ring.field();
    const int n = pres.ring.n();
    const int npairs = PairBasis::count(n);
    if (pres.relator_count() != n * (n - 1) / 2) return false;

    Mat B = pair_coordinate_matrix(sys);
    // relator substitution: alpha . (M_k) = 0 entrywise
    for (int m = 0; m < pres.relator_count(); ++m)
        for (int k = 0; k < n; ++k) {
            Scalar acc = F.zero();
            for (int pr = 0; pr < npairs; ++pr) acc = F.add(acc, F.mul(pres.alpha.at(m, pr), B.at(k, pr)));
            if (!F.is_zero(acc)) return false;
        }
    // gamma . (M_l) = delta_kl
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Scalar acc = F.zero();
            for (int pr = 0; pr < npairs; ++pr) acc = F.add(acc, F.mul(pres.gamma.at(k, pr), B.at(l, pr)));
            if (!(acc == (k == l ? F.one() : F.zero()))) return false;
        }
    // forms re-derive from the matrices
    for (int k = 0; k < n; ++k)
        if (tau(sys.ring, sys.mats[k]).c != sys.forms[k].c) return false;
    // free-algebra dimension bookkeeping
    Mat free_rows(0, static_cast<size_t>(n) * n);
    for (int m = 0; m < pres.relator_count(); ++m) free_rows.add_row(relator_free(pres, m));
    size_t dimW = rank(F, std::move(free_rows));
    if (dimW != static_cast<size_t>(n * (n - 1) / 2)) return false;
    if (static_cast<size_t>(n) * n - dimW != static_cast<size_t>(n * (n + 1) / 2)) return false;
    return true;
}

} // namespace gsca
