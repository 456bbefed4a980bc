#pragma once

#include <optional>
#include <string>
#include <vector>

#include "factor.hpp"

namespace gsca {

/// A quadric system: mu together with n mu-symmetric matrices M_1..M_n and
/// the derived forms q_k = tau(M_k). The object a graded skew Clifford
/// algebra is built from.
struct QuadricSystem {
    SkewRing ring;
    std::vector<MuSymMatrix> mats;
    std::vector<QuadForm> forms;
};

inline QuadricSystem make_system(SkewRing ring, std::vector<MuSymMatrix> mats) {
    require(static_cast<int>(mats.size()) == ring.n(), errc::schema_error,
            "a quadric system needs exactly n matrices");
    QuadricSystem sys{std::move(ring), std::move(mats), {}};
    sys.forms.reserve(sys.mats.size());
    for (const MuSymMatrix& M : sys.mats) sys.forms.push_back(tau(sys.ring, M)); // validates mu-symmetry
    return sys;
}

inline QuadricSystem make_system_from_forms(SkewRing ring, const std::vector<QuadForm>& forms) {
    require(static_cast<int>(forms.size()) == ring.n(), errc::schema_error,
            "a quadric system needs exactly n forms");
    std::vector<MuSymMatrix> mats;
    mats.reserve(forms.size());
    for (const QuadForm& q : forms) mats.push_back(tau_inv(ring, q));
    return make_system(std::move(ring), std::move(mats));
}

/// Pair-coordinate matrix of the system: row k lists (M_k)_ij for i <= j.
inline Mat pair_coordinate_matrix(const QuadricSystem& sys) {
    int n = sys.ring.n();
    Mat B(sys.mats.size(), PairBasis::count(n));
    for (size_t k = 0; k < sys.mats.size(); ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) B.at(k, PairBasis::index(n, i, j)) = sys.mats[k].at(n, i, j);
    return B;
}

/// The M_k are linearly independent iff their pair-coordinate vectors have
/// rank n; equivalently the q_k are independent in S_2.
inline bool check_independence(const QuadricSystem& sys) {
    return rank(sys.ring.field(), pair_coordinate_matrix(sys)) == sys.mats.size();
}

/// Membership of (a, b) in V(U), the bi-projective zero locus of the
/// defining relations of S: a_j b_i = mu_ij a_i b_j for all i < j.
inline bool vu_contains(const SkewRing& R, const Vec& a, const Vec& b) {
    const Field& F = R.field();
    for (int i = 0; i < R.n(); ++i)
        for (int j = i + 1; j < R.n(); ++j)
            if (!(F.mul(a[j], b[i]) == F.mul(R.mu().at(i, j), F.mul(a[i], b[j])))) return false;
    return true;
}

/// Evaluation of the canonical lift of a form at (a, b): the monomial
/// z_i z_j, i <= j, evaluates to a_i b_j. On V(U) the value is independent
/// of the choice of lift.
inline Scalar eval_form_lift(const SkewRing& R, const QuadForm& q, const Vec& a, const Vec& b) {
    const Field& F = R.field();
    Scalar acc = F.zero();
    for (int i = 0; i < R.n(); ++i)
        for (int j = i; j < R.n(); ++j)
            acc = F.add(acc, F.mul(q.c[PairBasis::index(R.n(), i, j)], F.mul(a[i], b[j])));
    return acc;
}

struct BasePointReport {
    std::vector<int> searched_extensions;
    int found_at_degree = 0;                       // 0 when none found
    std::vector<std::pair<Vec, Vec>> base_points;  // over the extension where found
    bool free = true;
};

/// Search for base points of the system on V(U) over extensions of degree
/// 1..max_ext. For fixed a the conditions (V(U) relations and lifted forms)
/// are linear in b, so the scan solves one small system per a-point. The
/// verdict certifies freeness only up to the searched degree.
inline BasePointReport find_base_points(const QuadricSystem& sys, int max_ext, uint64_t budget) {
    BasePointReport report;
    const int n = sys.ring.n();
    constexpr size_t kMaxListed = 16;
    for (int m = 1; m <= max_ext; ++m) {
        report.searched_extensions.push_back(m);
        RingExtension ext = extend_ring(sys.ring, m);
        const Field& G = ext.ring.field();
        std::vector<QuadForm> forms;
        for (const QuadForm& q : sys.forms) forms.push_back(embed_form(ext.hom, q));
        ProjectiveSpace ps(G, n);
        require(ps.size() <= budget, errc::budget_exceeded,
                "base-point scan over " + std::to_string(ps.size()) + " points exceeds budget");
        const int vu_rows = n * (n - 1) / 2;
        Mat sysmat(vu_rows + n, n);
        for (uint64_t idx = 0; idx < ps.size(); ++idx) {
            Vec a = ps.decode(idx);
            sysmat.reset(vu_rows + n, n);
            int r = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    sysmat.at(r, i) = a[j];
                    sysmat.at(r, j) = G.neg(G.mul(ext.ring.mu().at(i, j), a[i]));
                    ++r;
                }
            for (int k = 0; k < n; ++k, ++r)
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j)
                        sysmat.at(r, j) =
                            G.add(sysmat.at(r, j), G.mul(forms[k].c[PairBasis::index(n, i, j)], a[i]));
            Mat ns = null_space(G, sysmat);
            for (size_t row = 0; row < ns.rows; ++row) {
                Vec b = ns.row(row);
                ps.canonicalize(b);
                require(vu_contains(ext.ring, a, b), errc::internal, "base point fails V(U) re-check");
                for (const QuadForm& q : forms)
                    require(G.is_zero(eval_form_lift(ext.ring, q, a, b)), errc::internal,
                            "base point fails form re-check");
                if (report.base_points.size() < kMaxListed) report.base_points.emplace_back(a, b);
                report.free = false;
            }
            if (!report.free) break; // any base point settles the verdict
        }
        if (!report.free) {
            report.found_at_degree = m;
            break;
        }
    }
    return report;
}

struct SystemVerdict {
    bool independent = false;
    bool normalizing = false;
    bool base_point_free = false;
    bool fail_fast = false; // dependent systems skip the remaining checks
    SkewRing::NormalizingReport normalizing_report;
    BasePointReport base_report;

    bool all() const { return independent && normalizing && base_point_free; }
};

/// The hypothesis bundle of the regularity theorem: independence, the
/// normalizing property, and base-point freeness (up to the configured
/// extension degree).
inline SystemVerdict validate_system(const QuadricSystem& sys, SkewRing::OrderPolicy policy, int max_ext,
                                     uint64_t budget) {
    SystemVerdict v;
    v.independent = check_independence(sys);
    if (!v.independent) {
        v.fail_fast = true;
        return v;
    }
    std::vector<SkewPoly> polys;
    for (const QuadForm& q : sys.forms) polys.push_back(form_to_poly(sys.ring, q));
    v.normalizing_report = sys.ring.check_normalizing_sequence(polys, policy);
    v.normalizing = v.normalizing_report.ok;
    v.base_report = find_base_points(sys, max_ext, budget);
    v.base_point_free = v.base_report.free;
    return v;
}

} // namespace gsca
